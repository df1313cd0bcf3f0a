#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>

#include "tightcycle/hypergraph.hpp"
#include "tightcycle/tight.hpp"

namespace tightcycle {

/// Limits for the bounded searches.  The node limit is the deterministic
/// control; the time limit is a safety valve, and a run that hits it reports
/// `timed_out` because its result then depends on machine speed.
struct SearchBudget {
  std::uint64_t node_limit = 5'000'000;
  double time_limit = 60.0;  // seconds
  std::uint64_t seed = 1;

  /// Throws InvalidArgument unless every field is positive.
  void validate() const;
};

/// Counts search nodes against a budget.
class BudgetMeter {
 public:
  explicit BudgetMeter(const SearchBudget& budget);

  /// Charges one node; returns false once the budget is spent.
  bool charge() {
    if (exhausted_) return false;
    if (++nodes_ > limit_) {
      exhausted_ = true;
      return false;
    }
    if ((nodes_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline_) {
      exhausted_ = true;
      timed_out_ = true;
      return false;
    }
    return true;
  }
  bool exhausted() const { return exhausted_; }
  bool timed_out() const { return timed_out_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t limit_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  bool timed_out_ = false;
};

struct LongestCycleResult {
  MonoCycle best;
  bool exact = false;  // the whole search space was explored
  bool timed_out = false;
  std::uint64_t nodes = 0;
};

/// Longest monochromatic tight cycle avoiding `forbidden`.  Searches exactly
/// when at most `exact_bound` vertices are available and the budget suffices;
/// otherwise returns the best cycle found.  Ties go to the lexicographically
/// smallest canonical sequence.  Falls back to the smallest available vertex
/// as a degenerate cycle; with no vertex available, `best` is empty.
LongestCycleResult longest_mono_tight_cycle(const ColouredHypergraph& g, std::span<const Vertex> forbidden,
                                            const SearchBudget& budget, int exact_bound = 14);

struct SpanningCycleResult {
  std::optional<MonoCycle> cycle;
  bool complete = true;  // false if the node limit cut the search short
};

/// A monochromatic tight cycle through exactly the given vertices, in
/// `colour` if given.  One vertex gives the degenerate cycle; under the graph
/// convention two adjacent vertices give a single-edge cycle.  The returned
/// sequence is the lexicographically first canonical one found.
SpanningCycleResult find_spanning_mono_cycle(const ColouredHypergraph& g, std::span<const Vertex> vertices,
                                             std::optional<Colour> colour, std::uint64_t node_limit,
                                             ConventionFlags flags = {});

struct EmbeddedCrown {
  Crown crown;  // base and rim hold host vertices
  Colour colour = 0;
};

struct CrownSearchResult {
  std::optional<EmbeddedCrown> found;
  bool exhausted = false;
  std::uint64_t nodes = 0;
};

/// Injective monochromatic embedding of build_crown(k, t) avoiding
/// `forbidden`.  Throws InvalidArgument if t(k-1) < k+1.
CrownSearchResult find_mono_crown(const ColouredHypergraph& g, int t, std::span<const Vertex> forbidden,
                                  const SearchBudget& budget);

/// Re-checks every edge of an embedded crown against the host.
bool crown_embedding_valid(const ColouredHypergraph& g, const EmbeddedCrown& embedded);

struct ConnectOptions {
  /// Requested length in edges; defaults to prescribed_length(e, f).
  std::optional<int> length;
  /// (K-1)-sets with fewer than this many edges through them are not used as
  /// endpoints.
  int codegree_floor = 1;
};

struct ConnectResult {
  std::optional<TightPath> path;
  bool exhausted = false;
};

/// Positively oriented tight path in the K-partite K-graph `h` (a partite
/// LinkGraph with K parts) that starts at e, ends at f and whose internal
/// vertices avoid `avoid`.  e and f are (K-1)-sets given in any order; their
/// order on the path is forced by their types.  Throws InvalidArgument if e
/// or f meets `avoid`, if h is not partite, or if the requested length does
/// not match tp(e, f) mod K.
ConnectResult connect(const LinkGraph& h, std::span<const Vertex> e, std::span<const Vertex> f,
                      std::span<const Vertex> avoid, const SearchBudget& budget, ConnectOptions options = {});

}  // namespace tightcycle
