#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tightcycle/absorption.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/rational.hpp"
#include "tightcycle/search.hpp"
#include "tightcycle/tight.hpp"

namespace tightcycle {

enum class Provenance { kGreedy, kAbsorber, kFallback, kDegenerate };

std::string to_string(Provenance p);
/// Throws InvalidArgument on an unknown name.
Provenance parse_provenance(const std::string& name);

struct CertifiedCycle {
  MonoCycle cycle;
  Provenance provenance = Provenance::kFallback;
  friend bool operator==(const CertifiedCycle&, const CertifiedCycle&) = default;
};

/// Vertex-disjoint monochromatic tight cycles covering the host.
struct PartitionCertificate {
  std::string instance_digest;
  ConventionFlags flags;
  std::vector<CertifiedCycle> cycles;

  std::size_t size() const { return cycles.size(); }
};

// --- greedy cover -----------------------------------------------------------

struct GreedyResult {
  std::vector<MonoCycle> cycles;
  VertexSet uncovered;
  bool budget_spent = false;
};

/// Extracts longest monochromatic tight cycles until at most `max_uncovered`
/// vertices outside `forbidden` remain, no cycle other than a single vertex
/// is left, or `max_cycles` extractions have been made.
GreedyResult greedy_cover_to(const ColouredHypergraph& g, std::span<const Vertex> forbidden, std::size_t max_uncovered,
                             const SearchBudget& budget, int max_cycles = 64);

/// As greedy_cover_to with max_uncovered = floor(gamma * available).
GreedyResult greedy_cover(const ColouredHypergraph& g, std::span<const Vertex> forbidden, const Rational& gamma,
                          const SearchBudget& budget);

// --- fallback ---------------------------------------------------------------

struct FallbackResult {
  std::vector<MonoCycle> cycles;
  /// Set when the subset exceeded the bound and was returned as singletons.
  bool over_bound = false;
  /// Set when some spanning search hit its node limit, so the count may not
  /// be minimum.
  bool incomplete = false;
};

/// Minimum number of monochromatic tight cycles partitioning `subset`, by
/// dynamic programming over its subsets.
FallbackResult brute_force_partition(const ColouredHypergraph& g, std::span<const Vertex> subset, int bound = 14,
                                     ConventionFlags flags = {}, std::uint64_t node_limit = 200'000);

// --- the driver -------------------------------------------------------------

struct DriverConfig {
  Rational eps{1, 16};
  Rational beta{1, 8};
  Rational gamma{1, 24};
  std::optional<AbsorptionConfig> absorption;  // default: for_density(eps, r)
  SearchBudget budget{1'000'000, 30.0, 1};
  int fallback_bound = 14;
  int exact_alpha_bound = 24;
  /// Return a spanning monochromatic cycle directly when the first search
  /// finds one.
  bool spanning_shortcut = true;
  ConventionFlags flags;

  /// Throws InvalidArgument on a non-positive constant or bound.
  void validate() const;

  /// eps = 1/(4rk), beta = 1/8, gamma = 1/(8k).
  static DriverConfig defaults(int k, int r);
};

struct DriverStep {
  int j = 0;
  std::vector<std::size_t> block_sizes;  // B_1..B_{j} after the step
  std::size_t crown_vertices = 0;
  std::size_t greedy_cycles = 0;
  std::size_t uncovered = 0;  // |R_{j+1}|
  std::size_t low_link = 0;   // |R'_{j+1}|
  std::size_t high_link = 0;  // |R''_{j+1}|
  std::string absorb_status;  // "ok", "empty" or the failed stage
};

struct DriverTrace {
  std::optional<int> exact_alpha;
  std::vector<DriverStep> steps;
  std::vector<std::string> notes;
  std::size_t fallback_vertices = 0;
  bool fallback_over_bound = false;
};

/// Partitions all vertices of g into monochromatic tight cycles.  `alpha`
/// must be at least the independence number of the host; it is checked
/// exactly when n <= exact_alpha_bound (PreconditionViolation) and trusted
/// otherwise.  A trusted alpha that turns out too small is reported as
/// HypothesisViolation with an independent set of size alpha + 1.
PartitionCertificate partition(const ColouredHypergraph& g, int alpha, const DriverConfig& config,
                               DriverTrace* trace = nullptr);

// --- power reduction --------------------------------------------------------

/// The (k+p-1)-graph of monochromatic (k+p-1)-cliques of g.  p = 1 gives g.
/// Throws InvalidArgument if p < 1 or n < k + p - 1.
ColouredHypergraph power_reduce(const ColouredHypergraph& g, int p);

/// p-th power of a tight cycle: every k-subset of every (k+p-1)-window of
/// `seq` is an edge of `colour`.
struct PowerCertificate {
  int k = 0;
  int p = 1;
  MonoCycle cycle;  // in the reduced instance
};

/// Checks the cycle window by window in g and wraps it.  Throws
/// PreconditionViolation naming the first missing k-set.
PowerCertificate power_lift_back(const ColouredHypergraph& g, int p, const MonoCycle& reduced_cycle);

// --- verification -----------------------------------------------------------

struct CertificateVerdict {
  bool accepted = false;
  std::string reason;
  std::optional<Vertex> vertex;
  std::optional<std::size_t> cycle;
  std::optional<std::size_t> window;
};

/// Exact cover plus per-cycle validity in the tagged colour, checked from
/// scratch.  A non-empty digest must match `expected_digest` when that is
/// given.
CertificateVerdict verify_certificate(const ColouredHypergraph& g, const PartitionCertificate& cert,
                                      const std::string& expected_digest = {});

}  // namespace tightcycle
