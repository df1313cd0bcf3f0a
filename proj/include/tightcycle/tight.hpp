#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tightcycle/hypergraph.hpp"

namespace tightcycle {

/// Linear vertex sequence whose k-windows are edges.  Length counts edges,
/// so m vertices give m - k + 1.
struct TightPath {
  int k = 0;
  std::vector<Vertex> seq;

  int length() const { return static_cast<int>(seq.size()) - k + 1; }
  friend bool operator==(const TightPath&, const TightPath&) = default;
};

/// Cyclic vertex sequence.  A single vertex is the degenerate cycle.
struct TightCycle {
  int k = 0;
  std::vector<Vertex> seq;

  bool degenerate() const { return seq.size() == 1; }
  friend bool operator==(const TightCycle&, const TightCycle&) = default;
};

struct MonoCycle {
  TightCycle cycle;
  Colour colour = 0;
  friend bool operator==(const MonoCycle&, const MonoCycle&) = default;
};

struct ConventionFlags {
  /// Graph convention (k = 2 only): a single edge also counts as a cycle.
  bool edges_as_cycles = false;
  /// Oracle-only: the cycles of a partition must carry pairwise distinct colours.
  bool distinct_colours = false;
};

/// Rotates so the smallest vertex comes first and reflects so that the second
/// vertex is smaller than the last.
std::vector<Vertex> canonical_rotation(std::span<const Vertex> seq);

struct CycleVerdict {
  bool valid = false;
  Colour colour = 0;  // 0 for a degenerate cycle: any colour is allowed
  std::optional<std::size_t> failed_window;  // start index of the first bad window
  std::string reason;
};

/// Checks that every cyclic k-window is a host edge and that all windows
/// share one colour.  Throws MalformedCycle for an empty sequence, a repeated
/// or out-of-range vertex, or a length in [2, k] (except a single edge under
/// the graph convention).
CycleVerdict validate_cycle(const ColouredHypergraph& g, const TightCycle& c, ConventionFlags flags = {});

/// As validate_cycle, but every window must have exactly `colour`.
CycleVerdict validate_cycle_in(const ColouredHypergraph& g, const TightCycle& c, Colour colour,
                               ConventionFlags flags = {});

/// Checks the windows of a linear path (no wrap-around).  Returns the index of
/// the first window that is not an edge of `colour` (0 = any edge).
std::optional<std::size_t> first_bad_path_window(const ColouredHypergraph& g, const TightPath& p, Colour colour);

// --- type arithmetic on (k-1)-sets of a k-block partition -------------------

/// The 1-based index of the unique block missed by e.  Throws InvalidArgument
/// unless e has exactly k-1 vertices in pairwise distinct blocks.
int tp(std::span<const Vertex> e, const VertexPartition& p);

/// (tp(f) - tp(e)) mod k, in [0, k-1].
int tp_pair(std::span<const Vertex> e, std::span<const Vertex> f, const VertexPartition& p);

/// Connecting length for a given tp_pair: k + tp when tp >= 2, else 2k + tp.
int prescribed_length(int k, int type_pair);
int prescribed_length(std::span<const Vertex> e, std::span<const Vertex> f, const VertexPartition& p);

// --- crowns -----------------------------------------------------------------

/// k-uniform crown of order t: a base tight cycle v_0..v_{t(k-1)-1} plus rim
/// vertices u_0..u_{t-1}, each u_i joined to the k base windows of length k-1
/// starting at v_{(k-1)i}, ..., v_{(k-1)i+k-1}.
struct Crown {
  int k = 0;
  int t = 0;
  std::vector<Vertex> base;
  std::vector<Vertex> rim;

  std::vector<Edge> base_edges() const;
  std::vector<Edge> rim_edges() const;
  /// The k edges through rim vertex i.
  std::vector<Edge> rim_edges_of(int i) const;
  std::vector<Edge> edges() const;
  std::vector<Vertex> vertices() const;
};

/// Canonical crown on vertices 0..tk-1 (base first, then rim).  Throws
/// InvalidArgument unless k >= 2, t >= 2 and t(k-1) >= k+1.
Crown build_crown(int k, int t);

/// The crown as a one-coloured hypergraph on its own tk vertices.
ColouredHypergraph crown_hypergraph(const Crown& crown);

/// The base cycle with the chosen rim vertices spliced in: rim u_i goes
/// between v_{(k-1)i+k-2} and v_{(k-1)i+k-1}.  `chosen` holds rim indices.
TightCycle crown_absorbing_cycle(const Crown& crown, std::span<const int> chosen);

struct AbsorbOptions {
  int max_rim = 12;  // 2^|B| spanning searches
  std::uint64_t node_limit_per_subset = 2'000'000;
};

struct AbsorberReport {
  bool absorbs = false;
  /// False when some subset search hit its node limit without an answer.
  bool complete = true;
  /// Keyed by the bitmask of B' over the order of B as given.
  std::map<std::uint64_t, MonoCycle> witnesses;
  std::optional<std::uint64_t> failing_subset;
};

/// Whether for every B' subset of B some monochromatic tight cycle spans
/// exactly A + B'.  Throws InvalidArgument if A and B meet, SizeLimit if
/// |B| > max_rim.
AbsorberReport absorbs(const ColouredHypergraph& g, std::span<const Vertex> a, std::span<const Vertex> b,
                       AbsorbOptions options = {});

// --- lifting a (k-1)-uniform auxiliary cycle --------------------------------

enum class LiftCondition {
  kStructure,  // malformed input, reported at the offending (s, i)
  kLink,       // e_{s,i} + v_s is not an edge of the colour
  kWrap,       // e_{s,1} + v_{s-1} is not an edge of the colour
};

class LiftPreconditionViolation : public std::invalid_argument {
 public:
  LiftPreconditionViolation(int s, int i, LiftCondition condition, const std::string& what)
      : std::invalid_argument(what), s_(s), i_(i), condition_(condition) {}
  int s() const { return s_; }
  int i() const { return i_; }
  LiftCondition condition() const { return condition_; }

 private:
  int s_;
  int i_;
  LiftCondition condition_;
};

/// Interleaves the rim into the auxiliary cycle: the output sequence is
/// (u_{1,1}..u_{1,k-1}, v_1, ..., u_{t,1}..u_{t,k-1}, v_t).
///
/// `aux` has t(k-1) vertices; e_{s,i} is its (k-1)-window starting at
/// u_{s,i}.  Requires e_{s,i} + v_s and e_{s,1} + v_{s-1} (v_0 = v_t) to be
/// edges of one colour for all s, i; that colour is `colour` if given, else
/// the most frequent colour among those k-sets.  When `parts` (k-1 sets) is
/// non-empty every aux window must be partite and the rim must avoid the
/// parts.  All conditions are checked in (s, i) order; the first violation is
/// thrown as LiftPreconditionViolation with 1-based s and i.
TightCycle lift_cycle(const ColouredHypergraph& g, std::span<const Vertex> aux, std::span<const Vertex> rim,
                      const std::vector<VertexSet>& parts = {}, std::optional<Colour> colour = std::nullopt);

}  // namespace tightcycle
