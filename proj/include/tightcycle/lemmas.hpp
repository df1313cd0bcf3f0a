#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tightcycle/errors.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/rational.hpp"

namespace tightcycle {

// --- grouping sets into blocks of four --------------------------------------

/// Subsets of {0..ground_size-1}.  owners[i] tags members[i]; an empty owner
/// list means owner i for member i.
struct SubsetFamily {
  int ground_size = 0;
  std::vector<std::vector<int>> members;
  std::vector<int> owners;

  int owner(std::size_t i) const { return owners.empty() ? static_cast<int>(i) : owners[i]; }
};

struct BlockGrouping {
  struct Block {
    std::array<int, 4> owners{};
    std::vector<int> intersection;
  };
  std::vector<Block> blocks;
  std::vector<int> leftover;  // owners
};

/// Pairs members whose intersection has at least (eps/2)^2 m elements, then
/// pairs the pair-intersections the same way at ((eps/2)^2 / 2)^2 m, so
/// every block meets in at least eps^4/2^6 m elements.  Matchings are greedy
/// and maximal in member order.  Throws InvalidArgument naming the first
/// member smaller than eps m or not inside the ground set.
BlockGrouping group_blocks(const SubsetFamily& family, const Rational& eps);

/// eps^4 / 2^6
Rational block_intersection_floor(const Rational& eps);

/// 8/eps^2 + 2/eps
Rational block_leftover_bound(const Rational& eps);

// --- Posa cycle and path covers ---------------------------------------------

/// Vertex-disjoint cycles of the graph `g` (uniformity 2) partitioning its
/// vertices; one vertex or one edge also counts.  At most alpha(g) parts.
/// Each part starts at the vertex that had all its neighbours inside it.
std::vector<std::vector<Vertex>> posa_cycle_cover(const Hypergraph& g);

/// The same cover with every cycle opened into a path.
std::vector<std::vector<Vertex>> posa_path_cover(const Hypergraph& g);

// --- independent transversal ------------------------------------------------

/// Raised in checked mode when some v in block i has a link of more than
/// m^{-(k-1)^2} times the product of the block sizes into the blocks
/// i_1 < ... < i_{k-1} < i.  Block indices are 1-based.
class TransversalHypothesisViolation : public HypothesisViolation {
 public:
  TransversalHypothesisViolation(int block, std::vector<int> lower, Vertex v, const std::string& what)
      : HypothesisViolation(what), block_(block), lower_(std::move(lower)), v_(v) {}
  int block() const { return block_; }
  const std::vector<int>& lower_blocks() const { return lower_; }
  Vertex vertex() const { return v_; }

 private:
  int block_;
  std::vector<int> lower_;
  Vertex v_;
};

struct TransversalResult {
  std::optional<std::vector<Vertex>> transversal;  // v_1..v_m
  /// Blocks (1-based) where no vertex avoided every bad set and the greedy
  /// fell back to avoiding only current edges.  Always empty under the
  /// hypothesis.
  std::vector<int> relaxed_blocks;
  /// Block where even the relaxed choice failed.
  std::optional<int> stuck_block;
};

struct TransversalOptions {
  bool checked = true;
};

/// Greedy transversal, choosing v_m first and then descending, each time the
/// smallest vertex outside all bad sets of the argument.  In checked mode the
/// hypothesis is verified first (TransversalHypothesisViolation) and a stuck
/// greedy is an InternalError; unchecked mode reports failure as a value.
/// Throws InvalidArgument on empty or overlapping blocks.
TransversalResult independent_transversal(const Hypergraph& h, const std::vector<VertexSet>& blocks,
                                          TransversalOptions options = {});

}  // namespace tightcycle
