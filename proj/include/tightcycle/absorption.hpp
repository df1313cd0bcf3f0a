#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tightcycle/errors.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/rational.hpp"
#include "tightcycle/search.hpp"
#include "tightcycle/tight.hpp"

namespace tightcycle {

/// Constants of the covering lemma.  Must satisfy
/// 0 < gamma < delta3 < delta2 < delta1 < eps.
struct AbsorptionConfig {
  Rational eps{1, 4};     // link density floor of every covered vertex
  Rational delta1{1, 8};  // block intersection floor
  Rational delta2{1, 16}; // path count is at most 2 / delta2
  Rational delta3{1, 32}; // adjacency of blocks
  Rational gamma{1, 64};  // |B_k| <= gamma |B_i|
  SearchBudget connect_budget{200'000, 10.0, 1};
  int split_trials = 64;
  std::uint64_t seed = 1;

  /// Throws InvalidArgument when the chain of inequalities fails.
  void validate() const;

  /// eps' = eps/(2r), delta1 = eps'^4/2^6, then halving down to gamma.
  static AbsorptionConfig for_density(const Rational& eps, int r);
};

/// One colour's share of a split instance.
struct ColourClass {
  Colour colour = 0;
  std::vector<VertexSet> parts;  // B_{1,i}..B_{k-1,i}
  VertexSet covered;             // B_{k,i}
};

struct ColourSplitResult {
  std::optional<std::vector<ColourClass>> classes;
  int trials = 0;
  std::string failure;
};

/// Assigns each v in bk its most frequent link colour (ties to the lowest)
/// and, with more than one class in use, cuts every part into that many
/// near-equal pieces by seeded shuffles until each v keeps link density
/// eps/(2r) into its class's pieces.  Throws HypothesisViolation naming a
/// vertex whose link is below eps; running out of trials is a soft failure.
ColourSplitResult colour_split(const ColouredHypergraph& g, const std::vector<VertexSet>& parts, const VertexSet& bk,
                               const Rational& eps, std::uint64_t seed, int max_trials);

/// Plan for one path of blocks (H_1..H_t).
struct BlockPathPlan {
  Colour colour = 0;
  std::vector<int> blocks;                       // indices into the block list
  std::vector<std::vector<Vertex>> e;            // e_0..e_t, ordered by part
  std::vector<std::vector<Vertex>> e_prime;      // e'_1..e'_{t-1}
  std::vector<TightPath> forward;                // P_1..P_t
  std::vector<TightPath> backward;               // Q_t..Q_1 in cycle order
  std::vector<Vertex> aux;                       // the (k-1)-uniform cycle
  std::vector<Vertex> rim;                       // v_1..v_{4t}
  TightCycle lifted;
};

struct AbsorbFailure {
  std::string stage;  // colour-split, size-ratio, blocks, block-paths, edges, connect
  std::string detail;
};

struct AbsorbResult {
  std::vector<MonoCycle> cycles;
  VertexSet degenerate;  // covered vertices left as single-vertex cycles
  std::vector<BlockPathPlan> plans;
  std::optional<AbsorbFailure> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Covers bk by monochromatic tight cycles through the parts.  On success
/// every vertex of bk lies in exactly one emitted cycle or in `degenerate`;
/// on any soft failure no cycles are returned.  Throws InvalidArgument on
/// overlapping or miscounted parts and HypothesisViolation as colour_split.
AbsorbResult absorb_cover(const ColouredHypergraph& g, const std::vector<VertexSet>& parts, const VertexSet& bk,
                          const AbsorptionConfig& config);

}  // namespace tightcycle
