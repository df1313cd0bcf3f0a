#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tightcycle/rational.hpp"

namespace tightcycle {

using Vertex = int;
using Colour = int;  // 1..r; 0 means "no edge" / "any colour"
using Edge = std::vector<Vertex>;  // sorted, distinct
using VertexSet = std::vector<Vertex>;  // sorted, distinct

inline constexpr int kMaxUniformity = 16;

/// Sorted copy of an arbitrary vertex list.
Edge canonical_edge(std::span<const Vertex> vertices);

/// Binomial coefficient; saturates at UINT64_MAX on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// A k-uniform hypergraph on the dense vertex set {0..n-1}.
///
/// Edges are stored sorted and deduplicated, and are indexed by their
/// colexicographic rank so that membership tests cost O(k).  Uniformity 1 is
/// accepted because link graphs of (k-1)-sets are 1-graphs.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Throws InvalidArgument on a wrong-size edge, a repeated vertex inside an
  /// edge, a vertex outside [0, n), or a duplicate edge.
  Hypergraph(int k, int n, std::vector<Edge> edges);

  int uniformity() const { return k_; }
  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_[id]; }

  /// Edge id of the k-set spanned by `vertices` (any order), if present.
  std::optional<std::size_t> find(std::span<const Vertex> vertices) const;
  bool contains(std::span<const Vertex> vertices) const { return find(vertices).has_value(); }

  /// Ids of the edges containing v, ascending.
  const std::vector<std::size_t>& incident(Vertex v) const { return incidence_[v]; }

 private:
  std::optional<std::uint64_t> rank(std::span<const Vertex> vertices) const;

  int k_ = 2;
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<std::vector<std::uint64_t>> binom_;  // binom_[v][i] = C(v, i)
  std::vector<std::int32_t> dense_index_;          // used when C(n,k) is small
  std::unordered_map<std::uint64_t, std::int32_t> sparse_index_;
  bool dense_ = true;
};

/// A hypergraph together with a colour in [1..r] on every edge.
class ColouredHypergraph {
 public:
  ColouredHypergraph() = default;

  /// `colours` is parallel to `edges` as passed (before sorting).
  ColouredHypergraph(int k, int n, int r, std::vector<Edge> edges, std::vector<Colour> colours);

  /// Every k-subset of {0..n-1} is an edge; `colour_of_rank` lists colours
  /// in lexicographic order of the sorted k-subsets.
  static ColouredHypergraph complete(int k, int n, int r, std::span<const Colour> colours_lex);

  /// Complete k-graph in a single colour.
  static ColouredHypergraph monochromatic_complete(int k, int n);

  const Hypergraph& host() const { return host_; }
  int uniformity() const { return host_.uniformity(); }
  int order() const { return host_.order(); }
  int colours() const { return r_; }
  Colour colour(std::size_t edge_id) const { return colour_[edge_id]; }
  const std::vector<Colour>& edge_colours() const { return colour_; }

  /// Colour of the edge spanned by `vertices`, or 0 if it is not an edge.
  Colour colour_of(std::span<const Vertex> vertices) const {
    auto id = host_.find(vertices);
    return id ? colour_[*id] : 0;
  }

  /// Sub-hypergraph of the edges of one colour (recoloured 1, r = 1).
  ColouredHypergraph colour_class(Colour c) const;

 private:
  Hypergraph host_;
  int r_ = 1;
  std::vector<Colour> colour_;
};

/// Ordered list of disjoint, non-empty vertex blocks.
class VertexPartition {
 public:
  VertexPartition() = default;
  /// Blocks are sorted internally; throws InvalidArgument on overlap, an empty
  /// block or a negative vertex.
  explicit VertexPartition(std::vector<VertexSet> blocks);

  std::size_t size() const { return blocks_.size(); }
  const VertexSet& block(std::size_t i) const { return blocks_[i]; }
  const std::vector<VertexSet>& blocks() const { return blocks_; }
  /// 0-based block index of v, or -1.
  int block_of(Vertex v) const;
  /// One past the largest vertex appearing in any block.
  int span() const;

 private:
  std::vector<VertexSet> blocks_;
  std::unordered_map<Vertex, int> owner_;
};

/// Link graph Lk(pins) or Lk(pins; V_1..V_{k-l}), optionally restricted to
/// one colour.  In the partite form every edge meets each part exactly once.
struct LinkGraph {
  int uniformity = 0;  // k - |pins|
  std::vector<VertexSet> parts;  // empty unless the partite form was requested
  std::vector<Edge> edges;       // sorted, lexicographic

  std::size_t size() const { return edges.size(); }
  bool contains(std::span<const Vertex> e) const;
};

/// Throws InvalidArgument if |pins| >= k, pins repeat, parts overlap pins or
/// each other, the number of parts is not k - |pins|, or the colour filter is
/// outside [1..r].
LinkGraph link_graph(const ColouredHypergraph& g, std::span<const Vertex> pins,
                     const std::vector<VertexSet>* parts = nullptr,
                     std::optional<Colour> colour_filter = std::nullopt);

/// Number of edges of the partite link without materialising it.
std::int64_t link_size(const ColouredHypergraph& g, std::span<const Vertex> pins,
                       const std::vector<VertexSet>& parts,
                       std::optional<Colour> colour_filter = std::nullopt);

struct IndependenceOptions {
  int max_vertices = 24;
};

/// Largest vertex set containing no edge, by branch and bound with a greedy
/// clique-cover bound.  Throws SizeLimit above `max_vertices`.
int independence_number(const Hypergraph& h, IndependenceOptions options = {});

/// |E| / C(n, k), exact.  Throws InvalidArgument if n < k.
Rational density(const Hypergraph& h);

/// All k-sets with at most one vertex in each block.  The vertex universe is
/// {0..n-1} with n = max(n_hint, partition span).
Hypergraph partite_clique_set(const VertexPartition& p, int k, int n_hint = 0);

/// K^{(k)}(H): the k-sets all of whose j-subsets are edges of the j-graph H.
/// Throws InvalidArgument if k < j.  k > n gives an empty result.
Hypergraph clique_hypergraph(const Hypergraph& h, int k);

/// Coloured variant: k-sets all of whose j-subsets are edges of one colour,
/// coloured by that colour.
ColouredHypergraph clique_hypergraph(const ColouredHypergraph& g, int k);

}  // namespace tightcycle
