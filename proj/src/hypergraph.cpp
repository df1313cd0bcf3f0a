#include "tightcycle/hypergraph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "combinatorics.hpp"
#include "tightcycle/errors.hpp"

namespace tightcycle {

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

std::string describe(std::span<const Vertex> vs) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? "," : "") << vs[i];
  out << '}';
  return out.str();
}

}  // namespace

Edge canonical_edge(std::span<const Vertex> vertices) {
  Edge e(vertices.begin(), vertices.end());
  std::sort(e.begin(), e.end());
  return e;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

// --- Hypergraph -------------------------------------------------------------

Hypergraph::Hypergraph(int k, int n, std::vector<Edge> edges) : k_(k), n_(n) {
  if (k < 1 || k > kMaxUniformity) {
    throw InvalidArgument("uniformity must lie in [1, " + std::to_string(kMaxUniformity) + "]");
  }
  if (n < 0) throw InvalidArgument("vertex count must be non-negative");

  const std::uint64_t total = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  if (total == std::numeric_limits<std::uint64_t>::max()) {
    throw SizeLimit("C(n, k) does not fit in 64 bits");
  }
  binom_.assign(static_cast<std::size_t>(n) + 1, std::vector<std::uint64_t>(k + 1, 0));
  for (int v = 0; v <= n; ++v) {
    for (int i = 0; i <= k; ++i) binom_[v][i] = binomial(v, i);
  }

  for (auto& e : edges) {
    if (static_cast<int>(e.size()) != k) {
      throw InvalidArgument("edge " + describe(e) + " does not have " + std::to_string(k) + " vertices");
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InvalidArgument("edge " + describe(e) + " repeats a vertex");
    }
    if (e.front() < 0 || e.back() >= n) {
      throw InvalidArgument("edge " + describe(e) + " has a vertex outside [0, " + std::to_string(n) + ")");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw InvalidArgument("duplicate edge " + describe(*dup));
  }
  edges_ = std::move(edges);

  dense_ = total <= kDenseLimit;
  if (dense_) {
    dense_index_.assign(total, -1);
  } else {
    sparse_index_.reserve(edges_.size());
  }
  incidence_.assign(n, {});
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto r = *rank(edges_[id]);
    if (dense_) {
      dense_index_[r] = static_cast<std::int32_t>(id);
    } else {
      sparse_index_.emplace(r, static_cast<std::int32_t>(id));
    }
    for (Vertex v : edges_[id]) incidence_[v].push_back(id);
  }
}

std::optional<std::uint64_t> Hypergraph::rank(std::span<const Vertex> vertices) const {
  if (static_cast<int>(vertices.size()) != k_) return std::nullopt;
  std::array<Vertex, kMaxUniformity> sorted{};
  std::copy(vertices.begin(), vertices.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.begin() + k_);
  std::uint64_t r = 0;
  for (int i = 0; i < k_; ++i) {
    const Vertex v = sorted[i];
    if (v < 0 || v >= n_ || (i > 0 && sorted[i - 1] == v)) return std::nullopt;
    r += binom_[v][i + 1];
  }
  return r;
}

std::optional<std::size_t> Hypergraph::find(std::span<const Vertex> vertices) const {
  const auto r = rank(vertices);
  if (!r) return std::nullopt;
  if (dense_) {
    const auto id = dense_index_[*r];
    if (id < 0) return std::nullopt;
    return static_cast<std::size_t>(id);
  }
  auto it = sparse_index_.find(*r);
  if (it == sparse_index_.end()) return std::nullopt;
  return static_cast<std::size_t>(it->second);
}

// --- ColouredHypergraph -----------------------------------------------------

ColouredHypergraph::ColouredHypergraph(int k, int n, int r, std::vector<Edge> edges,
                                       std::vector<Colour> colours)
    : r_(r) {
  if (r < 1) throw InvalidArgument("colour count must be at least 1");
  if (edges.size() != colours.size()) {
    throw InvalidArgument("edge and colour lists differ in length");
  }
  std::vector<std::pair<Edge, Colour>> paired;
  paired.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (colours[i] < 1 || colours[i] > r) {
      throw InvalidArgument("colour " + std::to_string(colours[i]) + " of edge " + describe(edges[i]) +
                            " outside [1, " + std::to_string(r) + "]");
    }
    paired.emplace_back(canonical_edge(edges[i]), colours[i]);
  }
  std::vector<Edge> plain;
  plain.reserve(paired.size());
  for (const auto& [e, c] : paired) plain.push_back(e);
  host_ = Hypergraph(k, n, std::move(plain));
  colour_.assign(host_.size(), 0);
  for (const auto& [e, c] : paired) colour_[*host_.find(e)] = c;
}

ColouredHypergraph ColouredHypergraph::complete(int k, int n, int r, std::span<const Colour> colours_lex) {
  std::vector<Edge> edges;
  for_each_combination(n, k, [&](std::span<const int> c) { edges.emplace_back(c.begin(), c.end()); });
  if (edges.size() != colours_lex.size()) {
    throw InvalidArgument("complete colouring needs " + std::to_string(edges.size()) + " colours, got " +
                          std::to_string(colours_lex.size()));
  }
  return ColouredHypergraph(k, n, r, std::move(edges), std::vector<Colour>(colours_lex.begin(), colours_lex.end()));
}

ColouredHypergraph ColouredHypergraph::monochromatic_complete(int k, int n) {
  std::vector<Colour> ones(binomial(n, k), 1);
  return complete(k, n, 1, ones);
}

ColouredHypergraph ColouredHypergraph::colour_class(Colour c) const {
  std::vector<Edge> edges;
  for (std::size_t id = 0; id < host_.size(); ++id) {
    if (colour_[id] == c) edges.push_back(host_.edge(id));
  }
  std::vector<Colour> ones(edges.size(), 1);
  return ColouredHypergraph(uniformity(), order(), 1, std::move(edges), std::move(ones));
}

// --- VertexPartition --------------------------------------------------------

VertexPartition::VertexPartition(std::vector<VertexSet> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    auto& b = blocks_[i];
    if (b.empty()) throw InvalidArgument("partition block " + std::to_string(i) + " is empty");
    std::sort(b.begin(), b.end());
    for (Vertex v : b) {
      if (v < 0) throw InvalidArgument("negative vertex in partition");
      if (!owner_.emplace(v, static_cast<int>(i)).second) {
        throw InvalidArgument("vertex " + std::to_string(v) + " appears in two partition blocks");
      }
    }
  }
}

int VertexPartition::block_of(Vertex v) const {
  auto it = owner_.find(v);
  return it == owner_.end() ? -1 : it->second;
}

int VertexPartition::span() const {
  int top = 0;
  for (const auto& b : blocks_) top = std::max(top, b.back() + 1);
  return top;
}

// --- link graphs ------------------------------------------------------------

bool LinkGraph::contains(std::span<const Vertex> e) const {
  const Edge key = canonical_edge(e);
  return std::binary_search(edges.begin(), edges.end(), key);
}

namespace {

struct LinkScan {
  std::vector<int> part_of;  // per vertex, -1 if in no part
  int parts = 0;
};

LinkScan prepare_link(const ColouredHypergraph& g, std::span<const Vertex> pins,
                      const std::vector<VertexSet>* parts, std::optional<Colour> colour_filter) {
  const int k = g.uniformity();
  if (static_cast<int>(pins.size()) >= k) {
    throw InvalidArgument("link graph needs fewer than k = " + std::to_string(k) + " pins, got " +
                          std::to_string(pins.size()));
  }
  if (colour_filter && (*colour_filter < 1 || *colour_filter > g.colours())) {
    throw InvalidArgument("unknown colour " + std::to_string(*colour_filter));
  }
  std::vector<char> pinned(g.order(), 0);
  for (Vertex v : pins) {
    if (v < 0 || v >= g.order()) throw InvalidArgument("pin " + std::to_string(v) + " out of range");
    if (pinned[v]) throw InvalidArgument("pin " + std::to_string(v) + " repeated");
    pinned[v] = 1;
  }
  LinkScan scan;
  if (parts) {
    const int want = k - static_cast<int>(pins.size());
    if (static_cast<int>(parts->size()) != want) {
      throw InvalidArgument("partite link needs " + std::to_string(want) + " parts, got " +
                            std::to_string(parts->size()));
    }
    scan.parts = want;
    scan.part_of.assign(g.order(), -1);
    for (int i = 0; i < want; ++i) {
      for (Vertex v : (*parts)[i]) {
        if (v < 0 || v >= g.order()) throw InvalidArgument("part vertex " + std::to_string(v) + " out of range");
        if (pinned[v]) throw InvalidArgument("part vertex " + std::to_string(v) + " is also a pin");
        if (scan.part_of[v] != -1) {
          throw InvalidArgument("vertex " + std::to_string(v) + " lies in two parts");
        }
        scan.part_of[v] = i;
      }
    }
  }
  return scan;
}

// Calls fn(residual) for every qualifying edge.
template <typename Fn>
void scan_link(const ColouredHypergraph& g, std::span<const Vertex> pins, const LinkScan& scan, bool partite,
               std::optional<Colour> colour_filter, Fn&& fn) {
  const int k = g.uniformity();
  const int residual_size = k - static_cast<int>(pins.size());
  Edge residual(residual_size);
  std::vector<char> seen_part(partite ? scan.parts : 0);

  auto visit = [&](std::size_t id) {
    if (colour_filter && g.colour(id) != *colour_filter) return;
    const Edge& e = g.host().edge(id);
    int out = 0;
    for (Vertex v : e) {
      if (std::find(pins.begin(), pins.end(), v) != pins.end()) continue;
      if (out == residual_size) return;  // misses a pin
      residual[out++] = v;
    }
    if (out != residual_size) return;
    if (partite) {
      std::fill(seen_part.begin(), seen_part.end(), 0);
      for (Vertex v : residual) {
        const int p = scan.part_of[v];
        if (p < 0 || seen_part[p]) return;
        seen_part[p] = 1;
      }
    }
    fn(residual);
  };

  if (pins.empty()) {
    for (std::size_t id = 0; id < g.host().size(); ++id) visit(id);
    return;
  }
  // Scan the incidence list of the rarest pin.
  Vertex anchor = pins.front();
  for (Vertex v : pins) {
    if (g.host().incident(v).size() < g.host().incident(anchor).size()) anchor = v;
  }
  for (std::size_t id : g.host().incident(anchor)) visit(id);
}

}  // namespace

LinkGraph link_graph(const ColouredHypergraph& g, std::span<const Vertex> pins,
                     const std::vector<VertexSet>* parts, std::optional<Colour> colour_filter) {
  const LinkScan scan = prepare_link(g, pins, parts, colour_filter);
  LinkGraph link;
  link.uniformity = g.uniformity() - static_cast<int>(pins.size());
  if (parts) {
    link.parts = *parts;
    for (auto& p : link.parts) std::sort(p.begin(), p.end());
  }
  scan_link(g, pins, scan, parts != nullptr, colour_filter,
            [&](const Edge& residual) { link.edges.push_back(residual); });
  std::sort(link.edges.begin(), link.edges.end());
  return link;
}

std::int64_t link_size(const ColouredHypergraph& g, std::span<const Vertex> pins,
                       const std::vector<VertexSet>& parts, std::optional<Colour> colour_filter) {
  const LinkScan scan = prepare_link(g, pins, &parts, colour_filter);
  std::int64_t count = 0;
  scan_link(g, pins, scan, true, colour_filter, [&](const Edge&) { ++count; });
  return count;
}

// --- independence number ----------------------------------------------------

namespace {

class IndependentSetSearch {
 public:
  IndependentSetSearch(const Hypergraph& h) : h_(h), k_(h.uniformity()), n_(h.order()) {
    through_.assign(n_, {});
    for (const auto& e : h.edges()) {
      std::uint64_t mask = 0;
      for (Vertex v : e) mask |= std::uint64_t{1} << v;
      for (Vertex v : e) through_[v].push_back(mask);
    }
  }

  int run() {
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    expand(0, admissible(0, all), 0);
    return best_;
  }

 private:
  // Candidates w whose addition to `chosen` would not complete an edge.
  std::uint64_t admissible(std::uint64_t chosen, std::uint64_t candidates) const {
    std::uint64_t out = 0;
    for (std::uint64_t rest = candidates; rest; rest &= rest - 1) {
      const int w = std::countr_zero(rest);
      const std::uint64_t wbit = std::uint64_t{1} << w;
      bool ok = true;
      for (std::uint64_t e : through_[w]) {
        if ((e & ~(chosen | wbit)) == 0) {
          ok = false;
          break;
        }
      }
      if (ok) out |= wbit;
    }
    return out;
  }

  bool is_clique_with(std::uint64_t cls, int w) const {
    // Every (k-1)-subset of cls together with w must be an edge.
    std::vector<int> members;
    for (std::uint64_t rest = cls; rest; rest &= rest - 1) members.push_back(std::countr_zero(rest));
    if (static_cast<int>(members.size()) < k_ - 1) {
      return true;  // no k-subset yet; adding never hurts the bound
    }
    bool ok = true;
    Edge probe(k_);
    for_each_combination(static_cast<int>(members.size()), k_ - 1, [&](std::span<const int> idx) {
      if (!ok) return;
      for (int i = 0; i < k_ - 1; ++i) probe[i] = members[idx[i]];
      probe[k_ - 1] = w;
      if (!h_.contains(probe)) ok = false;
    });
    return ok;
  }

  // Partition candidates into classes in which every k-subset is an edge;
  // an independent set takes at most k-1 vertices from each.
  int cover_bound(std::uint64_t candidates) const {
    std::vector<std::uint64_t> classes;
    for (std::uint64_t rest = candidates; rest; rest &= rest - 1) {
      const int w = std::countr_zero(rest);
      bool placed = false;
      for (auto& cls : classes) {
        if (std::popcount(cls) < 8 && is_clique_with(cls, w)) {
          cls |= std::uint64_t{1} << w;
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back(std::uint64_t{1} << w);
    }
    int bound = 0;
    for (auto cls : classes) bound += std::min(std::popcount(cls), k_ - 1);
    return bound;
  }

  void expand(std::uint64_t chosen, std::uint64_t candidates, int size) {
    if (size > best_) best_ = size;
    if (!candidates) return;
    if (size + std::popcount(candidates) <= best_) return;
    if (size + cover_bound(candidates) <= best_) return;
    const int v = std::countr_zero(candidates);
    const std::uint64_t vbit = std::uint64_t{1} << v;
    const std::uint64_t with = chosen | vbit;
    expand(with, admissible(with, candidates & ~vbit), size + 1);
    expand(chosen, candidates & ~vbit, size);
  }

  const Hypergraph& h_;
  int k_;
  int n_;
  std::vector<std::vector<std::uint64_t>> through_;
  int best_ = 0;
};

}  // namespace

int independence_number(const Hypergraph& h, IndependenceOptions options) {
  const int limit = std::min(options.max_vertices, 64);
  if (h.order() > limit) {
    throw SizeLimit("exact independence number is limited to " + std::to_string(limit) + " vertices, instance has " +
                    std::to_string(h.order()));
  }
  if (h.order() == 0) return 0;
  return IndependentSetSearch(h).run();
}

Rational density(const Hypergraph& h) {
  if (h.order() < h.uniformity()) {
    throw InvalidArgument("density needs n >= k");
  }
  const auto total = binomial(h.order(), h.uniformity());
  if (total > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw SizeLimit("C(n, k) too large for an exact density");
  }
  return Rational(static_cast<std::int64_t>(h.size()), static_cast<std::int64_t>(total));
}

Hypergraph partite_clique_set(const VertexPartition& p, int k, int n_hint) {
  const int n = std::max(n_hint, p.span());
  std::vector<Edge> edges;
  const int blocks = static_cast<int>(p.size());
  if (k <= blocks) {
    Edge current(k);
    for_each_combination(blocks, k, [&](std::span<const int> chosen) {
      // Mixed-radix walk over one vertex per chosen block.
      std::vector<std::size_t> digit(k, 0);
      while (true) {
        for (int i = 0; i < k; ++i) current[i] = p.block(chosen[i])[digit[i]];
        edges.push_back(canonical_edge(current));
        int pos = k - 1;
        while (pos >= 0 && ++digit[pos] == p.block(chosen[pos]).size()) digit[pos--] = 0;
        if (pos < 0) break;
      }
    });
  }
  return Hypergraph(k, n, std::move(edges));
}

namespace {

// Extends `current` by vertices above its last element, keeping every j-subset
// an edge accepted by `accept`.
template <typename Accept>
void grow_cliques(int n, int j, int k, Edge& current, Accept&& accept, std::vector<Edge>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.push_back(current);
    return;
  }
  const Vertex from = current.empty() ? 0 : current.back() + 1;
  Edge probe(j);
  for (Vertex w = from; w < n; ++w) {
    // Remaining slots must still fit.
    if (n - w < k - static_cast<int>(current.size())) break;
    bool ok = true;
    if (static_cast<int>(current.size()) >= j - 1) {
      for_each_combination(static_cast<int>(current.size()), j - 1, [&](std::span<const int> idx) {
        if (!ok) return;
        for (int i = 0; i < j - 1; ++i) probe[i] = current[idx[i]];
        probe[j - 1] = w;
        if (!accept(probe)) ok = false;
      });
    }
    if (!ok) continue;
    current.push_back(w);
    grow_cliques(n, j, k, current, accept, out);
    current.pop_back();
  }
}

}  // namespace

Hypergraph clique_hypergraph(const Hypergraph& h, int k) {
  const int j = h.uniformity();
  if (k < j) throw InvalidArgument("clique uniformity must be at least the source uniformity");
  std::vector<Edge> edges;
  if (k <= h.order()) {
    Edge current;
    grow_cliques(h.order(), j, k, current, [&](const Edge& e) { return h.contains(e); }, edges);
  }
  return Hypergraph(k, h.order(), std::move(edges));
}

ColouredHypergraph clique_hypergraph(const ColouredHypergraph& g, int k) {
  const int j = g.uniformity();
  if (k < j) throw InvalidArgument("clique uniformity must be at least the source uniformity");
  std::vector<Edge> edges;
  std::vector<Colour> colours;
  if (k <= g.order()) {
    for (Colour c = 1; c <= g.colours(); ++c) {
      std::vector<Edge> found;
      Edge current;
      grow_cliques(g.order(), j, k, current, [&](const Edge& e) { return g.colour_of(e) == c; }, found);
      for (auto& e : found) {
        edges.push_back(std::move(e));
        colours.push_back(c);
      }
    }
  }
  return ColouredHypergraph(k, g.order(), g.colours(), std::move(edges), std::move(colours));
}

}  // namespace tightcycle
