#pragma once

// Independent brute-force helpers shared by the unit and acceptance tests.
// Nothing here calls into the library's search code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "tightcycle/hypergraph.hpp"

namespace testsupport {

using tightcycle::Colour;
using tightcycle::ColouredHypergraph;
using tightcycle::Edge;
using tightcycle::Vertex;

inline std::vector<Edge> all_subsets(int n, int k) {
  std::vector<Edge> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    Edge e;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1) e.push_back(v);
    }
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every k-subset kept with probability p, coloured uniformly from [1..r].
inline ColouredHypergraph random_coloured(int k, int n, int r, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick(1, r);
  std::vector<Edge> edges;
  std::vector<Colour> colours;
  for (auto& e : all_subsets(n, k)) {
    if (coin(rng) < p) {
      edges.push_back(e);
      colours.push_back(pick(rng));
    }
  }
  return ColouredHypergraph(k, n, r, edges, colours);
}

/// Ordered-map lookup, deliberately unlike the library's rank index.
class EdgeTable {
 public:
  explicit EdgeTable(const ColouredHypergraph& g) {
    for (std::size_t id = 0; id < g.host().size(); ++id) {
      table_.emplace(g.host().edge(id), g.colour(id));
    }
  }
  Colour colour(std::vector<Vertex> s) const {
    std::sort(s.begin(), s.end());
    auto it = table_.find(s);
    return it == table_.end() ? 0 : it->second;
  }

 private:
  std::map<Edge, Colour> table_;
};

/// Colour of the cyclic sequence if every window is an edge of one colour.
inline Colour cyclic_colour(const EdgeTable& t, const std::vector<Vertex>& seq, int k) {
  const std::size_t m = seq.size();
  Colour common = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Vertex> w;
    for (int j = 0; j < k; ++j) w.push_back(seq[(i + j) % m]);
    const Colour c = t.colour(w);
    if (c == 0 || (common && c != common)) return 0;
    common = c;
  }
  return common;
}

/// Whether some ordering of `vs` is a monochromatic tight cycle, by trying
/// every permutation with the smallest vertex fixed in front.
inline bool has_spanning_cycle(const EdgeTable& t, std::vector<Vertex> vs, int k) {
  if (vs.size() == 1) return true;
  if (static_cast<int>(vs.size()) <= k) return false;
  std::sort(vs.begin(), vs.end());
  do {
    if (cyclic_colour(t, vs, k)) return true;
  } while (std::next_permutation(vs.begin() + 1, vs.end()));
  return false;
}

/// Longest monochromatic tight cycle length over all subsets, by permutation.
inline int brute_longest(const ColouredHypergraph& g) {
  const EdgeTable t(g);
  const int n = g.order(), k = g.uniformity();
  int best = n > 0 ? 1 : 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best || size <= k) continue;
    std::vector<Vertex> vs;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1) vs.push_back(v);
    }
    if (has_spanning_cycle(t, vs, k)) best = size;
  }
  return best;
}

/// Independence number by subset enumeration.
inline int brute_alpha(const tightcycle::Hypergraph& h) {
  const int n = h.order();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& e : h.edges()) {
      bool inside = true;
      for (Vertex v : e) inside = inside && (mask >> v & 1);
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

/// Tight paths in the complete partite k-graph on parts `parts`, including
/// negatively or mixed oriented ones; fn(seq) for each path of >= min_len
/// vertices.  A sequence is a tight path iff every k-window meets k parts.
template <typename Fn>
void for_each_partite_path(const std::vector<std::vector<Vertex>>& parts, int k, std::size_t min_len, Fn&& fn) {
  std::map<Vertex, int> part_of;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (Vertex v : parts[p]) part_of[v] = static_cast<int>(p);
  }
  std::vector<Vertex> seq;
  std::set<Vertex> used;
  auto rec = [&](auto&& self) -> void {
    if (seq.size() >= min_len) fn(seq);
    for (const auto& [v, p] : part_of) {
      if (used.count(v)) continue;
      // the new vertex must differ in part from the previous k-1
      bool ok = true;
      for (std::size_t j = 1; j < static_cast<std::size_t>(k) && j <= seq.size(); ++j) {
        if (part_of[seq[seq.size() - j]] == p) ok = false;
      }
      if (!ok) continue;
      seq.push_back(v);
      used.insert(v);
      self(self);
      used.erase(v);
      seq.pop_back();
    }
  };
  rec(rec);
}

/// Satisfying lift instance: aux position p lies in part p mod (k-1), rim
/// vertices come after the aux vertices, and every required k-set is an
/// edge of colour 1.  Noise edges of other colours are added on top.
struct LiftInstance {
  int k = 0;
  int t = 0;
  int n = 0;
  std::vector<Vertex> aux;
  std::vector<Vertex> rim;
  std::vector<std::vector<Vertex>> parts;
  std::vector<Edge> edges;
  std::vector<Colour> colours;

  /// The required k-sets in checking order, tagged (s, i, wrap).
  struct Requirement {
    int s, i;
    bool wrap;
    Edge edge;
  };
  std::vector<Requirement> requirements() const {
    std::vector<Requirement> out;
    const int w = k - 1, m = t * w;
    auto window = [&](int s, int i, Vertex extra) {
      Edge e{extra};
      for (int l = 0; l < w; ++l) e.push_back(aux[((s - 1) * w + (i - 1) + l) % m]);
      std::sort(e.begin(), e.end());
      return e;
    };
    for (int s = 1; s <= t; ++s) {
      for (int i = 1; i <= w; ++i) out.push_back({s, i, false, window(s, i, rim[s - 1])});
      out.push_back({s, 1, true, window(s, 1, rim[(s - 2 + t) % t])});
    }
    return out;
  }

  tightcycle::ColouredHypergraph graph() const { return {k, n, 3, edges, colours}; }
};

inline LiftInstance make_lift_instance(int k, int t, std::uint64_t seed, int noise = 10) {
  std::mt19937_64 rng(seed);
  LiftInstance inst;
  inst.k = k;
  inst.t = t;
  const int w = k - 1;
  const int extra = 2;
  inst.n = t * w + t + extra;
  std::vector<Vertex> labels(inst.n);
  for (int v = 0; v < inst.n; ++v) labels[v] = v;
  std::shuffle(labels.begin(), labels.end(), rng);
  inst.parts.assign(w, {});
  for (int p = 0; p < t * w; ++p) {
    inst.aux.push_back(labels[p]);
    inst.parts[p % w].push_back(labels[p]);
  }
  for (int s = 0; s < t; ++s) inst.rim.push_back(labels[t * w + s]);
  for (auto& part : inst.parts) std::sort(part.begin(), part.end());
  std::set<Edge> required;
  for (const auto& req : inst.requirements()) required.insert(req.edge);
  for (const auto& e : required) {
    inst.edges.push_back(e);
    inst.colours.push_back(1);
  }
  std::uniform_int_distribution<int> pick_colour(2, 3);
  auto all = all_subsets(inst.n, k);
  std::shuffle(all.begin(), all.end(), rng);
  for (int i = 0, added = 0; i < static_cast<int>(all.size()) && added < noise; ++i) {
    if (required.count(all[i])) continue;
    inst.edges.push_back(all[i]);
    inst.colours.push_back(pick_colour(rng));
    ++added;
  }
  return inst;
}

/// Blocks of `size` vertices and a k-graph whose partite links from each
/// block into earlier blocks stay within m^{-(k-1)^2} of the product, plus
/// unconstrained edges that repeat a block.
struct TransversalInstance {
  tightcycle::Hypergraph h;
  std::vector<std::vector<Vertex>> blocks;
};

inline TransversalInstance make_transversal_instance(int k, int m, int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = m * size;
  std::vector<std::vector<Vertex>> blocks(m);
  std::vector<Vertex> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = v;
  std::shuffle(labels.begin(), labels.end(), rng);
  for (int v = 0; v < n; ++v) blocks[v / size].push_back(labels[v]);
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::int64_t scale = 1;
  for (int i = 0; i < (k - 1) * (k - 1); ++i) scale *= m;
  std::int64_t product = 1;
  for (int i = 0; i < k - 1; ++i) product *= size;
  const std::int64_t cap = product / scale;

  std::set<Edge> edges;
  std::uniform_int_distribution<int> pick(0, size - 1);
  // choose k-1 lower blocks for the top block i by rejection
  for (int i = k; i <= m; ++i) {
    for (Vertex v : blocks[i - 1]) {
      std::vector<int> lower(i - 1);
      for (int j = 0; j < i - 1; ++j) lower[j] = j;
      std::vector<bool> mask(i - 1, false);
      std::fill(mask.end() - (k - 1), mask.end(), true);
      do {
        std::uniform_int_distribution<std::int64_t> amount(0, cap);
        const auto want = amount(rng);
        for (std::int64_t a = 0; a < want; ++a) {
          Edge e{v};
          for (int j = 0; j < i - 1; ++j) {
            if (mask[j]) e.push_back(blocks[j][pick(rng)]);
          }
          std::sort(e.begin(), e.end());
          edges.insert(e);  // duplicates only lower the count
        }
      } while (std::next_permutation(mask.begin(), mask.end()));
    }
  }
  // edges with two vertices in one block are not constrained
  std::uniform_int_distribution<int> block_pick(0, m - 1);
  for (int a = 0; a < 3 * n; ++a) {
    const int b = block_pick(rng);
    std::set<Vertex> e{blocks[b][pick(rng)], blocks[b][pick(rng)]};
    if (e.size() < 2) continue;
    while (static_cast<int>(e.size()) < k) e.insert(static_cast<Vertex>(rng() % n));
    if (static_cast<int>(e.size()) == k) edges.insert(Edge(e.begin(), e.end()));
  }
  return {tightcycle::Hypergraph(k, n, std::vector<Edge>(edges.begin(), edges.end())), blocks};
}

/// Whether the transversal picks one vertex per block and spans no edge.
inline bool is_independent_transversal(const tightcycle::Hypergraph& h, const std::vector<std::vector<Vertex>>& blocks,
                                       const std::vector<Vertex>& t) {
  if (t.size() != blocks.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::binary_search(blocks[i].begin(), blocks[i].end(), t[i])) return false;
  }
  const std::set<Vertex> chosen(t.begin(), t.end());
  for (const auto& e : h.edges()) {
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return chosen.count(v) > 0; })) return false;
  }
  return true;
}

}  // namespace testsupport
