#include "tightcycle/lemmas.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "combinatorics.hpp"

namespace tightcycle {

// --- blocks -----------------------------------------------------------------

namespace {

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Greedy maximal matching on the graph "intersection >= q*m", in order.
std::vector<std::pair<int, int>> greedy_pairs(const std::vector<std::vector<int>>& sets, const Rational& q, int m,
                                              std::vector<int>& unmatched) {
  const int count = static_cast<int>(sets.size());
  std::vector<char> used(count, 0);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < count; ++a) {
    if (used[a]) continue;
    for (int b = a + 1; b < count; ++b) {
      if (used[b]) continue;
      if (at_least(static_cast<std::int64_t>(intersect(sets[a], sets[b]).size()), q, m)) {
        used[a] = used[b] = 1;
        pairs.emplace_back(a, b);
        break;
      }
    }
    if (!used[a]) unmatched.push_back(a);
  }
  return pairs;
}

}  // namespace

Rational block_intersection_floor(const Rational& eps) {
  const Rational sq = eps * eps;
  return sq * sq / 64;
}

Rational block_leftover_bound(const Rational& eps) { return Rational(8) / (eps * eps) + Rational(2) / eps; }

BlockGrouping group_blocks(const SubsetFamily& family, const Rational& eps) {
  if (eps <= 0 || eps > 1) throw InvalidArgument("eps must lie in (0, 1]");
  if (!family.owners.empty() && family.owners.size() != family.members.size()) {
    throw InvalidArgument("owner list and member list differ in length");
  }
  const int m = family.ground_size;
  std::vector<std::vector<int>> members = family.members;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto& f = members[i];
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (!f.empty() && (f.front() < 0 || f.back() >= m)) {
      throw InvalidArgument("member " + std::to_string(family.owner(i)) + " leaves the ground set");
    }
    if (below(static_cast<std::int64_t>(f.size()), eps, m)) {
      throw InvalidArgument("member " + std::to_string(family.owner(i)) + " has " + std::to_string(f.size()) +
                            " elements, below eps*m");
    }
  }

  const Rational half = eps / 2;
  const Rational q1 = half * half;
  const Rational half1 = q1 / 2;
  const Rational q2 = half1 * half1;

  BlockGrouping out;
  std::vector<int> unmatched;
  const auto pairs = greedy_pairs(members, q1, m, unmatched);
  for (int i : unmatched) out.leftover.push_back(family.owner(i));

  std::vector<std::vector<int>> pair_sets;
  pair_sets.reserve(pairs.size());
  for (auto [a, b] : pairs) pair_sets.push_back(intersect(members[a], members[b]));
  std::vector<int> unmatched_pairs;
  const auto quads = greedy_pairs(pair_sets, q2, m, unmatched_pairs);
  for (int p : unmatched_pairs) {
    out.leftover.push_back(family.owner(pairs[p].first));
    out.leftover.push_back(family.owner(pairs[p].second));
  }
  for (auto [p, q] : quads) {
    BlockGrouping::Block block;
    block.owners = {family.owner(pairs[p].first), family.owner(pairs[p].second), family.owner(pairs[q].first),
                    family.owner(pairs[q].second)};
    block.intersection = intersect(pair_sets[p], pair_sets[q]);
    out.blocks.push_back(std::move(block));
  }
  std::sort(out.leftover.begin(), out.leftover.end());
  return out;
}

// --- Posa covers ------------------------------------------------------------

std::vector<std::vector<Vertex>> posa_cycle_cover(const Hypergraph& g) {
  if (g.uniformity() != 2) throw InvalidArgument("cycle covers need a graph");
  const int n = g.order();
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<char> alive(n, 1);
  std::vector<std::vector<Vertex>> cover;
  auto live_degree = [&](Vertex v) {
    return std::count_if(adj[v].begin(), adj[v].end(), [&](Vertex u) { return alive[u]; });
  };
  for (int remaining = n; remaining > 0;) {
    // start from a vertex of smallest degree among the remaining ones
    Vertex start = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (alive[v] && (start < 0 || live_degree(v) < live_degree(start))) start = v;
    }
    // grow at the front until the front vertex has no neighbour off the path
    std::vector<int> position(n, -1);
    position[start] = 0;
    std::vector<Vertex> front_first;  // path stored reversed: back() is the front
    front_first.push_back(start);
    while (true) {
      const Vertex front = front_first.back();
      Vertex next = -1;
      for (Vertex u : adj[front]) {
        if (alive[u] && position[u] < 0) {
          next = u;
          break;
        }
      }
      if (next < 0) break;
      position[next] = static_cast<int>(front_first.size());
      front_first.push_back(next);
    }
    // x_1 is the front; cut at its farthest neighbour along the path
    std::vector<Vertex> seq(front_first.rbegin(), front_first.rend());
    const Vertex x1 = seq[0];
    std::size_t far = 0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      if (std::binary_search(adj[x1].begin(), adj[x1].end(), seq[i])) far = i;
    }
    seq.resize(far + 1);
    for (Vertex v : seq) alive[v] = 0;
    remaining -= static_cast<int>(seq.size());
    cover.push_back(std::move(seq));
  }
  return cover;
}

std::vector<std::vector<Vertex>> posa_path_cover(const Hypergraph& g) { return posa_cycle_cover(g); }

// --- independent transversal ------------------------------------------------

namespace {

using Wide = __int128;

Wide saturating_pow(Wide base, int exp) {
  const Wide cap = Wide(1) << 100;
  Wide out = 1;
  for (int i = 0; i < exp; ++i) {
    out *= base;
    if (out > cap) return cap;
  }
  return out;
}

std::string tuple_text(const std::vector<int>& idx) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i];
  out << ')';
  return out.str();
}

}  // namespace

TransversalResult independent_transversal(const Hypergraph& h, const std::vector<VertexSet>& blocks,
                                          TransversalOptions options) {
  const int k = h.uniformity();
  if (k < 2) throw InvalidArgument("transversals need uniformity at least 2");
  const int m = static_cast<int>(blocks.size());
  if (m == 0) return TransversalResult{std::vector<Vertex>{}, {}, {}};
  std::vector<VertexSet> b = blocks;
  std::vector<char> claimed(h.order(), 0);
  for (int i = 0; i < m; ++i) {
    if (b[i].empty()) throw InvalidArgument("block " + std::to_string(i + 1) + " is empty");
    std::sort(b[i].begin(), b[i].end());
    for (Vertex v : b[i]) {
      if (v < 0 || v >= h.order()) throw InvalidArgument("block vertex " + std::to_string(v) + " out of range");
      if (claimed[v]) throw InvalidArgument("vertex " + std::to_string(v) + " lies in two blocks");
      claimed[v] = 1;
    }
  }
  const ColouredHypergraph g(k, h.order(), 1, h.edges(), std::vector<Colour>(h.size(), 1));
  auto product = [&](const std::vector<int>& idx) {
    Wide p = 1;
    for (int i : idx) p *= static_cast<Wide>(b[i - 1].size());
    return p;
  };
  auto parts_of = [&](const std::vector<int>& idx) {
    std::vector<VertexSet> parts;
    for (int i : idx) parts.push_back(b[i - 1]);
    return parts;
  };

  if (options.checked) {
    // |Lk(v; B_{i_1}..B_{i_{k-1}})| * m^{(k-1)^2} <= product
    const Wide scale = saturating_pow(m, (k - 1) * (k - 1));
    for (int i = k; i <= m; ++i) {
      for_each_combination(i - 1, k - 1, [&](std::span<const int> c) {
        std::vector<int> idx;
        for (int x : c) idx.push_back(x + 1);
        const auto parts = parts_of(idx);
        const Wide bound = product(idx);
        for (Vertex v : b[i - 1]) {
          const std::vector<Vertex> pins{v};
          if (static_cast<Wide>(link_size(g, pins, parts)) * scale > bound) {
            throw TransversalHypothesisViolation(
                i, idx, v,
                "vertex " + std::to_string(v) + " of block " + std::to_string(i) + " has too large a link into blocks " +
                    tuple_text(idx));
          }
        }
      });
    }
  }

  TransversalResult result;
  std::vector<Vertex> chosen(m + 1, -1);  // 1-based
  for (int j = m; j >= 1; --j) {
    std::vector<char> bad(h.order(), 0);
    std::vector<char> adjacent(h.order(), 0);
    for (int s = 1; s <= k - 1; ++s) {
      // i_1 < .. < i_{s-1} < j < i_{s+1} < .. < i_k
      const int lower = s - 1, upper = k - s;
      if (lower > j - 1 || upper > m - j) continue;
      for_each_combination(j - 1, lower, [&](std::span<const int> lo) {
        for_each_combination(m - j, upper, [&](std::span<const int> hi) {
          std::vector<Vertex> pins;
          for (int x : hi) pins.push_back(chosen[j + 1 + x]);
          if (s == 1) {
            // neighbourhood of the chosen upper vertices in B_j
            const std::vector<VertexSet> parts{b[j - 1]};
            for (const auto& e : link_graph(g, pins, &parts).edges) adjacent[e[0]] = 1;
            return;
          }
          std::vector<int> idx;
          for (int x : lo) idx.push_back(x + 1);
          const auto parts = parts_of(idx);
          const Wide bound = product(idx);
          const Wide scale = saturating_pow(m, (k - 1) * (s - 1));
          for (Vertex u : b[j - 1]) {
            auto with_u = pins;
            with_u.push_back(u);
            if (static_cast<Wide>(link_size(g, with_u, parts)) * scale >= bound) bad[u] = 1;
          }
        });
      });
    }
    Vertex pick = -1;
    for (Vertex u : b[j - 1]) {
      if (!bad[u] && !adjacent[u]) {
        pick = u;
        break;
      }
    }
    if (pick < 0) {
      if (options.checked) {
        throw InternalError("transversal greedy stuck at block " + std::to_string(j) + " under the hypothesis");
      }
      for (Vertex u : b[j - 1]) {
        if (!adjacent[u]) {
          pick = u;
          break;
        }
      }
      if (pick < 0) {
        result.stuck_block = j;
        return result;
      }
      result.relaxed_blocks.push_back(j);
    }
    chosen[j] = pick;
  }
  result.transversal = std::vector<Vertex>(chosen.begin() + 1, chosen.end());
  return result;
}

}  // namespace tightcycle
