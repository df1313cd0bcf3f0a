#include "tightcycle/absorption.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "tightcycle/lemmas.hpp"

namespace tightcycle {

void AbsorptionConfig::validate() const {
  if (!(0 < gamma && gamma < delta3 && delta3 < delta2 && delta2 < delta1 && delta1 < eps)) {
    throw InvalidArgument("absorption constants must satisfy 0 < gamma < delta3 < delta2 < delta1 < eps");
  }
  if (split_trials < 1) throw InvalidArgument("split_trials must be positive");
  connect_budget.validate();
}

AbsorptionConfig AbsorptionConfig::for_density(const Rational& eps, int r) {
  if (eps <= 0 || eps > 1 || r < 1) throw InvalidArgument("need 0 < eps <= 1 and r >= 1");
  AbsorptionConfig c;
  c.eps = eps;
  c.delta1 = block_intersection_floor(eps / (2 * r));
  c.delta2 = c.delta1 / 2;
  c.delta3 = c.delta2 / 2;
  c.gamma = c.delta3 / 2;
  return c;
}

namespace {

std::int64_t part_product(const std::vector<VertexSet>& parts) {
  std::int64_t p = 1;
  for (const auto& s : parts) p *= static_cast<std::int64_t>(s.size());
  return p;
}

void check_parts(const ColouredHypergraph& g, const std::vector<VertexSet>& parts, const VertexSet& bk) {
  const int k = g.uniformity();
  if (static_cast<int>(parts.size()) != k - 1) {
    throw InvalidArgument("expected " + std::to_string(k - 1) + " parts, got " + std::to_string(parts.size()));
  }
  std::vector<char> seen(g.order(), 0);
  auto claim = [&](Vertex v) {
    if (v < 0 || v >= g.order()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    if (seen[v]) throw InvalidArgument("vertex " + std::to_string(v) + " appears twice");
    seen[v] = 1;
  };
  for (const auto& p : parts) {
    if (p.empty()) throw InvalidArgument("empty part");
    for (Vertex v : p) claim(v);
  }
  for (Vertex v : bk) claim(v);
}

// Index of a partite (k-1)-set in the product of the parts.
class PartiteIndex {
 public:
  PartiteIndex(const std::vector<VertexSet>& parts, int n) : parts_(parts), part_(n, -1), pos_(n, -1) {
    std::int64_t stride = 1;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      strides_.push_back(stride);
      for (std::size_t i = 0; i < parts[j].size(); ++i) {
        part_[parts[j][i]] = static_cast<int>(j);
        pos_[parts[j][i]] = static_cast<int>(i);
      }
      stride *= static_cast<std::int64_t>(parts[j].size());
    }
    size_ = stride;
  }

  std::int64_t size() const { return size_; }

  int index(const Edge& e) const {
    std::int64_t id = 0;
    for (Vertex v : e) id += pos_[v] * strides_[part_[v]];
    return static_cast<int>(id);
  }

  /// Vertices ordered by part.
  std::vector<Vertex> decode(int id) const {
    std::vector<Vertex> out(parts_.size());
    for (std::size_t j = parts_.size(); j-- > 0;) {
      out[j] = parts_[j][id / strides_[j]];
      id = static_cast<int>(id % strides_[j]);
    }
    return out;
  }

 private:
  std::vector<VertexSet> parts_;
  std::vector<int> part_, pos_;
  std::vector<std::int64_t> strides_;
  std::int64_t size_ = 1;
};

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct ClassOutcome {
  std::vector<MonoCycle> cycles;
  VertexSet degenerate;
  std::vector<BlockPathPlan> plans;
  std::optional<AbsorbFailure> failure;
};

ClassOutcome cover_class(const ColouredHypergraph& g, const ColourClass& cls, const Rational& member_eps,
                         const AbsorptionConfig& config, std::vector<char>& reserved) {
  ClassOutcome out;
  const int k = g.uniformity();
  const int big_k = k - 1;
  const auto& parts = cls.parts;
  const std::int64_t prod = part_product(parts);
  if (prod > (std::int64_t{1} << 24)) throw SizeLimit("link ground set too large");
  const PartiteIndex index(parts, g.order());

  // Step 1: blocks of four links with a common intersection
  SubsetFamily family{static_cast<int>(prod), {}, {}};
  for (Vertex v : cls.covered) {
    const std::vector<Vertex> pin{v};
    std::vector<int> member;
    for (const auto& e : link_graph(g, pin, &parts, cls.colour).edges) member.push_back(index.index(e));
    std::sort(member.begin(), member.end());
    family.members.push_back(std::move(member));
    family.owners.push_back(v);
  }
  const BlockGrouping grouping = group_blocks(family, member_eps);
  out.degenerate.assign(grouping.leftover.begin(), grouping.leftover.end());
  const auto& blocks = grouping.blocks;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (below(static_cast<std::int64_t>(blocks[b].intersection.size()), config.delta1, prod)) {
      out.failure = AbsorbFailure{"blocks", "block " + std::to_string(b) + " meets in fewer than delta1 edges"};
      return out;
    }
  }
  if (blocks.empty()) return out;

  // Step 2: paths in the graph of blocks with large pairwise intersections
  std::vector<Edge> adjacency;
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < blocks.size(); ++b) {
      const auto common = intersect(blocks[a].intersection, blocks[b].intersection);
      if (at_least(static_cast<std::int64_t>(common.size()), config.delta3, prod)) {
        adjacency.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
      }
    }
  }
  const auto paths = posa_path_cover(Hypergraph(2, static_cast<int>(blocks.size()), adjacency));
  if (!at_least(2, config.delta2, static_cast<std::int64_t>(paths.size()))) {
    out.failure = AbsorbFailure{"block-paths", std::to_string(paths.size()) + " paths exceed 2/delta2"};
    return out;
  }

  // Step 3: one auxiliary cycle per path, lifted through the owners
  for (const auto& path : paths) {
    const int t = static_cast<int>(path.size());
    BlockPathPlan plan;
    plan.colour = cls.colour;
    plan.blocks.assign(path.begin(), path.end());

    auto take_edge = [&](const std::vector<int>& pool) -> std::optional<std::vector<Vertex>> {
      for (int id : pool) {
        auto e = index.decode(id);
        if (std::none_of(e.begin(), e.end(), [&](Vertex v) { return reserved[v]; })) {
          for (Vertex v : e) reserved[v] = 1;
          return e;
        }
      }
      return std::nullopt;
    };
    std::vector<std::optional<std::vector<Vertex>>> picks;
    picks.push_back(take_edge(blocks[path[0]].intersection));
    std::vector<std::optional<std::vector<Vertex>>> primes;
    for (int s = 1; s < t; ++s) {
      const auto common = intersect(blocks[path[s - 1]].intersection, blocks[path[s]].intersection);
      picks.push_back(take_edge(common));
      primes.push_back(take_edge(common));
    }
    picks.push_back(take_edge(blocks[path[t - 1]].intersection));
    const bool all_found = std::all_of(picks.begin(), picks.end(), [](const auto& p) { return p.has_value(); }) &&
                           std::all_of(primes.begin(), primes.end(), [](const auto& p) { return p.has_value(); });
    if (!all_found) {
      out.failure = AbsorbFailure{"edges", "no free disjoint edges along a path of " + std::to_string(t) + " blocks"};
      return out;
    }
    for (auto& p : picks) plan.e.push_back(*p);
    for (auto& p : primes) plan.e_prime.push_back(*p);

    // the s-th group on the way back is e'_s, with e'_0 = e_0 and e'_t = e_t
    auto back_edge = [&](int s) -> const std::vector<Vertex>& {
      if (s == 0) return plan.e[0];
      if (s == t) return plan.e[t];
      return plan.e_prime[s - 1];
    };
    auto join = [&](const std::vector<Vertex>& from, const std::vector<Vertex>& to,
                    int block) -> std::optional<TightPath> {
      const std::vector<Vertex> e(from.begin() + 1, from.end());
      const std::vector<Vertex> f(to.begin(), to.end() - 1);
      std::vector<Edge> edges;
      for (int id : blocks[block].intersection) edges.push_back(canonical_edge(index.decode(id)));
      std::sort(edges.begin(), edges.end());
      const LinkGraph host{big_k, parts, std::move(edges)};
      std::vector<Vertex> avoid;
      for (Vertex v = 0; v < g.order(); ++v) {
        if (reserved[v] && std::find(e.begin(), e.end(), v) == e.end() &&
            std::find(f.begin(), f.end(), v) == f.end()) {
          avoid.push_back(v);
        }
      }
      auto r = connect(host, e, f, avoid, config.connect_budget, {2 * big_k - 1, 1});
      if (!r.path) return std::nullopt;
      for (std::size_t i = e.size(); i + f.size() < r.path->seq.size(); ++i) {
        const Vertex v = r.path->seq[i];
        if (reserved[v]) throw InternalError("connector reuses reserved vertex " + std::to_string(v));
        reserved[v] = 1;
      }
      return r.path;
    };
    for (int s = 1; s <= t; ++s) {
      auto p = join(plan.e[s - 1], plan.e[s], path[s - 1]);
      if (!p) {
        out.failure = AbsorbFailure{"connect", "no forward connector in block " + std::to_string(path[s - 1])};
        return out;
      }
      plan.forward.push_back(*p);
    }
    for (int s = t; s >= 1; --s) {
      auto q = join(back_edge(s), back_edge(s - 1), path[s - 1]);
      if (!q) {
        out.failure = AbsorbFailure{"connect", "no backward connector in block " + std::to_string(path[s - 1])};
        return out;
      }
      plan.backward.push_back(*q);
    }

    auto append_internal = [&](const TightPath& p) {
      plan.aux.insert(plan.aux.end(), p.seq.begin() + (big_k - 1), p.seq.end() - (big_k - 1));
    };
    for (int s = 0; s <= t; ++s) {
      plan.aux.insert(plan.aux.end(), plan.e[s].begin(), plan.e[s].end());
      if (s < t) append_internal(plan.forward[s]);
    }
    for (int s = t; s >= 1; --s) {
      append_internal(plan.backward[t - s]);
      if (s - 1 >= 1) plan.aux.insert(plan.aux.end(), back_edge(s - 1).begin(), back_edge(s - 1).end());
    }

    // rim: two owners of each block going forwards, two coming back
    std::vector<int> group_block(4 * t + 1);
    for (int grp = 1; grp <= 4 * t; ++grp) {
      int b, owner;
      if (grp <= 2 * t) {
        b = (grp + 1) / 2;
        owner = grp % 2 == 1 ? 0 : 1;
      } else {
        b = (4 * t - grp) / 2 + 1;
        owner = grp % 2 == 0 ? 2 : 3;
      }
      group_block[grp] = path[b - 1];
      plan.rim.push_back(blocks[path[b - 1]].owners[owner]);
    }

    // every window must lie in the blocks of both rim vertices it serves
    const int len = static_cast<int>(plan.aux.size());
    if (len != 4 * t * big_k) throw InternalError("auxiliary cycle has the wrong length");
    auto window_in = [&](int start, int block) {
      std::vector<Vertex> w;
      for (int i = 0; i < big_k; ++i) w.push_back(plan.aux[(start + i) % len]);
      const int id = index.index(canonical_edge(w));
      const auto& inter = blocks[block].intersection;
      return std::binary_search(inter.begin(), inter.end(), id);
    };
    for (int grp = 1; grp <= 4 * t; ++grp) {
      const int start = (grp - 1) * big_k;
      for (int i = 0; i < big_k; ++i) {
        if (!window_in(start + i, group_block[grp])) throw InternalError("auxiliary window outside its block");
      }
      const int prev = grp == 1 ? 4 * t : grp - 1;
      if (!window_in(start, group_block[prev])) throw InternalError("auxiliary wrap window outside its block");
    }

    try {
      plan.lifted = lift_cycle(g, plan.aux, plan.rim, parts, cls.colour);
    } catch (const LiftPreconditionViolation& e) {
      throw InternalError(std::string("lift rejected a checked auxiliary cycle: ") + e.what());
    }
    for (Vertex v : plan.rim) reserved[v] = 1;
    out.cycles.push_back(MonoCycle{plan.lifted, cls.colour});
    out.plans.push_back(std::move(plan));
  }
  return out;
}

}  // namespace

ColourSplitResult colour_split(const ColouredHypergraph& g, const std::vector<VertexSet>& parts, const VertexSet& bk,
                               const Rational& eps, std::uint64_t seed, int max_trials) {
  check_parts(g, parts, bk);
  if (eps <= 0 || eps > 1) throw InvalidArgument("eps must lie in (0, 1]");
  const int r = g.colours();
  const std::int64_t prod = part_product(parts);
  std::vector<Colour> majority(bk.size(), 0);
  for (std::size_t i = 0; i < bk.size(); ++i) {
    const std::vector<Vertex> pin{bk[i]};
    std::int64_t best = -1;
    for (Colour c = 1; c <= r; ++c) {
      const std::int64_t size = link_size(g, pin, parts, c);
      if (size > best) {
        best = size;
        majority[i] = c;
      }
    }
    if (below(best, eps / r, prod)) {
      throw HypothesisViolation("vertex " + std::to_string(bk[i]) + " has no colour with link density eps/r");
    }
  }
  std::vector<Colour> used(majority.begin(), majority.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());

  auto classes_for = [&](const std::vector<std::vector<VertexSet>>& pieces) {
    std::vector<ColourClass> out;
    for (std::size_t q = 0; q < used.size(); ++q) {
      ColourClass cls;
      cls.colour = used[q];
      cls.parts = pieces[q];
      for (std::size_t i = 0; i < bk.size(); ++i) {
        if (majority[i] == used[q]) cls.covered.push_back(bk[i]);
      }
      out.push_back(std::move(cls));
    }
    return out;
  };

  ColourSplitResult result;
  const int classes = static_cast<int>(used.size());
  if (classes <= 1) {
    result.classes = classes_for({parts});
    return result;
  }
  for (const auto& p : parts) {
    if (static_cast<int>(p.size()) < classes) {
      result.failure = "a part has fewer vertices than colour classes";
      return result;
    }
  }
  std::mt19937_64 rng(seed);
  const Rational floor = eps / (2 * r);
  for (int trial = 1; trial <= max_trials; ++trial) {
    result.trials = trial;
    std::vector<std::vector<VertexSet>> pieces(classes, std::vector<VertexSet>(parts.size()));
    for (std::size_t j = 0; j < parts.size(); ++j) {
      auto shuffled = parts[j];
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      for (std::size_t i = 0; i < shuffled.size(); ++i) pieces[i % classes][j].push_back(shuffled[i]);
      for (auto& piece : pieces) std::sort(piece[j].begin(), piece[j].end());
    }
    auto candidate = classes_for(pieces);
    bool good = true;
    for (const auto& cls : candidate) {
      const std::int64_t piece_prod = part_product(cls.parts);
      for (Vertex v : cls.covered) {
        const std::vector<Vertex> pin{v};
        if (below(link_size(g, pin, cls.parts, cls.colour), floor, piece_prod)) {
          good = false;
          break;
        }
      }
      if (!good) break;
    }
    if (good) {
      result.classes = std::move(candidate);
      return result;
    }
  }
  result.failure = "no split within " + std::to_string(max_trials) + " trials";
  return result;
}

AbsorbResult absorb_cover(const ColouredHypergraph& g, const std::vector<VertexSet>& parts, const VertexSet& bk,
                          const AbsorptionConfig& config) {
  config.validate();
  check_parts(g, parts, bk);
  AbsorbResult result;
  if (bk.empty()) return result;
  std::size_t smallest = parts.front().size();
  for (const auto& p : parts) smallest = std::min(smallest, p.size());
  if (Rational(static_cast<std::int64_t>(bk.size())) > config.gamma * static_cast<std::int64_t>(smallest)) {
    result.failure = AbsorbFailure{"size-ratio", std::to_string(bk.size()) + " covered vertices against parts of " +
                                                     std::to_string(smallest)};
    return result;
  }
  auto split = colour_split(g, parts, bk, config.eps, config.seed, config.split_trials);
  if (!split.classes) {
    result.failure = AbsorbFailure{"colour-split", split.failure};
    return result;
  }
  const int r = g.colours();
  const Rational member_eps = split.classes->size() == 1 ? config.eps / r : config.eps / (2 * r);
  std::vector<char> reserved(g.order(), 0);
  for (const auto& cls : *split.classes) {
    auto outcome = cover_class(g, cls, member_eps, config, reserved);
    if (outcome.failure) {
      result.failure = outcome.failure;
      result.cycles.clear();
      result.degenerate.clear();
      result.plans.clear();
      return result;
    }
    result.cycles.insert(result.cycles.end(), outcome.cycles.begin(), outcome.cycles.end());
    result.degenerate.insert(result.degenerate.end(), outcome.degenerate.begin(), outcome.degenerate.end());
    for (auto& p : outcome.plans) result.plans.push_back(std::move(p));
  }
  std::sort(result.degenerate.begin(), result.degenerate.end());
  return result;
}

}  // namespace tightcycle
