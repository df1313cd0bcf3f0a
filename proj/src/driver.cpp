#include "tightcycle/driver.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "combinatorics.hpp"
#include "tightcycle/io.hpp"
#include "tightcycle/lemmas.hpp"

namespace tightcycle {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kGreedy:
      return "greedy";
    case Provenance::kAbsorber:
      return "absorber";
    case Provenance::kFallback:
      return "fallback";
    case Provenance::kDegenerate:
      return "degenerate";
  }
  return "fallback";
}

Provenance parse_provenance(const std::string& name) {
  for (auto p : {Provenance::kGreedy, Provenance::kAbsorber, Provenance::kFallback, Provenance::kDegenerate}) {
    if (to_string(p) == name) return p;
  }
  throw InvalidArgument("unknown provenance '" + name + "'");
}

namespace {

std::string set_text(std::span<const Vertex> vs) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? "," : "") << vs[i];
  out << '}';
  return out.str();
}

}  // namespace

// --- greedy cover -----------------------------------------------------------

GreedyResult greedy_cover_to(const ColouredHypergraph& g, std::span<const Vertex> forbidden, std::size_t max_uncovered,
                             const SearchBudget& budget, int max_cycles) {
  budget.validate();
  const int n = g.order();
  std::vector<char> blocked(n, 0);
  for (Vertex v : forbidden) {
    if (v < 0 || v >= n) throw InvalidArgument("forbidden vertex " + std::to_string(v) + " out of range");
    blocked[v] = 1;
  }
  auto available = [&] { return static_cast<std::size_t>(std::count(blocked.begin(), blocked.end(), 0)); };
  GreedyResult out;
  while (available() > max_uncovered && static_cast<int>(out.cycles.size()) < max_cycles) {
    std::vector<Vertex> off;
    for (Vertex v = 0; v < n; ++v) {
      if (blocked[v]) off.push_back(v);
    }
    const auto res = longest_mono_tight_cycle(g, off, budget);
    if (res.timed_out) out.budget_spent = true;
    if (res.best.cycle.seq.size() <= 1) break;
    if (!validate_cycle_in(g, res.best.cycle, res.best.colour).valid) {
      throw InternalError("greedy extracted an invalid cycle");
    }
    for (Vertex v : res.best.cycle.seq) blocked[v] = 1;
    out.cycles.push_back(res.best);
  }
  if (static_cast<int>(out.cycles.size()) >= max_cycles && available() > max_uncovered) out.budget_spent = true;
  for (Vertex v = 0; v < n; ++v) {
    if (!blocked[v]) out.uncovered.push_back(v);
  }
  return out;
}

GreedyResult greedy_cover(const ColouredHypergraph& g, std::span<const Vertex> forbidden, const Rational& gamma,
                          const SearchBudget& budget) {
  if (gamma < 0) throw InvalidArgument("gamma must be non-negative");
  std::vector<char> blocked(g.order(), 0);
  for (Vertex v : forbidden) {
    if (v >= 0 && v < g.order()) blocked[v] = 1;
  }
  const auto available = static_cast<std::int64_t>(std::count(blocked.begin(), blocked.end(), 0));
  return greedy_cover_to(g, forbidden, static_cast<std::size_t>(floor_times(gamma, available)), budget);
}

// --- fallback ---------------------------------------------------------------

FallbackResult brute_force_partition(const ColouredHypergraph& g, std::span<const Vertex> subset, int bound,
                                     ConventionFlags flags, std::uint64_t node_limit) {
  std::vector<Vertex> vs(subset.begin(), subset.end());
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) throw InvalidArgument("repeated vertex in subset");
  for (Vertex v : vs) {
    if (v < 0 || v >= g.order()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  }
  FallbackResult out;
  const int s = static_cast<int>(vs.size());
  if (s > bound || s > 20) {
    out.over_bound = true;
    for (Vertex v : vs) out.cycles.push_back(MonoCycle{TightCycle{g.uniformity(), {v}}, 0});
    return out;
  }
  const int k = g.uniformity();
  const std::uint32_t full = s == 0 ? 0 : (1u << s) - 1;
  std::unordered_map<std::uint32_t, std::optional<MonoCycle>> cyclic;
  auto members = [&](std::uint32_t mask) {
    std::vector<Vertex> m;
    for (int i = 0; i < s; ++i) {
      if (mask >> i & 1) m.push_back(vs[i]);
    }
    return m;
  };
  auto cycle_on = [&](std::uint32_t mask) -> const std::optional<MonoCycle>& {
    auto it = cyclic.find(mask);
    if (it != cyclic.end()) return it->second;
    const int size = __builtin_popcount(mask);
    std::optional<MonoCycle> found;
    const bool edge_cycle = flags.edges_as_cycles && k == 2 && size == 2;
    if (size == 1 || size > k || edge_cycle) {
      auto r = find_spanning_mono_cycle(g, members(mask), std::nullopt, node_limit, flags);
      if (!r.complete) out.incomplete = true;
      found = r.cycle;
    }
    return cyclic.emplace(mask, std::move(found)).first->second;
  };

  std::unordered_map<std::uint32_t, std::pair<int, std::uint32_t>> memo;  // count, chosen part
  std::function<int(std::uint32_t)> solve = [&](std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second.first;
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    // candidate parts containing the lowest vertex, largest first
    std::vector<std::uint32_t> parts;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      parts.push_back(sub | low);
      if (sub == 0) break;
    }
    std::stable_sort(parts.begin(), parts.end(), [](std::uint32_t a, std::uint32_t b) {
      return __builtin_popcount(a) > __builtin_popcount(b);
    });
    int best = __builtin_popcount(mask) + 1;
    std::uint32_t choice = low;
    for (std::uint32_t part : parts) {
      const int lower = 1 + (part == mask ? 0 : 1);
      if (lower >= best) continue;
      if (!cycle_on(part)) continue;
      const int total = 1 + solve(mask ^ part);
      if (total < best) {
        best = total;
        choice = part;
      }
    }
    memo.emplace(mask, std::make_pair(best, choice));
    return best;
  };
  solve(full);
  for (std::uint32_t mask = full; mask != 0;) {
    const std::uint32_t part = memo.at(mask).second;
    out.cycles.push_back(*cycle_on(part));
    mask ^= part;
  }
  return out;
}

// --- driver -----------------------------------------------------------------

void DriverConfig::validate() const {
  if (eps <= 0 || eps > 1) throw InvalidArgument("eps must lie in (0, 1]");
  if (beta <= 0 || beta > 1) throw InvalidArgument("beta must lie in (0, 1]");
  if (gamma < 0 || gamma > 1) throw InvalidArgument("gamma must lie in [0, 1]");
  if (fallback_bound < 1) throw InvalidArgument("fallback_bound must be positive");
  if (exact_alpha_bound < 0) throw InvalidArgument("exact_alpha_bound must be non-negative");
  budget.validate();
  if (absorption) absorption->validate();
}

DriverConfig DriverConfig::defaults(int k, int r) {
  if (k < 2 || r < 1) throw InvalidArgument("need k >= 2 and r >= 1");
  DriverConfig c;
  c.eps = Rational(1, 4 * r * k);
  c.beta = Rational(1, 8);
  c.gamma = Rational(1, 8 * k);
  return c;
}

namespace {

enum class Status : char { kFree, kCycle, kCrown, kBlock, kResidue };

int crown_t_min(int k) {
  int t = 2;
  while (t * (k - 1) < k + 1) ++t;
  return t;
}

class Driver {
 public:
  Driver(const ColouredHypergraph& g, int alpha, const DriverConfig& config, DriverTrace& trace)
      : g_(g), alpha_(alpha), config_(config), trace_(trace), k_(g.uniformity()), status_(g.order(), Status::kFree) {
    absorb_ = config.absorption.value_or(AbsorptionConfig::for_density(config.eps, g.colours()));
    absorb_.seed = config.budget.seed;
  }

  PartitionCertificate run() {
    if (!spanning_shortcut()) {
      folded_first_steps();
      int j = k_;
      bool steps_ok = !absorbers_.empty();
      while (steps_ok && !low_.empty() && j <= alpha_) {
        steps_ok = step(j);
        if (steps_ok) ++j;
      }
      if (!low_.empty() && steps_ok && j > alpha_) check_emptiness();
      for (Vertex v : low_) status_[v] = Status::kResidue;
      low_.clear();
      finish_absorbers();
      fallback();
      log_block_shrinkage();
    }

    PartitionCertificate cert;
    cert.instance_digest = instance_digest(g_);
    cert.flags = config_.flags;
    cert.cycles = cycles_;
    const auto verdict = verify_certificate(g_, cert, cert.instance_digest);
    if (!verdict.accepted) throw InternalError("driver assembled an invalid certificate: " + verdict.reason);
    return cert;
  }

 private:
  struct Absorber {
    EmbeddedCrown crown;
    int step;
  };

  // A host with a spanning monochromatic cycle needs nothing else.
  bool spanning_shortcut() {
    if (g_.order() == 0) return true;
    if (!config_.spanning_shortcut) return false;
    const auto res = longest_mono_tight_cycle(g_, {}, config_.budget);
    if (static_cast<int>(res.best.cycle.seq.size()) != g_.order()) return false;
    emit(res.best, Provenance::kGreedy);
    trace_.notes.push_back("spanning cycle found before step 1");
    return true;
  }

  void emit(const MonoCycle& c, Provenance p) {
    for (Vertex v : c.cycle.seq) {
      if (status_[v] == Status::kCycle || status_[v] == Status::kCrown) {
        throw InternalError("vertex " + std::to_string(v) + " emitted twice");
      }
      status_[v] = Status::kCycle;
    }
    cycles_.push_back(CertifiedCycle{c, c.cycle.degenerate() ? Provenance::kDegenerate : p});
  }

  std::vector<Vertex> not_free() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (status_[v] != Status::kFree) out.push_back(v);
    }
    return out;
  }

  // All vertices except `allowed`.
  std::vector<Vertex> complement(const VertexSet& allowed) const {
    std::vector<char> ok(g_.order(), 0);
    for (Vertex v : allowed) ok[v] = 1;
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (!ok[v]) out.push_back(v);
    }
    return out;
  }

  int crown_order(std::size_t available) const {
    const int t_min = crown_t_min(k_);
    const int cap = static_cast<int>(available) / k_;
    if (cap < t_min) return 0;
    return std::min(cap, std::max(t_min, static_cast<int>(floor_times(config_.beta, available))));
  }

  std::optional<EmbeddedCrown> reserve_crown(int t, std::span<const Vertex> forbidden, int step) {
    if (t == 0) return std::nullopt;
    auto found = find_mono_crown(g_, t, forbidden, config_.budget);
    if (!found.found) return std::nullopt;
    for (Vertex v : found.found->crown.base) status_[v] = Status::kCrown;
    for (Vertex v : found.found->crown.rim) status_[v] = Status::kBlock;
    absorbers_.push_back(Absorber{*found.found, step});
    return found.found;
  }

  std::vector<MonoCycle> greedy(const VertexSet& region, std::size_t target) {
    auto res = greedy_cover_to(g_, complement(region), target, config_.budget);
    if (res.budget_spent) trace_.notes.push_back("greedy stopped on its budget");
    for (const auto& c : res.cycles) emit(c, Provenance::kGreedy);
    return res.cycles;
  }

  VertexSet free_vertices() const {
    VertexSet out;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (status_[v] == Status::kFree) out.push_back(v);
    }
    return out;
  }

  // Removes from the blocks every vertex that now lies in a cycle.
  void prune_blocks() {
    for (auto& b : blocks_) {
      b.erase(std::remove_if(b.begin(), b.end(), [&](Vertex v) { return status_[v] != Status::kBlock; }), b.end());
    }
  }

  std::string absorb(const std::vector<VertexSet>& parts, const VertexSet& covered) {
    if (covered.empty()) return "empty";
    AbsorbResult res;
    try {
      res = absorb_cover(g_, parts, covered, absorb_);
    } catch (const HypothesisViolation& e) {
      res.failure = AbsorbFailure{"colour-split", e.what()};
    }
    if (!res.ok()) {
      for (Vertex v : covered) status_[v] = Status::kResidue;
      return res.failure->stage;
    }
    for (const auto& c : res.cycles) emit(c, Provenance::kAbsorber);
    for (Vertex v : res.degenerate) emit(MonoCycle{TightCycle{k_, {v}}, 0}, Provenance::kDegenerate);
    prune_blocks();
    return "ok";
  }

  bool high_link(Vertex v, const std::vector<VertexSet>& parts) const {
    std::int64_t prod = 1;
    for (const auto& p : parts) prod *= static_cast<std::int64_t>(p.size());
    if (prod == 0) return false;
    const std::vector<Vertex> pin{v};
    return at_least(link_size(g_, pin, parts), config_.eps, prod);
  }

  void folded_first_steps() {
    DriverStep step;
    step.j = k_ - 1;
    const auto crown = reserve_crown(crown_order(g_.order()), {}, k_ - 1);
    if (!crown) {
      trace_.notes.push_back("no monochromatic crown for the first steps");
      step.greedy_cycles = greedy(free_vertices(), 0).size();
      const auto rest = free_vertices();
      for (Vertex v : rest) status_[v] = Status::kResidue;
      step.uncovered = rest.size();
      step.absorb_status = "empty";
      trace_.steps.push_back(step);
      return;
    }
    step.crown_vertices = crown->crown.vertices().size();
    blocks_.assign(k_ - 1, {});
    for (std::size_t i = 0; i < crown->crown.rim.size(); ++i) {
      blocks_[i % (k_ - 1)].push_back(crown->crown.rim[i]);
    }
    for (auto& b : blocks_) std::sort(b.begin(), b.end());
    initial_sizes_.assign(blocks_.begin(), blocks_.end());
    const auto target = static_cast<std::size_t>(floor_times(config_.gamma, static_cast<std::int64_t>(blocks_[0].size())));
    step.greedy_cycles = greedy(free_vertices(), target).size();
    const auto rest = free_vertices();
    VertexSet high;
    for (Vertex v : rest) (high_link(v, blocks_) ? high : low_).push_back(v);
    step.uncovered = rest.size();
    step.low_link = low_.size();
    step.high_link = high.size();
    step.absorb_status = absorb(blocks_, high);
    step.block_sizes.clear();
    for (const auto& b : blocks_) step.block_sizes.push_back(b.size());
    trace_.steps.push_back(step);
    check_state();
  }

  bool step(int j) {
    DriverStep record;
    record.j = j;
    const auto crown = reserve_crown(crown_order(low_.size()), complement(low_), j);
    if (!crown) {
      trace_.notes.push_back("no crown inside R' at step " + std::to_string(j));
      return false;
    }
    record.crown_vertices = crown->crown.vertices().size();
    VertexSet bj = crown->crown.rim;
    std::sort(bj.begin(), bj.end());
    blocks_.push_back(bj);
    initial_sizes_.push_back(bj);
    VertexSet region;
    for (Vertex v : low_) {
      if (status_[v] == Status::kFree) region.push_back(v);
    }
    const auto target = static_cast<std::size_t>(floor_times(config_.gamma, static_cast<std::int64_t>(bj.size())));
    record.greedy_cycles = greedy(region, target).size();
    VertexSet rest;
    for (Vertex v : region) {
      if (status_[v] == Status::kFree) rest.push_back(v);
    }
    record.uncovered = rest.size();
    uncovered_after_.push_back(rest.size());

    // first (k-1)-tuple of blocks with a dense link, per vertex
    std::vector<std::vector<int>> tuples;
    for_each_combination(j, k_ - 1, [&](std::span<const int> c) { tuples.emplace_back(c.begin(), c.end()); });
    std::vector<VertexSet> by_tuple(tuples.size());
    low_.clear();
    for (Vertex v : rest) {
      bool placed = false;
      for (std::size_t q = 0; q < tuples.size() && !placed; ++q) {
        std::vector<VertexSet> parts;
        for (int i : tuples[q]) parts.push_back(blocks_[i]);
        if (high_link(v, parts)) {
          by_tuple[q].push_back(v);
          placed = true;
        }
      }
      if (!placed) low_.push_back(v);
    }
    record.low_link = low_.size();
    record.high_link = rest.size() - low_.size();
    record.absorb_status = "empty";
    for (std::size_t q = 0; q < tuples.size(); ++q) {
      if (by_tuple[q].empty()) continue;
      std::vector<VertexSet> parts;
      for (int i : tuples[q]) parts.push_back(blocks_[i]);
      const auto status = absorb(parts, by_tuple[q]);
      if (record.absorb_status == "empty" || status != "ok") record.absorb_status = status;
    }
    for (const auto& b : blocks_) record.block_sizes.push_back(b.size());
    trace_.steps.push_back(record);
    check_state();
    return true;
  }

  void check_emptiness() {
    std::vector<VertexSet> parts = blocks_;
    parts.push_back(low_);
    if (std::any_of(parts.begin(), parts.end(), [](const VertexSet& b) { return b.empty(); })) {
      trace_.notes.push_back("R' nonempty after the last step; an empty block rules out a transversal");
      return;
    }
    auto res = independent_transversal(g_.host(), parts, {false});
    if (!res.transversal) {
      trace_.notes.push_back("R' nonempty after the last step; no independent transversal found");
      return;
    }
    const auto& tr = *res.transversal;
    for_each_combination(static_cast<int>(tr.size()), k_, [&](std::span<const int> c) {
      std::vector<Vertex> s;
      for (int i : c) s.push_back(tr[i]);
      if (g_.host().contains(s)) throw InternalError("transversal is not independent");
    });
    if (trace_.exact_alpha) throw InternalError("independent set larger than the exact independence number");
    VertexSet sorted = tr;
    std::sort(sorted.begin(), sorted.end());
    throw HypothesisViolation("declared alpha " + std::to_string(alpha_) + " is too small: " + set_text(sorted) +
                              " is independent");
  }

  void finish_absorbers() {
    for (auto it = absorbers_.rbegin(); it != absorbers_.rend(); ++it) {
      const auto& crown = it->crown.crown;
      std::vector<int> chosen;
      for (int i = 0; i < crown.t; ++i) {
        if (status_[crown.rim[i]] == Status::kBlock) chosen.push_back(i);
      }
      const TightCycle c = crown_absorbing_cycle(crown, chosen);
      if (!validate_cycle_in(g_, c, it->crown.colour).valid) throw InternalError("crown failed to absorb its rim");
      for (Vertex v : crown.base) status_[v] = Status::kFree;
      for (int i : chosen) status_[crown.rim[i]] = Status::kFree;
      emit(MonoCycle{c, it->crown.colour}, Provenance::kAbsorber);
    }
  }

  void fallback() {
    VertexSet residue;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (status_[v] == Status::kResidue || status_[v] == Status::kFree) {
        status_[v] = Status::kFree;
        residue.push_back(v);
      }
    }
    if (static_cast<int>(residue.size()) > config_.fallback_bound) {
      greedy(residue, static_cast<std::size_t>(config_.fallback_bound));
      residue = free_vertices();
    }
    trace_.fallback_vertices = residue.size();
    auto res = brute_force_partition(g_, residue, config_.fallback_bound, config_.flags);
    if (res.over_bound) {
      trace_.fallback_over_bound = true;
      trace_.notes.push_back("fallback bound exceeded; residue emitted as single vertices");
    }
    if (res.incomplete) trace_.notes.push_back("fallback search hit its node limit");
    for (const auto& c : res.cycles) emit(c, Provenance::kFallback);
  }

  void log_block_shrinkage() {
    for (std::size_t j = 0; j < initial_sizes_.size() && j < blocks_.size(); ++j) {
      const std::size_t lost = initial_sizes_[j].size() - blocks_[j].size();
      std::ostringstream note;
      note << "block " << j + 1 << ": " << initial_sizes_[j].size() << " -> " << blocks_[j].size();
      if (j + 1 >= static_cast<std::size_t>(k_) && j + 1 - k_ < uncovered_after_.size()) {
        note << ", lost " << lost << " against |R| = " << uncovered_after_[j + 1 - k_];
      }
      trace_.notes.push_back(note.str());
    }
  }

  void check_state() const {
    std::vector<int> hits(g_.order(), 0);
    for (const auto& b : blocks_) {
      for (Vertex v : b) {
        if (status_[v] != Status::kBlock) throw InternalError("block vertex " + std::to_string(v) + " is not reserved");
        ++hits[v];
      }
    }
    for (Vertex v : low_) {
      if (status_[v] != Status::kFree) throw InternalError("R' vertex " + std::to_string(v) + " is not free");
      ++hits[v];
    }
    for (const auto& a : absorbers_) {
      for (Vertex v : a.crown.crown.base) {
        if (status_[v] != Status::kCrown) throw InternalError("absorber vertex " + std::to_string(v) + " was used");
        ++hits[v];
      }
    }
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (hits[v] > 1) throw InternalError("driver sets overlap at vertex " + std::to_string(v));
    }
  }

  const ColouredHypergraph& g_;
  int alpha_;
  const DriverConfig& config_;
  DriverTrace& trace_;
  int k_;
  AbsorptionConfig absorb_;
  std::vector<Status> status_;
  std::vector<CertifiedCycle> cycles_;
  std::vector<Absorber> absorbers_;
  std::vector<VertexSet> blocks_;
  std::vector<VertexSet> initial_sizes_;
  std::vector<std::size_t> uncovered_after_;
  VertexSet low_;
};

}  // namespace

PartitionCertificate partition(const ColouredHypergraph& g, int alpha, const DriverConfig& config,
                               DriverTrace* trace) {
  config.validate();
  if (g.uniformity() < 2) throw InvalidArgument("partitions need uniformity at least 2");
  if (alpha < 1 && g.order() > 0) throw InvalidArgument("alpha must be positive");
  DriverTrace local;
  DriverTrace& tr = trace ? *trace : local;
  tr = DriverTrace{};
  if (g.order() <= config.exact_alpha_bound) {
    const int a = independence_number(g.host(), {config.exact_alpha_bound});
    tr.exact_alpha = a;
    if (alpha < a) {
      throw PreconditionViolation("declared alpha " + std::to_string(alpha) + " is below the independence number " +
                                  std::to_string(a));
    }
  }
  Driver driver(g, alpha, config, tr);
  return driver.run();
}

// --- power reduction --------------------------------------------------------

ColouredHypergraph power_reduce(const ColouredHypergraph& g, int p) {
  if (p < 1) throw InvalidArgument("p must be at least 1");
  const int big = g.uniformity() + p - 1;
  if (g.order() < big) throw InvalidArgument("need n >= k + p - 1");
  if (p == 1) return g;
  return clique_hypergraph(g, big);
}

PowerCertificate power_lift_back(const ColouredHypergraph& g, int p, const MonoCycle& reduced_cycle) {
  if (p < 1) throw InvalidArgument("p must be at least 1");
  const int k = g.uniformity();
  const int big = k + p - 1;
  const auto& seq = reduced_cycle.cycle.seq;
  if (seq.empty()) throw PreconditionViolation("empty cycle");
  PowerCertificate cert{k, p, reduced_cycle};
  cert.cycle.cycle.k = big;
  if (seq.size() == 1) return cert;
  if (static_cast<int>(seq.size()) <= big) {
    throw PreconditionViolation("a cycle on " + std::to_string(seq.size()) + " vertices has no " +
                                std::to_string(big) + "-windows");
  }
  const std::size_t m = seq.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Vertex> window;
    for (int j = 0; j < big; ++j) window.push_back(seq[(i + j) % m]);
    for_each_combination(big, k, [&](std::span<const int> c) {
      std::vector<Vertex> s;
      for (int x : c) s.push_back(window[x]);
      if (g.colour_of(s) != reduced_cycle.colour) {
        throw PreconditionViolation("window " + std::to_string(i) + ": " + set_text(canonical_edge(s)) +
                                    " is not an edge of colour " + std::to_string(reduced_cycle.colour));
      }
    });
  }
  return cert;
}

// --- verification -----------------------------------------------------------

CertificateVerdict verify_certificate(const ColouredHypergraph& g, const PartitionCertificate& cert,
                                      const std::string& expected_digest) {
  CertificateVerdict v;
  if (!expected_digest.empty() && cert.instance_digest != expected_digest) {
    v.reason = "certificate belongs to another instance (digest mismatch)";
    return v;
  }
  const int n = g.order();
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < cert.cycles.size(); ++i) {
    const auto& c = cert.cycles[i].cycle;
    if (c.cycle.seq.empty()) {
      v.reason = "cycle " + std::to_string(i) + " is empty";
      v.cycle = i;
      return v;
    }
    for (Vertex x : c.cycle.seq) {
      if (x < 0 || x >= n) {
        v.reason = "vertex " + std::to_string(x) + " is out of range";
        v.vertex = x;
        v.cycle = i;
        return v;
      }
      if (owner[x] >= 0) {
        v.reason = "vertex " + std::to_string(x) + " appears in cycles " + std::to_string(owner[x]) + " and " +
                   std::to_string(i);
        v.vertex = x;
        v.cycle = i;
        return v;
      }
      owner[x] = static_cast<int>(i);
    }
  }
  for (Vertex x = 0; x < n; ++x) {
    if (owner[x] < 0) {
      v.reason = "vertex " + std::to_string(x) + " is not covered";
      v.vertex = x;
      return v;
    }
  }
  for (std::size_t i = 0; i < cert.cycles.size(); ++i) {
    const auto& c = cert.cycles[i].cycle;
    if (c.cycle.degenerate()) continue;
    if (c.colour < 1 || c.colour > g.colours()) {
      v.reason = "cycle " + std::to_string(i) + " carries colour " + std::to_string(c.colour) + " outside 1.." +
                 std::to_string(g.colours());
      v.cycle = i;
      return v;
    }
    TightCycle cycle = c.cycle;
    cycle.k = g.uniformity();
    CycleVerdict cv;
    try {
      cv = validate_cycle_in(g, cycle, c.colour, cert.flags);
    } catch (const MalformedCycle& e) {
      v.reason = "cycle " + std::to_string(i) + " is malformed: " + e.what();
      v.cycle = i;
      return v;
    }
    if (!cv.valid) {
      v.reason = "cycle " + std::to_string(i) + ", window " +
                 (cv.failed_window ? std::to_string(*cv.failed_window) : std::string("?")) + ": " + cv.reason;
      v.cycle = i;
      v.window = cv.failed_window;
      return v;
    }
  }
  v.accepted = true;
  return v;
}

}  // namespace tightcycle
