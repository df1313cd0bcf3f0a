#include "tightcycle/search.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_set>

#include "tightcycle/errors.hpp"

namespace tightcycle {

void SearchBudget::validate() const {
  if (node_limit == 0) throw InvalidArgument("node limit must be positive");
  if (!(time_limit > 0)) throw InvalidArgument("time limit must be positive");
  if (seed == 0) throw InvalidArgument("seed must be positive");
}

BudgetMeter::BudgetMeter(const SearchBudget& budget)
    : limit_(budget.node_limit),
      deadline_(std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(std::min(budget.time_limit, 1e7)))) {}

namespace {

using Window = std::array<Vertex, kMaxUniformity>;

// node cap for the longest-cycle search above the exact bound
constexpr std::uint64_t kHeuristicNodes = 200'000;

// Colour of the k-set made of seq[from..from+k-1] taken cyclically mod m.
Colour window_colour(const ColouredHypergraph& g, const std::vector<Vertex>& seq, std::size_t from, std::size_t m) {
  const int k = g.uniformity();
  Window w{};
  for (int j = 0; j < k; ++j) w[j] = seq[(from + j) % m];
  return g.colour_of(std::span<const Vertex>(w.data(), k));
}

// Checks the k-1 windows that wrap around the end of a closed sequence.
bool closes(const ColouredHypergraph& g, const std::vector<Vertex>& seq, Colour colour) {
  const int k = g.uniformity();
  const std::size_t m = seq.size();
  for (std::size_t from = m - k + 1; from < m; ++from) {
    if (window_colour(g, seq, from, m) != colour) return false;
  }
  return true;
}

// Extends seq by v if the newest window is an edge of the branch colour;
// the first complete window fixes the colour when `colour` is 0.
bool window_ok(const ColouredHypergraph& g, std::vector<Vertex>& seq, Colour& colour) {
  const int k = g.uniformity();
  if (static_cast<int>(seq.size()) < k) return true;
  const Colour c = g.colour_of(std::span<const Vertex>(seq.data() + seq.size() - k, k));
  if (c == 0) return false;
  if (colour == 0) {
    colour = c;
    return true;
  }
  return c == colour;
}

}  // namespace

// --- longest monochromatic tight cycle --------------------------------------

namespace {

class LongestSearch {
 public:
  LongestSearch(const ColouredHypergraph& g, std::vector<char> allowed, const SearchBudget& budget)
      : g_(g), k_(g.uniformity()), allowed_(std::move(allowed)), used_(g.order(), 0), meter_(budget) {}

  void run() {
    const int n = g_.order();
    for (Vertex s = 0; s < n && !meter_.exhausted(); ++s) {
      if (!allowed_[s]) continue;
      int room = 0;
      for (Vertex v = s; v < n; ++v) room += allowed_[v];
      if (room <= best_len_ || room < k_ + 1) break;
      start_ = s;
      seq_.assign(1, s);
      used_[s] = 1;
      extend(0, room - 1);
      used_[s] = 0;
    }
  }

  const std::vector<Vertex>& best() const { return best_; }
  Colour best_colour() const { return best_colour_; }
  const BudgetMeter& meter() const { return meter_; }

 private:
  void extend(Colour colour, int remaining) {
    if (!meter_.charge()) return;
    const int m = static_cast<int>(seq_.size());
    if (m >= k_ + 1 && m > best_len_ && seq_[1] < seq_.back() && closes(g_, seq_, colour)) {
      best_ = seq_;
      best_len_ = m;
      best_colour_ = colour;
    }
    if (m + remaining <= best_len_) return;
    for (Vertex v = start_ + 1; v < g_.order(); ++v) {
      if (!allowed_[v] || used_[v]) continue;
      seq_.push_back(v);
      Colour c = colour;
      if (window_ok(g_, seq_, c)) {
        used_[v] = 1;
        extend(c, remaining - 1);
        used_[v] = 0;
      }
      seq_.pop_back();
      if (meter_.exhausted() || m + remaining <= best_len_) return;
    }
  }

  const ColouredHypergraph& g_;
  int k_;
  std::vector<char> allowed_;
  std::vector<char> used_;
  BudgetMeter meter_;
  Vertex start_ = 0;
  std::vector<Vertex> seq_;
  std::vector<Vertex> best_;
  int best_len_ = 1;
  Colour best_colour_ = 0;
};

}  // namespace

LongestCycleResult longest_mono_tight_cycle(const ColouredHypergraph& g, std::span<const Vertex> forbidden,
                                            const SearchBudget& budget, int exact_bound) {
  budget.validate();
  const int n = g.order();
  std::vector<char> allowed(n, 1);
  for (Vertex v : forbidden) {
    if (v >= 0 && v < n) allowed[v] = 0;
  }
  LongestCycleResult result;
  result.best.cycle.k = g.uniformity();
  const auto first = std::find(allowed.begin(), allowed.end(), 1);
  if (first == allowed.end()) {
    result.exact = true;
    return result;
  }
  const int available = static_cast<int>(std::count(allowed.begin(), allowed.end(), 1));
  SearchBudget effective = budget;
  if (available > exact_bound) effective.node_limit = std::min<std::uint64_t>(budget.node_limit, kHeuristicNodes);
  LongestSearch search(g, allowed, effective);
  search.run();
  result.nodes = search.meter().nodes();
  result.timed_out = search.meter().timed_out();
  result.exact = !search.meter().exhausted();
  if (search.best().empty()) {
    result.best.cycle.seq = {static_cast<Vertex>(first - allowed.begin())};
    result.best.colour = 0;
  } else {
    result.best.cycle.seq = search.best();
    result.best.colour = search.best_colour();
  }
  return result;
}

// --- spanning cycle ---------------------------------------------------------

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : key) h = (h ^ std::hash<std::uint64_t>{}(x)) * 0x100000001b3ULL;
    return h;
  }
};

class SpanningSearch {
 public:
  SpanningSearch(const ColouredHypergraph& g, std::vector<Vertex> vertices, Colour colour, std::uint64_t node_limit)
      : g_(g), k_(g.uniformity()), verts_(std::move(vertices)), fixed_colour_(colour),
        meter_(SearchBudget{node_limit, 1e9, 1}) {
    used_.assign(verts_.size(), 0);
  }

  std::optional<std::vector<Vertex>> run() {
    used_[0] = 1;
    seq_.assign(1, verts_[0]);
    idx_.assign(1, 0);
    if (extend(fixed_colour_)) return seq_;
    return std::nullopt;
  }

  Colour colour() const { return found_colour_; }
  bool exhausted() const { return meter_.exhausted(); }

 private:
  std::vector<std::uint64_t> state_key(Colour colour) const {
    // used mask, the head that the closing windows need, the tail, the colour
    std::vector<std::uint64_t> key;
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < used_.size(); ++i) mask |= static_cast<std::uint64_t>(used_[i]) << (i % 64);
    key.push_back(mask);
    key.push_back(static_cast<std::uint64_t>(colour));
    const std::size_t head = std::max(k_ - 1, 2);
    for (std::size_t i = 0; i < std::min(head, idx_.size()); ++i) key.push_back(idx_[i]);
    key.push_back(~std::uint64_t{0});
    for (std::size_t i = idx_.size() - std::min<std::size_t>(k_ - 1, idx_.size()); i < idx_.size(); ++i) {
      key.push_back(idx_[i]);
    }
    return key;
  }

  bool extend(Colour colour) {
    if (!meter_.charge()) return false;
    const std::size_t m = seq_.size();
    if (m == verts_.size()) {
      if (seq_[1] < seq_.back() && closes(g_, seq_, colour)) {
        found_colour_ = colour;
        return true;
      }
      return false;
    }
    const bool memo = verts_.size() <= 64 && static_cast<int>(m) >= k_;
    std::vector<std::uint64_t> key;
    if (memo) {
      key = state_key(colour);
      if (dead_.count(key)) return false;
    }
    for (std::size_t i = 1; i < verts_.size(); ++i) {
      if (used_[i]) continue;
      seq_.push_back(verts_[i]);
      Colour c = colour;
      if (window_ok(g_, seq_, c)) {
        used_[i] = 1;
        idx_.push_back(i);
        if (extend(c)) return true;
        idx_.pop_back();
        used_[i] = 0;
      }
      seq_.pop_back();
      if (meter_.exhausted()) return false;
    }
    if (memo) dead_.insert(std::move(key));
    return false;
  }

  const ColouredHypergraph& g_;
  int k_;
  std::vector<Vertex> verts_;
  Colour fixed_colour_;
  BudgetMeter meter_;
  std::vector<char> used_;
  std::vector<Vertex> seq_;
  std::vector<std::uint64_t> idx_;
  Colour found_colour_ = 0;
  std::unordered_set<std::vector<std::uint64_t>, VectorHash> dead_;
};

}  // namespace

SpanningCycleResult find_spanning_mono_cycle(const ColouredHypergraph& g, std::span<const Vertex> vertices,
                                             std::optional<Colour> colour, std::uint64_t node_limit,
                                             ConventionFlags flags) {
  const int k = g.uniformity();
  std::vector<Vertex> vs(vertices.begin(), vertices.end());
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) throw InvalidArgument("repeated vertex in span");
  for (Vertex v : vs) {
    if (v < 0 || v >= g.order()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  }
  if (colour && (*colour < 1 || *colour > g.colours())) throw InvalidArgument("unknown colour");
  SpanningCycleResult result;
  const auto m = static_cast<int>(vs.size());
  if (m == 0) return result;
  if (m == 1) {
    result.cycle = MonoCycle{TightCycle{k, vs}, colour.value_or(0)};
    return result;
  }
  if (m <= k) {
    if (flags.edges_as_cycles && k == 2 && m == 2) {
      const Colour c = g.colour_of(vs);
      if (c != 0 && (!colour || *colour == c)) result.cycle = MonoCycle{TightCycle{k, vs}, c};
    }
    return result;
  }
  SpanningSearch search(g, vs, colour.value_or(0), node_limit);
  if (auto seq = search.run()) {
    result.cycle = MonoCycle{TightCycle{k, *seq}, search.colour()};
  } else {
    result.complete = !search.exhausted();
  }
  return result;
}

// --- crowns -----------------------------------------------------------------

namespace {

// Kuhn's augmenting-path matching of slots to candidate vertices.
bool match_slots(const std::vector<std::vector<Vertex>>& candidates, int n, std::vector<Vertex>& assignment) {
  std::vector<int> owner(n, -1);
  std::function<bool(int, std::vector<char>&)> augment = [&](int slot, std::vector<char>& seen) {
    for (Vertex v : candidates[slot]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (owner[v] < 0 || augment(owner[v], seen)) {
        owner[v] = slot;
        return true;
      }
    }
    return false;
  };
  for (std::size_t slot = 0; slot < candidates.size(); ++slot) {
    std::vector<char> seen(n, 0);
    if (!augment(static_cast<int>(slot), seen)) return false;
  }
  assignment.assign(candidates.size(), -1);
  for (Vertex v = 0; v < n; ++v) {
    if (owner[v] >= 0) assignment[owner[v]] = v;
  }
  return true;
}

class CrownSearch {
 public:
  CrownSearch(const ColouredHypergraph& g, int t, std::vector<char> allowed, const SearchBudget& budget)
      : g_(g), k_(g.uniformity()), t_(t), m_(t * (g.uniformity() - 1)), allowed_(std::move(allowed)),
        used_(g.order(), 0), meter_(budget) {}

  std::optional<EmbeddedCrown> run() {
    const int n = g_.order();
    for (Vertex s = 0; s < n && !meter_.exhausted(); ++s) {
      if (!allowed_[s]) continue;
      int room = 0;
      for (Vertex v = s; v < n; ++v) room += allowed_[v];
      if (room < m_) break;
      start_ = s;
      seq_.assign(1, s);
      used_[s] = 1;
      const bool hit = extend(0);
      used_[s] = 0;
      if (hit) return found_;
    }
    return std::nullopt;
  }

  const BudgetMeter& meter() const { return meter_; }

 private:
  bool extend(Colour colour) {
    if (!meter_.charge()) return false;
    if (static_cast<int>(seq_.size()) == m_) {
      return seq_[1] < seq_.back() && closes(g_, seq_, colour) && place_rim(colour);
    }
    for (Vertex v = start_ + 1; v < g_.order(); ++v) {
      if (!allowed_[v] || used_[v]) continue;
      seq_.push_back(v);
      Colour c = colour;
      if (window_ok(g_, seq_, c)) {
        used_[v] = 1;
        const bool hit = extend(c);
        used_[v] = 0;
        if (hit) return true;
      }
      seq_.pop_back();
      if (meter_.exhausted()) return false;
    }
    return false;
  }

  // Tries every rotation by less than k-1 in both directions of the base.
  bool place_rim(Colour colour) {
    for (int dir = 0; dir < 2; ++dir) {
      for (int shift = 0; shift < k_ - 1; ++shift) {
        std::vector<Vertex> base(m_);
        for (int p = 0; p < m_; ++p) {
          base[p] = dir == 0 ? seq_[(p + shift) % m_] : seq_[((m_ - p + shift) % m_ + m_) % m_];
        }
        std::vector<std::vector<Vertex>> candidates(t_);
        bool viable = true;
        for (int i = 0; i < t_ && viable; ++i) {
          for (Vertex u = 0; u < g_.order(); ++u) {
            if (!allowed_[u] || used_[u]) continue;
            bool ok = true;
            for (int j = 0; j < k_ && ok; ++j) {
              Window w{};
              w[0] = u;
              for (int l = 0; l < k_ - 1; ++l) w[l + 1] = base[((k_ - 1) * i + j + l) % m_];
              ok = g_.colour_of(std::span<const Vertex>(w.data(), k_)) == colour;
            }
            if (ok) candidates[i].push_back(u);
          }
          viable = !candidates[i].empty();
        }
        std::vector<Vertex> rim;
        if (viable && match_slots(candidates, g_.order(), rim)) {
          found_ = EmbeddedCrown{Crown{k_, t_, base, rim}, colour};
          return true;
        }
      }
    }
    return false;
  }

  const ColouredHypergraph& g_;
  int k_;
  int t_;
  int m_;
  std::vector<char> allowed_;
  std::vector<char> used_;
  BudgetMeter meter_;
  Vertex start_ = 0;
  std::vector<Vertex> seq_;
  EmbeddedCrown found_;
};

}  // namespace

CrownSearchResult find_mono_crown(const ColouredHypergraph& g, int t, std::span<const Vertex> forbidden,
                                  const SearchBudget& budget) {
  budget.validate();
  const int k = g.uniformity();
  if (k < 2 || t < 2 || t * (k - 1) < k + 1) {
    throw InvalidArgument("no crown of order " + std::to_string(t) + " for k = " + std::to_string(k));
  }
  std::vector<char> allowed(g.order(), 1);
  for (Vertex v : forbidden) {
    if (v >= 0 && v < g.order()) allowed[v] = 0;
  }
  CrownSearchResult result;
  const int available = static_cast<int>(std::count(allowed.begin(), allowed.end(), 1));
  if (available < t * k) return result;
  CrownSearch search(g, t, std::move(allowed), budget);
  result.found = search.run();
  result.exhausted = search.meter().exhausted();
  result.nodes = search.meter().nodes();
  return result;
}

bool crown_embedding_valid(const ColouredHypergraph& g, const EmbeddedCrown& embedded) {
  const Crown& c = embedded.crown;
  if (c.k != g.uniformity() || static_cast<int>(c.base.size()) != c.t * (c.k - 1) ||
      static_cast<int>(c.rim.size()) != c.t) {
    return false;
  }
  auto vs = c.vertices();
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;
  if (!vs.empty() && (vs.front() < 0 || vs.back() >= g.order())) return false;
  for (const auto& e : c.edges()) {
    if (g.colour_of(e) != embedded.colour) return false;
  }
  return true;
}

// --- connectors -------------------------------------------------------------

namespace {

class ConnectSearch {
 public:
  ConnectSearch(const LinkGraph& h, std::vector<int> part_of, std::vector<char> blocked, int internal,
                int first_part, std::vector<Vertex> tail, const SearchBudget& budget)
      : h_(h), big_k_(h.uniformity), part_of_(std::move(part_of)), blocked_(std::move(blocked)),
        internal_(internal), first_part_(first_part), tail_(std::move(tail)), meter_(budget) {
    for (const auto& e : h_.edges) edges_.insert(e);
  }

  std::optional<std::vector<Vertex>> run(std::vector<Vertex> head) {
    seq_ = std::move(head);
    if (extend(0)) return seq_;
    return std::nullopt;
  }

  const BudgetMeter& meter() const { return meter_; }

 private:
  struct EdgeHash {
    std::size_t operator()(const Edge& e) const {
      std::size_t h = 0;
      for (Vertex v : e) h = h * 1000003u + static_cast<std::size_t>(v);
      return h;
    }
  };

  bool last_window_ok() const {
    if (static_cast<int>(seq_.size()) < big_k_) return true;
    Edge w(seq_.end() - big_k_, seq_.end());
    std::sort(w.begin(), w.end());
    return edges_.count(w) > 0;
  }

  bool extend(int placed) {
    if (!meter_.charge()) return false;
    if (placed == internal_) {
      const std::size_t before = seq_.size();
      bool ok = true;
      for (Vertex v : tail_) {
        seq_.push_back(v);
        if (!last_window_ok()) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
      seq_.resize(before);
      return false;
    }
    const int part = (first_part_ + static_cast<int>(seq_.size())) % big_k_;
    for (Vertex v : h_.parts[part]) {
      if (blocked_[v]) continue;
      seq_.push_back(v);
      if (last_window_ok()) {
        blocked_[v] = 1;
        const bool hit = extend(placed + 1);
        blocked_[v] = 0;
        if (hit) return true;
      }
      seq_.pop_back();
      if (meter_.exhausted()) return false;
    }
    return false;
  }

  const LinkGraph& h_;
  int big_k_;
  std::vector<int> part_of_;
  std::vector<char> blocked_;
  int internal_;
  int first_part_;
  std::vector<Vertex> tail_;
  BudgetMeter meter_;
  std::vector<Vertex> seq_;
  std::unordered_set<Edge, EdgeHash> edges_;
};

}  // namespace

ConnectResult connect(const LinkGraph& h, std::span<const Vertex> e, std::span<const Vertex> f,
                      std::span<const Vertex> avoid, const SearchBudget& budget, ConnectOptions options) {
  budget.validate();
  const int big_k = h.uniformity;
  if (big_k < 1 || static_cast<int>(h.parts.size()) != big_k) {
    throw InvalidArgument("connect needs a partite link graph with one part per vertex of an edge");
  }
  if (static_cast<int>(e.size()) != big_k - 1 || static_cast<int>(f.size()) != big_k - 1) {
    throw InvalidArgument("connect endpoints must have " + std::to_string(big_k - 1) + " vertices");
  }
  int top = 0;
  for (const auto& part : h.parts) {
    for (Vertex v : part) top = std::max(top, v + 1);
  }
  for (Vertex v : e) top = std::max(top, v + 1);
  for (Vertex v : f) top = std::max(top, v + 1);
  for (Vertex v : avoid) top = std::max(top, v + 1);

  std::vector<int> part_of(top, -1);
  for (int p = 0; p < big_k; ++p) {
    for (Vertex v : h.parts[p]) part_of[v] = p;
  }
  std::vector<char> blocked(top, 0);
  for (Vertex v : avoid) blocked[v] = 1;
  for (Vertex v : e) {
    if (blocked[v]) throw InvalidArgument("start set meets the avoided vertices at " + std::to_string(v));
  }
  for (Vertex v : f) {
    if (blocked[v]) throw InvalidArgument("end set meets the avoided vertices at " + std::to_string(v));
  }

  // orders a (K-1)-set along the parts following its missing part
  auto ordered = [&](std::span<const Vertex> s, const char* name) {
    std::vector<Vertex> by_part(big_k, -1);
    for (Vertex v : s) {
      const int p = part_of[v];
      if (p < 0 || by_part[p] >= 0) throw InvalidArgument(std::string(name) + " set is not partite");
      by_part[p] = v;
    }
    const int missing = static_cast<int>(std::find(by_part.begin(), by_part.end(), -1) - by_part.begin());
    std::vector<Vertex> out;
    for (int j = 1; j < big_k; ++j) out.push_back(by_part[(missing + j) % big_k]);
    return std::make_pair(missing, out);
  };
  const auto [miss_e, head] = ordered(e, "start");
  const auto [miss_f, tail] = ordered(f, "end");
  const int type = ((miss_f - miss_e) % big_k + big_k) % big_k;
  const int length = options.length.value_or(prescribed_length(big_k, type));
  if (((length - type) % big_k + big_k) % big_k != 0) {
    throw InvalidArgument("length " + std::to_string(length) + " is incompatible with type difference " +
                          std::to_string(type));
  }
  const int internal = length + big_k - 1 - 2 * (big_k - 1);
  if (internal < 0) throw InvalidArgument("length " + std::to_string(length) + " is too short to join disjoint ends");
  for (Vertex v : e) {
    if (std::find(f.begin(), f.end(), v) != f.end()) throw InvalidArgument("start and end sets overlap");
  }

  auto codegree = [&](std::span<const Vertex> s) {
    std::int64_t count = 0;
    for (const auto& edge : h.edges) {
      if (std::includes(edge.begin(), edge.end(), s.begin(), s.end())) ++count;
    }
    return count;
  };
  ConnectResult result;
  const Edge se = canonical_edge(e), sf = canonical_edge(f);
  if (codegree(se) < options.codegree_floor || codegree(sf) < options.codegree_floor) return result;

  for (Vertex v : e) blocked[v] = 1;
  for (Vertex v : f) blocked[v] = 1;
  const int first_part = (miss_e + 1) % big_k;
  ConnectSearch search(h, part_of, blocked, internal, first_part, tail, budget);
  if (auto seq = search.run(head)) result.path = TightPath{big_k, std::move(*seq)};
  result.exhausted = search.meter().exhausted();
  return result;
}

}  // namespace tightcycle
