#include "tightcycle/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "combinatorics.hpp"
#include "tightcycle/errors.hpp"

namespace tightcycle {

namespace {

using Mask = std::uint32_t;

/// Colour of every k-set, indexed by its vertex bitmask.
class ColourTable {
 public:
  explicit ColourTable(const ColouredHypergraph& g) : k_(g.uniformity()), table_(std::size_t{1} << g.order(), 0) {
    const auto& edges = g.host().edges();
    for (std::size_t id = 0; id < edges.size(); ++id) {
      Mask m = 0;
      for (Vertex v : edges[id]) m |= Mask{1} << v;
      table_[m] = g.colour(id);
    }
  }
  Colour operator[](Mask m) const { return table_[m]; }
  int k() const { return k_; }

 private:
  int k_;
  std::vector<Colour> table_;
};

Mask bits(std::span<const Vertex> vs) {
  Mask m = 0;
  for (Vertex v : vs) m |= Mask{1} << v;
  return m;
}

void check_enumerable(const ColouredHypergraph& g, int bound) {
  if (g.order() > bound) {
    throw SizeLimit("oracle limited to " + std::to_string(bound) + " vertices, got " + std::to_string(g.order()));
  }
}

/// Whether the cyclic sequence closes: every window through the seam has
/// colour c.
bool closes(const ColourTable& table, const std::vector<Vertex>& seq, Colour c) {
  const int k = table.k();
  const int m = static_cast<int>(seq.size());
  for (int start = m - k + 1; start < m; ++start) {
    Mask w = 0;
    for (int i = 0; i < k; ++i) w |= Mask{1} << seq[(start + i) % m];
    if (table[w] != c) return false;
  }
  return true;
}

/// Depth-first extension of seq inside `allowed`, keeping every window in
/// colour c.  on_seq sees every sequence of at least k+1 vertices and returns
/// false to stop everything.
template <typename Fn>
bool extend(const ColourTable& table, std::vector<Vertex>& seq, Mask used, Mask allowed, Colour c, int max_len,
            Fn& on_seq) {
  const int k = table.k();
  const int m = static_cast<int>(seq.size());
  if (m >= k + 1 && !on_seq(seq, used)) return false;
  if (m >= max_len) return true;
  Mask tail = 0;
  if (m >= k - 1) tail = bits(std::span<const Vertex>(seq).subspan(m - (k - 1)));
  for (Mask rest = allowed & ~used; rest; rest &= rest - 1) {
    const Vertex w = std::countr_zero(rest);
    const Mask wb = Mask{1} << w;
    if (m >= k - 1 && table[tail | wb] != c) continue;
    seq.push_back(w);
    const bool go = extend(table, seq, used | wb, allowed, c, max_len, on_seq);
    seq.pop_back();
    if (!go) return false;
  }
  return true;
}

MonoCycle make_cycle(int k, std::vector<Vertex> seq, Colour c) { return MonoCycle{TightCycle{k, std::move(seq)}, c}; }

/// Some cycle of colour c through exactly the vertices of `mask`.
std::optional<MonoCycle> cycle_on(const ColourTable& table, Mask mask, Colour c) {
  const int k = table.k();
  const Vertex s = std::countr_zero(mask);
  std::vector<Vertex> seq{s};
  std::optional<MonoCycle> found;
  auto on_seq = [&](const std::vector<Vertex>& q, Mask used) {
    if (used != mask || q[1] > q.back() || !closes(table, q, c)) return true;
    found = make_cycle(k, q, c);
    return false;
  };
  extend(table, seq, Mask{1} << s, mask, c, std::popcount(mask), on_seq);
  return found;
}

}  // namespace

void for_each_mono_tight_cycle(const ColouredHypergraph& g, int max_len, ConventionFlags flags,
                               const std::function<bool(const MonoCycle&)>& visit) {
  check_enumerable(g, kEnumerateBound);
  const int n = g.order();
  const int k = g.uniformity();
  if (max_len <= 0) max_len = n;
  const ColourTable table(g);
  auto emit = [&](const MonoCycle& mc) {
    if (!validate_cycle_in(g, mc.cycle, mc.colour, flags).valid) {
      throw InternalError("enumerated cycle fails validation");
    }
    return visit(mc);
  };
  for (Colour c = 1; c <= g.colours(); ++c) {
    for (Vertex s = 0; s < n; ++s) {
      const Mask above = ~((Mask{2} << s) - 1) & ((Mask{1} << n) - 1);
      if (k == 2 && flags.edges_as_cycles && max_len >= 2) {
        for (Mask rest = above; rest; rest &= rest - 1) {
          const Vertex w = std::countr_zero(rest);
          if (table[(Mask{1} << s) | (Mask{1} << w)] == c && !emit(make_cycle(k, {s, w}, c))) return;
        }
      }
      std::vector<Vertex> seq{s};
      bool stopped = false;
      auto on_seq = [&](const std::vector<Vertex>& q, Mask) {
        if (q[1] > q.back() || !closes(table, q, c)) return true;
        if (!emit(make_cycle(k, q, c))) {
          stopped = true;
          return false;
        }
        return true;
      };
      extend(table, seq, Mask{1} << s, above | (Mask{1} << s), c, max_len, on_seq);
      if (stopped) return;
    }
  }
}

std::vector<MonoCycle> enumerate_mono_tight_cycles(const ColouredHypergraph& g, int max_len, ConventionFlags flags) {
  std::vector<MonoCycle> out;
  for_each_mono_tight_cycle(g, max_len, flags, [&](const MonoCycle& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

std::vector<std::uint32_t> spanning_colour_masks(const ColouredHypergraph& g, ConventionFlags flags) {
  check_enumerable(g, kEnumerateBound);
  const int n = g.order();
  const int k = g.uniformity();
  const int r = g.colours();
  if (r > 31) throw InvalidArgument("spanning_colour_masks supports at most 31 colours");
  const ColourTable table(g);
  std::vector<std::uint32_t> out(std::size_t{1} << n, 0);
  const std::uint32_t all_colours = ((std::uint32_t{1} << (r + 1)) - 1) & ~std::uint32_t{1};
  for (Vertex v = 0; v < n; ++v) out[Mask{1} << v] = all_colours;
  if (k == 2 && flags.edges_as_cycles) {
    for (const auto& e : g.host().edges()) out[bits(e)] |= std::uint32_t{1} << g.colour_of(e);
  }

  // Reachable (vertex set, last k-1 vertices) states from each fixed prefix
  // of k-1 vertices, so each mask is settled without listing its cycles.
  struct State {
    Mask used;
    std::vector<Vertex> tail;
  };
  std::unordered_set<std::uint64_t> seen;
  std::vector<State> stack;
  for (Colour c = 1; c <= r; ++c) {
    for (Vertex s = 0; s < n; ++s) {
      const Mask above = ~((Mask{2} << s) - 1) & ((Mask{1} << n) - 1);
      std::vector<int> others;
      for (Mask rest = above; rest; rest &= rest - 1) others.push_back(std::countr_zero(rest));
      if (static_cast<int>(others.size()) < k) continue;
      for_each_combination(static_cast<int>(others.size()), k - 2, [&](std::span<const int> pick) {
        std::vector<Vertex> prefix{s};
        for (int i : pick) prefix.push_back(others[i]);
        std::sort(prefix.begin() + 1, prefix.end());
        do {
          seen.clear();
          stack.clear();
          stack.push_back({bits(prefix), prefix});
          while (!stack.empty()) {
            State st = std::move(stack.back());
            stack.pop_back();
            const Mask tail_bits = bits(st.tail);
            if (std::popcount(st.used) >= k + 1) {
              bool ok = true;
              for (int j = 1; j < k && ok; ++j) {
                Mask w = 0;
                for (int i = k - 1 - j; i < k - 1; ++i) w |= Mask{1} << st.tail[i];
                for (int i = 0; i < k - j; ++i) w |= Mask{1} << prefix[i];
                ok = table[w] == c;
              }
              if (ok) out[st.used] |= std::uint32_t{1} << c;
            }
            for (Mask rest = above & ~st.used; rest; rest &= rest - 1) {
              const Vertex w = std::countr_zero(rest);
              if (table[tail_bits | (Mask{1} << w)] != c) continue;
              State next{st.used | (Mask{1} << w), {}};
              next.tail.assign(st.tail.begin() + 1, st.tail.end());
              next.tail.push_back(w);
              std::uint64_t code = 0;
              for (Vertex x : next.tail) code = code * n + x;
              if (!seen.insert(code * (std::uint64_t{1} << n) + next.used).second) continue;
              stack.push_back(std::move(next));
            }
          }
        } while (std::next_permutation(prefix.begin() + 1, prefix.end()));
      });
    }
  }
  return out;
}

std::optional<MinPartition> min_partition_size(const ColouredHypergraph& g, ConventionFlags flags) {
  check_enumerable(g, kMinPartitionBound);
  const int n = g.order();
  const int r = g.colours();
  if (n == 0) return MinPartition{};
  if (flags.distinct_colours && r > 8) throw InvalidArgument("distinct-colour partitions support at most 8 colours");
  const auto cyc = spanning_colour_masks(g, flags);
  const ColourTable table(g);
  const int colour_states = flags.distinct_colours ? 1 << r : 1;
  const Mask full = (Mask{1} << n) - 1;
  constexpr int kInf = INT_MAX / 2;

  // best[rem * colour_states + used]: fewest cycles covering rem.
  std::vector<int> best((std::size_t{1} << n) * colour_states, -1);
  struct Choice {
    Mask part = 0;
    Colour colour = 0;
  };
  std::vector<Choice> choice(best.size());
  std::function<int(Mask, int)> solve = [&](Mask rem, int used) -> int {
    if (rem == 0) return 0;
    const std::size_t key = std::size_t{rem} * colour_states + used;
    if (best[key] >= 0) return best[key];
    int result = kInf;
    const Mask low = rem & (~rem + 1);
    const Mask others = rem ^ low;
    for (Mask sub = others;; sub = (sub - 1) & others) {
      const Mask part = sub | low;
      std::uint32_t colours = cyc[part];
      if (flags.distinct_colours) colours &= ~(static_cast<std::uint32_t>(used) << 1);
      for (Colour c = 1; c <= r && colours; ++c) {
        if (!(colours >> c & 1)) continue;
        const int next_used = flags.distinct_colours ? used | 1 << (c - 1) : 0;
        const int rest = solve(rem ^ part, next_used);
        if (rest + 1 < result) {
          result = rest + 1;
          choice[key] = {part, c};
        }
        if (!flags.distinct_colours) break;
      }
      if (sub == 0) break;
    }
    best[key] = result;
    return result;
  };
  if (solve(full, 0) >= kInf) return std::nullopt;

  MinPartition out;
  Mask rem = full;
  int used = 0;
  while (rem) {
    const Choice ch = choice[std::size_t{rem} * colour_states + used];
    std::vector<Vertex> vs;
    for (Mask m = ch.part; m; m &= m - 1) vs.push_back(std::countr_zero(m));
    if (vs.size() <= 2) {
      out.witness.push_back(make_cycle(g.uniformity(), vs, ch.colour));
    } else {
      auto mc = cycle_on(table, ch.part, ch.colour);
      if (!mc) throw InternalError("spanning mask without a cycle");
      out.witness.push_back(*mc);
    }
    rem ^= ch.part;
    if (flags.distinct_colours) used |= 1 << (ch.colour - 1);
  }
  out.size = static_cast<int>(out.witness.size());
  return out;
}

// --- colouring scans ----------------------------------------------------------

namespace {

/// Lexicographic k-subsets of {0..n-1} and, per vertex permutation, where
/// each edge index comes from.
struct EdgeSymmetry {
  std::vector<Mask> edge_masks;
  std::vector<std::vector<int>> sources;  // sources[p][j]: edge mapped onto j

  EdgeSymmetry(int k, int n, bool with_perms) {
    std::vector<int> index(std::size_t{1} << n, -1);
    for_each_combination(n, k, [&](std::span<const int> e) {
      index[bits(e)] = static_cast<int>(edge_masks.size());
      edge_masks.push_back(bits(e));
    });
    if (!with_perms) return;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> src(edge_masks.size());
      for (std::size_t e = 0; e < edge_masks.size(); ++e) {
        Mask image = 0;
        for (Mask m = edge_masks[e]; m; m &= m - 1) image |= Mask{1} << perm[std::countr_zero(m)];
        src[index[image]] = static_cast<int>(e);
      }
      sources.push_back(std::move(src));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  bool canonical(const std::vector<Colour>& c) const {
    for (const auto& src : sources) {
      for (std::size_t j = 0; j < c.size(); ++j) {
        const Colour a = c[src[j]];
        if (a < c[j]) return false;
        if (a > c[j]) break;
      }
    }
    return true;
  }
};

constexpr int kScanPermutationBound = 8;

}  // namespace

bool colouring_is_canonical(int k, int n, const std::vector<Colour>& colours_lex) {
  if (n > kScanPermutationBound) throw SizeLimit("canonical check limited to 8 vertices");
  const EdgeSymmetry sym(k, n, true);
  if (colours_lex.size() != sym.edge_masks.size()) throw InvalidArgument("colouring length does not match C(n, k)");
  return sym.canonical(colours_lex);
}

ScanReport colouring_scan(int k, int r, int n, ConventionFlags flags, ScanOptions options) {
  if (k < 2 || r < 1 || n < k) throw InvalidArgument("scan needs k >= 2, r >= 1 and n >= k");
  if (n > kMinPartitionBound) throw SizeLimit("scan limited to " + std::to_string(kMinPartitionBound) + " vertices");
  if (options.prune && n > kScanPermutationBound) {
    throw SizeLimit("pruned scan limited to " + std::to_string(kScanPermutationBound) + " vertices");
  }
  const EdgeSymmetry sym(k, n, options.prune);
  const std::size_t edges = sym.edge_masks.size();

  std::uint64_t total = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < edges && !overflow; ++i) {
    if (total > options.max_colourings / static_cast<std::uint64_t>(r)) overflow = true;
    total *= static_cast<std::uint64_t>(r);
  }
  const std::uint64_t limit = overflow ? options.max_colourings : std::min(total, options.max_colourings);

  struct Partial {
    std::uint64_t solved = 0;
    int worst = -1;  // INT_MAX for "no admissible partition"
    std::uint64_t witness = 0;
  };
  const int threads = std::max(1, options.threads);
  std::vector<Partial> partials(threads);
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kChunk = 256;
  auto work = [&](int t) {
    Partial& p = partials[t];
    std::vector<Colour> colours(edges);
    while (true) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= limit) return;
      const std::uint64_t end = std::min(limit, begin + kChunk);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        std::uint64_t x = idx;
        for (std::size_t j = edges; j-- > 0;) {
          colours[j] = static_cast<Colour>(x % r) + 1;
          x /= r;
        }
        if (options.prune && !sym.canonical(colours)) continue;
        ++p.solved;
        const auto g = ColouredHypergraph::complete(k, n, r, colours);
        const auto mp = min_partition_size(g, flags);
        const int value = mp ? mp->size : INT_MAX;
        if (value > p.worst || (value == p.worst && idx < p.witness)) {
          p.worst = value;
          p.witness = idx;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();

  ScanReport report{k, r, n, flags, options.prune, limit, 0, std::nullopt, {}, !overflow && limit == total};
  int worst = -1;
  std::uint64_t witness = 0;
  for (const auto& p : partials) {
    report.solved += p.solved;
    if (p.worst > worst || (p.worst == worst && p.witness < witness)) {
      worst = p.worst;
      witness = p.witness;
    }
  }
  if (worst >= 0) {
    if (worst != INT_MAX) report.worst = worst;
    report.witness.resize(edges);
    for (std::size_t j = edges; j-- > 0;) {
      report.witness[j] = static_cast<Colour>(witness % r) + 1;
      witness /= r;
    }
  }
  return report;
}

// --- certificate mutations ------------------------------------------------------

std::vector<CertificateMutation> certificate_mutations(const ColouredHypergraph& g, const PartitionCertificate& cert) {
  std::vector<CertificateMutation> out;
  const int r = g.colours();
  for (std::size_t i = 0; i < cert.cycles.size(); ++i) {
    PartitionCertificate m = cert;
    m.cycles[i].cycle.cycle.seq.pop_back();
    out.push_back({"delete-vertex", std::move(m)});

    m = cert;
    const auto& donor = cert.cycles[(i + 1) % cert.cycles.size()].cycle.cycle.seq;
    m.cycles[i].cycle.cycle.seq.push_back(donor.front());
    out.push_back({"duplicate-vertex", std::move(m)});

    if (!cert.cycles[i].cycle.cycle.degenerate()) {
      m = cert;
      Colour& c = m.cycles[i].cycle.colour;
      c = r >= 2 ? c % r + 1 : r + 1;
      out.push_back({"colour-flip", std::move(m)});
    }
  }
  if (!cert.cycles.empty()) {
    PartitionCertificate m = cert;
    m.cycles.erase(m.cycles.begin());
    out.push_back({"drop-cycle", std::move(m)});
  }
  PartitionCertificate m = cert;
  m.instance_digest = m.instance_digest.empty() ? "0" : m.instance_digest.substr(1) + "x";
  out.push_back({"digest", std::move(m)});
  return out;
}

}  // namespace tightcycle
