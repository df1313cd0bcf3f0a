#include "tightcycle/tight.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "tightcycle/errors.hpp"
#include "tightcycle/search.hpp"

namespace tightcycle {

std::vector<Vertex> canonical_rotation(std::span<const Vertex> seq) {
  if (seq.size() <= 2) {
    std::vector<Vertex> out(seq.begin(), seq.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  const std::size_t m = seq.size();
  const std::size_t start = std::min_element(seq.begin(), seq.end()) - seq.begin();
  std::vector<Vertex> out;
  out.reserve(m);
  const bool forward = seq[(start + 1) % m] < seq[(start + m - 1) % m];
  for (std::size_t i = 0; i < m; ++i) {
    out.push_back(forward ? seq[(start + i) % m] : seq[(start + m - i) % m]);
  }
  return out;
}

namespace {

void check_structure(const ColouredHypergraph& g, const TightCycle& c, ConventionFlags flags) {
  const int k = g.uniformity();
  if (c.k != k) {
    throw InvalidArgument("cycle uniformity " + std::to_string(c.k) + " differs from host uniformity " +
                          std::to_string(k));
  }
  if (c.seq.empty()) throw MalformedCycle("empty cycle");
  std::vector<char> seen(g.order(), 0);
  for (std::size_t i = 0; i < c.seq.size(); ++i) {
    const Vertex v = c.seq[i];
    if (v < 0 || v >= g.order()) {
      throw MalformedCycle("vertex " + std::to_string(v) + " at position " + std::to_string(i) + " out of range");
    }
    if (seen[v]) throw MalformedCycle("vertex " + std::to_string(v) + " repeated in cycle");
    seen[v] = 1;
  }
  const auto m = static_cast<int>(c.seq.size());
  const bool single_edge = flags.edges_as_cycles && k == 2 && m == 2;
  if (m >= 2 && m <= k && !single_edge) {
    throw MalformedCycle("cycle on " + std::to_string(m) + " vertices: non-degenerate cycles need at least " +
                         std::to_string(k + 1));
  }
}

CycleVerdict check_windows(const ColouredHypergraph& g, const TightCycle& c, std::optional<Colour> want) {
  CycleVerdict verdict;
  const int k = g.uniformity();
  const std::size_t m = c.seq.size();
  if (m == 1) {
    verdict.valid = true;
    verdict.colour = want.value_or(0);
    return verdict;
  }
  // a single edge under the graph convention has one window, not two
  const std::size_t windows = m == 2 ? 1 : m;
  std::array<Vertex, kMaxUniformity> window{};
  Colour common = want.value_or(0);
  for (std::size_t i = 0; i < windows; ++i) {
    for (int j = 0; j < k; ++j) window[j] = c.seq[(i + j) % m];
    const Colour col = g.colour_of(std::span<const Vertex>(window.data(), k));
    if (col == 0) {
      verdict.failed_window = i;
      verdict.reason = "window at position " + std::to_string(i) + " is not an edge";
      return verdict;
    }
    if (common == 0) common = col;
    if (col != common) {
      verdict.failed_window = i;
      verdict.reason = "window at position " + std::to_string(i) + " has colour " + std::to_string(col) +
                       ", expected " + std::to_string(common);
      return verdict;
    }
  }
  verdict.valid = true;
  verdict.colour = common;
  return verdict;
}

}  // namespace

CycleVerdict validate_cycle(const ColouredHypergraph& g, const TightCycle& c, ConventionFlags flags) {
  check_structure(g, c, flags);
  return check_windows(g, c, std::nullopt);
}

CycleVerdict validate_cycle_in(const ColouredHypergraph& g, const TightCycle& c, Colour colour,
                               ConventionFlags flags) {
  if (colour < 1 || colour > g.colours()) {
    throw InvalidArgument("colour " + std::to_string(colour) + " outside [1, " + std::to_string(g.colours()) + "]");
  }
  check_structure(g, c, flags);
  return check_windows(g, c, colour);
}

std::optional<std::size_t> first_bad_path_window(const ColouredHypergraph& g, const TightPath& p, Colour colour) {
  const int k = g.uniformity();
  if (p.seq.size() < static_cast<std::size_t>(k)) return std::nullopt;
  for (std::size_t i = 0; i + k <= p.seq.size(); ++i) {
    const Colour col = g.colour_of(std::span<const Vertex>(p.seq.data() + i, k));
    if (col == 0 || (colour != 0 && col != colour)) return i;
  }
  return std::nullopt;
}

// --- types ------------------------------------------------------------------

int tp(std::span<const Vertex> e, const VertexPartition& p) {
  const int k = static_cast<int>(p.size());
  if (static_cast<int>(e.size()) != k - 1) {
    throw InvalidArgument("type needs a set of size " + std::to_string(k - 1) + ", got " + std::to_string(e.size()));
  }
  std::vector<char> hit(k, 0);
  for (Vertex v : e) {
    const int b = p.block_of(v);
    if (b < 0) throw InvalidArgument("vertex " + std::to_string(v) + " lies in no block");
    if (hit[b]) throw InvalidArgument("set meets block " + std::to_string(b + 1) + " twice");
    hit[b] = 1;
  }
  return static_cast<int>(std::find(hit.begin(), hit.end(), 0) - hit.begin()) + 1;
}

int tp_pair(std::span<const Vertex> e, std::span<const Vertex> f, const VertexPartition& p) {
  const int k = static_cast<int>(p.size());
  return ((tp(f, p) - tp(e, p)) % k + k) % k;
}

int prescribed_length(int k, int type_pair) {
  if (type_pair < 0 || type_pair >= k) throw InvalidArgument("type difference outside [0, k-1]");
  return type_pair >= 2 ? k + type_pair : 2 * k + type_pair;
}

int prescribed_length(std::span<const Vertex> e, std::span<const Vertex> f, const VertexPartition& p) {
  return prescribed_length(static_cast<int>(p.size()), tp_pair(e, f, p));
}

// --- crowns -----------------------------------------------------------------

std::vector<Edge> Crown::base_edges() const {
  const int m = static_cast<int>(base.size());
  std::vector<Edge> out;
  for (int i = 0; i < m; ++i) {
    Edge e;
    for (int j = 0; j < k; ++j) e.push_back(base[(i + j) % m]);
    out.push_back(canonical_edge(e));
  }
  return out;
}

std::vector<Edge> Crown::rim_edges_of(int i) const {
  const int m = static_cast<int>(base.size());
  std::vector<Edge> out;
  for (int j = 0; j < k; ++j) {
    Edge e{rim[i]};
    for (int l = 0; l < k - 1; ++l) e.push_back(base[((k - 1) * i + j + l) % m]);
    out.push_back(canonical_edge(e));
  }
  return out;
}

std::vector<Edge> Crown::rim_edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < t; ++i) {
    auto part = rim_edges_of(i);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Edge> Crown::edges() const {
  auto out = base_edges();
  auto rims = rim_edges();
  out.insert(out.end(), rims.begin(), rims.end());
  return out;
}

std::vector<Vertex> Crown::vertices() const {
  std::vector<Vertex> out = base;
  out.insert(out.end(), rim.begin(), rim.end());
  return out;
}

Crown build_crown(int k, int t) {
  if (k < 2) throw InvalidArgument("crowns need k >= 2");
  if (t < 2) throw InvalidArgument("crowns need t >= 2");
  if (t * (k - 1) < k + 1) {
    throw InvalidArgument("crown base of " + std::to_string(t * (k - 1)) + " vertices is too short for k = " +
                          std::to_string(k));
  }
  Crown c{k, t, {}, {}};
  const int m = t * (k - 1);
  for (int v = 0; v < m; ++v) c.base.push_back(v);
  for (int i = 0; i < t; ++i) c.rim.push_back(m + i);
  return c;
}

ColouredHypergraph crown_hypergraph(const Crown& crown) {
  auto edges = crown.edges();
  std::vector<Colour> ones(edges.size(), 1);
  const auto vs = crown.vertices();
  const int n = vs.empty() ? 0 : *std::max_element(vs.begin(), vs.end()) + 1;
  return ColouredHypergraph(crown.k, n, 1, std::move(edges), std::move(ones));
}

TightCycle crown_absorbing_cycle(const Crown& crown, std::span<const int> chosen) {
  const int k = crown.k;
  const int m = static_cast<int>(crown.base.size());
  std::vector<int> after(m, -1);
  for (int i : chosen) {
    if (i < 0 || i >= crown.t) throw InvalidArgument("rim index " + std::to_string(i) + " out of range");
    const int slot = ((k - 1) * i + k - 2) % m;
    if (after[slot] >= 0) throw InvalidArgument("rim index " + std::to_string(i) + " chosen twice");
    after[slot] = i;
  }
  TightCycle c{k, {}};
  for (int p = 0; p < m; ++p) {
    c.seq.push_back(crown.base[p]);
    if (after[p] >= 0) c.seq.push_back(crown.rim[after[p]]);
  }
  return c;
}

AbsorberReport absorbs(const ColouredHypergraph& g, std::span<const Vertex> a, std::span<const Vertex> b,
                       AbsorbOptions options) {
  std::unordered_set<Vertex> in_a(a.begin(), a.end());
  for (Vertex v : b) {
    if (in_a.count(v)) throw InvalidArgument("absorber and absorbed sets share vertex " + std::to_string(v));
  }
  if (static_cast<int>(b.size()) > options.max_rim || b.size() >= 63) {
    throw SizeLimit("absorber check over " + std::to_string(b.size()) + " vertices exceeds the bound of " +
                    std::to_string(options.max_rim));
  }
  const int k = g.uniformity();
  AbsorberReport report;
  report.absorbs = true;
  const std::uint64_t subsets = std::uint64_t{1} << b.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::vector<Vertex> span(a.begin(), a.end());
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (mask >> i & 1) span.push_back(b[i]);
    }
    const auto size = static_cast<int>(span.size());
    if (size == 0) continue;
    if (size == 1) {
      report.witnesses.emplace(mask, MonoCycle{TightCycle{k, span}, 0});
      continue;
    }
    std::optional<MonoCycle> found;
    if (size > k) {
      auto result = find_spanning_mono_cycle(g, span, std::nullopt, options.node_limit_per_subset);
      if (!result.complete) report.complete = false;
      found = std::move(result.cycle);
    }
    if (!found) {
      report.absorbs = false;
      report.failing_subset = mask;
      return report;
    }
    report.witnesses.emplace(mask, std::move(*found));
  }
  return report;
}

// --- lifting ----------------------------------------------------------------

TightCycle lift_cycle(const ColouredHypergraph& g, std::span<const Vertex> aux, std::span<const Vertex> rim,
                      const std::vector<VertexSet>& parts, std::optional<Colour> colour) {
  const int k = g.uniformity();
  const int t = static_cast<int>(rim.size());
  const int w = k - 1;
  auto structure = [](int s, int i, const std::string& what) {
    return LiftPreconditionViolation(s, i, LiftCondition::kStructure, what);
  };
  if (k < 2) throw structure(0, 0, "lifting needs host uniformity at least 2");
  if (t < 2) throw structure(0, 0, "lifting needs at least two rim vertices");
  if (static_cast<int>(aux.size()) != t * w) {
    throw structure(0, 0, "auxiliary cycle has " + std::to_string(aux.size()) + " vertices, expected " +
                              std::to_string(t * w));
  }
  if (colour && (*colour < 1 || *colour > g.colours())) {
    throw InvalidArgument("colour " + std::to_string(*colour) + " outside [1, " + std::to_string(g.colours()) + "]");
  }
  if (!parts.empty() && static_cast<int>(parts.size()) != w) {
    throw structure(0, 0, "expected " + std::to_string(w) + " parts, got " + std::to_string(parts.size()));
  }

  std::vector<int> part_of(g.order(), -1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (Vertex v : parts[p]) {
      if (v < 0 || v >= g.order()) throw structure(0, 0, "part vertex " + std::to_string(v) + " out of range");
      part_of[v] = static_cast<int>(p);
    }
  }
  std::vector<char> seen(g.order(), 0);
  auto claim = [&](Vertex v, int s, int i) {
    if (v < 0 || v >= g.order()) throw structure(s, i, "vertex " + std::to_string(v) + " out of range");
    if (seen[v]) throw structure(s, i, "vertex " + std::to_string(v) + " used twice");
    seen[v] = 1;
  };
  for (int p = 0; p < t * w; ++p) claim(aux[p], p / w + 1, p % w + 1);
  for (int s = 1; s <= t; ++s) {
    claim(rim[s - 1], s, 0);
    if (!parts.empty() && part_of[rim[s - 1]] >= 0) {
      throw structure(s, 0, "rim vertex " + std::to_string(rim[s - 1]) + " lies in a part");
    }
  }

  const int m = t * w;
  auto window = [&](int s, int i) {
    std::array<Vertex, kMaxUniformity> e{};
    const int start = (s - 1) * w + (i - 1);
    for (int l = 0; l < w; ++l) e[l] = aux[(start + l) % m];
    return e;
  };
  if (!parts.empty()) {
    for (int s = 1; s <= t; ++s) {
      for (int i = 1; i <= w; ++i) {
        auto e = window(s, i);
        std::vector<char> hit(w, 0);
        for (int l = 0; l < w; ++l) {
          const int p = part_of[e[l]];
          if (p < 0 || hit[p]) throw structure(s, i, "window e(" + std::to_string(s) + "," + std::to_string(i) +
                                                         ") is not partite");
          hit[p] = 1;
        }
      }
    }
  }

  auto colour_with = [&](int s, int i, Vertex v) {
    auto e = window(s, i);
    e[w] = v;
    return g.colour_of(std::span<const Vertex>(e.data(), k));
  };
  auto prev_rim = [&](int s) { return rim[(s - 2 + t) % t]; };

  Colour target = colour.value_or(0);
  if (target == 0) {
    std::vector<int> votes(g.colours() + 1, 0);
    for (int s = 1; s <= t; ++s) {
      for (int i = 1; i <= w; ++i) ++votes[colour_with(s, i, rim[s - 1])];
      ++votes[colour_with(s, 1, prev_rim(s))];
    }
    target = 1;
    for (int c = 2; c <= g.colours(); ++c) {
      if (votes[c] > votes[target]) target = c;
    }
  }

  for (int s = 1; s <= t; ++s) {
    for (int i = 1; i <= w; ++i) {
      if (colour_with(s, i, rim[s - 1]) != target) {
        throw LiftPreconditionViolation(s, i, LiftCondition::kLink,
                                        "e(" + std::to_string(s) + "," + std::to_string(i) + ") + v" +
                                            std::to_string(s) + " is not an edge of colour " + std::to_string(target));
      }
    }
    if (colour_with(s, 1, prev_rim(s)) != target) {
      throw LiftPreconditionViolation(s, 1, LiftCondition::kWrap,
                                      "e(" + std::to_string(s) + ",1) + v" + std::to_string(s == 1 ? t : s - 1) +
                                          " is not an edge of colour " + std::to_string(target));
    }
  }

  TightCycle out{k, {}};
  out.seq.reserve(m + t);
  for (int s = 1; s <= t; ++s) {
    for (int i = 0; i < w; ++i) out.seq.push_back(aux[(s - 1) * w + i]);
    out.seq.push_back(rim[s - 1]);
  }
  const auto verdict = validate_cycle_in(g, out, target);
  if (!verdict.valid) throw InternalError("lifted cycle failed validation: " + verdict.reason);
  return out;
}

}  // namespace tightcycle
