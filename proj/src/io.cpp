#include "tightcycle/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <random>
#include <sstream>

#include "combinatorics.hpp"
#include "json.hpp"

namespace tightcycle {

namespace {

using Json = nlohmann::json;

constexpr int kFormatVersion = 1;

[[noreturn]] void semantic(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what, 0, 0, path);
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    int line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    // nlohmann prefixes "[json.exception.parse_error.101] parse error at line L, column C: "
    if (auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg, line,
                     column, "");
  }
}

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) semantic(path.empty() ? "/" : path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; })) {
      semantic(path + "/" + it.key(), "unknown field");
    }
  }
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) semantic(path + "/" + key, "missing field");
  return *it;
}

std::int64_t integer(const Json& j, const std::string& path, std::int64_t lo, std::int64_t hi) {
  if (!j.is_number_integer()) semantic(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < lo || v > hi) semantic(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "]");
  return v;
}

std::vector<int> int_array(const Json& j, const std::string& path, std::int64_t lo, std::int64_t hi) {
  if (!j.is_array()) semantic(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(static_cast<int>(integer(j[i], path + "/" + std::to_string(i), lo, hi)));
  }
  return out;
}

void check_version(const Json& j) {
  if (integer(field(j, "", "version"), "/version", 0, 1 << 30) != kFormatVersion) {
    semantic("/version", "unsupported version");
  }
}

std::string flags_text(const ConventionFlags& f) {
  return std::string("{\"edges_as_cycles\": ") + (f.edges_as_cycles ? "true" : "false") +
         ", \"distinct_colours\": " + (f.distinct_colours ? "true" : "false") + "}";
}

ConventionFlags read_flags(const Json& j, const std::string& path) {
  only_keys(j, path, {"edges_as_cycles", "distinct_colours"});
  ConventionFlags f;
  for (auto [key, target] : {std::pair{"edges_as_cycles", &f.edges_as_cycles},
                             std::pair{"distinct_colours", &f.distinct_colours}}) {
    auto it = j.find(key);
    if (it == j.end()) continue;
    if (!it->is_boolean()) semantic(path + "/" + key, "expected true or false");
    *target = it->get<bool>();
  }
  return f;
}

std::string ints_text(std::span<const int> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

std::string quoted(const std::string& s) { return Json(s).dump(); }

std::string cycles_text(const std::vector<MonoCycle>& cycles, const std::vector<std::string>* provenance) {
  std::string out = "[";
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += "{\"vertices\": " + ints_text(cycles[i].cycle.seq) + ", \"colour\": " + std::to_string(cycles[i].colour);
    if (provenance) out += ", \"provenance\": " + quoted((*provenance)[i]);
    out += "}";
  }
  return out + (cycles.empty() ? "]" : "\n  ]");
}

MonoCycle read_cycle(const Json& j, const std::string& path, int k, bool with_provenance, Provenance* prov) {
  if (with_provenance) {
    only_keys(j, path, {"vertices", "colour", "provenance"});
  } else {
    only_keys(j, path, {"vertices", "colour"});
  }
  MonoCycle c;
  c.cycle.k = k;
  c.cycle.seq = int_array(field(j, path, "vertices"), path + "/vertices", 0, 1 << 30);
  c.colour = static_cast<Colour>(integer(field(j, path, "colour"), path + "/colour", 0, 1 << 30));
  if (with_provenance) {
    const Json& p = field(j, path, "provenance");
    if (!p.is_string()) semantic(path + "/provenance", "expected a string");
    try {
      *prov = parse_provenance(p.get<std::string>());
    } catch (const InvalidArgument& e) {
      semantic(path + "/provenance", e.what());
    }
  }
  return c;
}

std::string hex(const unsigned char* data, std::size_t size) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < size; ++i) {
    out += digits[data[i] >> 4];
    out += digits[data[i] & 15];
  }
  return out;
}

// Uniform double in [0, 1) and integer in [0, r) from raw engine output,
// independent of the standard library's distribution algorithms.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
int uniform_below(std::mt19937_64& rng, int r) { return static_cast<int>(rng() % static_cast<std::uint64_t>(r)); }

}  // namespace

// --- instances --------------------------------------------------------------

std::string write_instance(const InstanceFile& file, bool compact) {
  const auto& g = file.graph;
  std::ostringstream out;
  out << "{\n  \"version\": " << kFormatVersion << ",\n  \"k\": " << g.uniformity() << ",\n  \"n\": " << g.order()
      << ",\n  \"r\": " << g.colours() << ",\n";
  if (file.alpha) out << "  \"alpha\": " << *file.alpha << ",\n";
  out << "  \"flags\": " << flags_text(file.flags) << ",\n";
  const std::uint64_t all = binomial(g.order(), g.uniformity());
  if (compact && g.host().size() == all) {
    // edges are stored sorted, so host order is lexicographic
    std::vector<int> colours(g.edge_colours().begin(), g.edge_colours().end());
    out << "  \"complete_with_colouring\": " << ints_text(colours) << "\n}\n";
    return out.str();
  }
  out << "  \"edges\": [";
  for (std::size_t id = 0; id < g.host().size(); ++id) {
    out << (id ? ",\n    " : "\n    ") << "{\"vertices\": " << ints_text(g.host().edge(id))
        << ", \"colour\": " << g.colour(id) << "}";
  }
  out << (g.host().size() ? "\n  ]\n}\n" : "]\n}\n");
  return out.str();
}

InstanceFile read_instance(std::string_view text) {
  const Json j = parse_text(text);
  only_keys(j, "", {"version", "k", "n", "r", "alpha", "flags", "edges", "complete_with_colouring"});
  check_version(j);
  InstanceFile file;
  const int k = static_cast<int>(integer(field(j, "", "k"), "/k", 1, kMaxUniformity));
  const int n = static_cast<int>(integer(field(j, "", "n"), "/n", 0, 1 << 20));
  const int r = static_cast<int>(integer(field(j, "", "r"), "/r", 1, 1 << 16));
  if (j.contains("alpha")) file.alpha = static_cast<int>(integer(j["alpha"], "/alpha", 0, n));
  if (j.contains("flags")) file.flags = read_flags(j["flags"], "/flags");
  const bool has_edges = j.contains("edges");
  const bool has_complete = j.contains("complete_with_colouring");
  if (has_edges == has_complete) semantic("/edges", "give exactly one of edges and complete_with_colouring");
  try {
    if (has_complete) {
      const auto colours = int_array(j["complete_with_colouring"], "/complete_with_colouring", 1, r);
      file.graph = ColouredHypergraph::complete(k, n, r, colours);
    } else {
      const Json& edges = j["edges"];
      if (!edges.is_array()) semantic("/edges", "expected an array");
      std::vector<Edge> es;
      std::vector<Colour> cs;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string path = "/edges/" + std::to_string(i);
        only_keys(edges[i], path, {"vertices", "colour"});
        auto vs = int_array(field(edges[i], path, "vertices"), path + "/vertices", 0, n - 1);
        if (static_cast<int>(vs.size()) != k) semantic(path + "/vertices", "expected " + std::to_string(k) + " vertices");
        es.push_back(std::move(vs));
        cs.push_back(static_cast<Colour>(integer(field(edges[i], path, "colour"), path + "/colour", 1, r)));
      }
      file.graph = ColouredHypergraph(k, n, r, std::move(es), std::move(cs));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& e) {
    semantic(has_complete ? "/complete_with_colouring" : "/edges", e.what());
  }
  return file;
}

std::string instance_digest(const ColouredHypergraph& g) {
  std::string canon = std::to_string(g.uniformity()) + " " + std::to_string(g.order()) + " " +
                      std::to_string(g.colours()) + "\n";
  for (std::size_t id = 0; id < g.host().size(); ++id) {
    for (Vertex v : g.host().edge(id)) canon += std::to_string(v) + " ";
    canon += ": " + std::to_string(g.colour(id)) + "\n";
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canon.data(), canon.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw InternalError("SHA-256 failed");
  }
  return hex(md, len);
}

// --- certificates -----------------------------------------------------------

std::string write_certificate(const PartitionCertificate& cert, int k) {
  std::vector<MonoCycle> cycles;
  std::vector<std::string> prov;
  for (const auto& c : cert.cycles) {
    cycles.push_back(c.cycle);
    prov.push_back(to_string(c.provenance));
  }
  std::ostringstream out;
  out << "{\n  \"version\": " << kFormatVersion << ",\n  \"instance_digest\": " << quoted(cert.instance_digest)
      << ",\n  \"k\": " << k << ",\n  \"flags\": " << flags_text(cert.flags)
      << ",\n  \"cycles\": " << cycles_text(cycles, &prov) << "\n}\n";
  return out.str();
}

PartitionCertificate read_certificate(std::string_view text) {
  const Json j = parse_text(text);
  only_keys(j, "", {"version", "instance_digest", "k", "flags", "cycles"});
  check_version(j);
  PartitionCertificate cert;
  const Json& digest = field(j, "", "instance_digest");
  if (!digest.is_string()) semantic("/instance_digest", "expected a string");
  cert.instance_digest = digest.get<std::string>();
  const int k = static_cast<int>(integer(field(j, "", "k"), "/k", 1, kMaxUniformity));
  if (j.contains("flags")) cert.flags = read_flags(j["flags"], "/flags");
  const Json& cycles = field(j, "", "cycles");
  if (!cycles.is_array()) semantic("/cycles", "expected an array");
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    CertifiedCycle c;
    c.cycle = read_cycle(cycles[i], "/cycles/" + std::to_string(i), k, true, &c.provenance);
    cert.cycles.push_back(std::move(c));
  }
  return cert;
}

std::string write_power_partition(const PowerPartition& part) {
  std::ostringstream out;
  out << "{\n  \"version\": " << kFormatVersion << ",\n  \"instance_digest\": " << quoted(part.instance_digest)
      << ",\n  \"k\": " << part.k << ",\n  \"p\": " << part.p << ",\n  \"cycles\": " << cycles_text(part.cycles, nullptr)
      << "\n}\n";
  return out.str();
}

PowerPartition read_power_partition(std::string_view text) {
  const Json j = parse_text(text);
  only_keys(j, "", {"version", "instance_digest", "k", "p", "cycles"});
  check_version(j);
  PowerPartition part;
  const Json& digest = field(j, "", "instance_digest");
  if (!digest.is_string()) semantic("/instance_digest", "expected a string");
  part.instance_digest = digest.get<std::string>();
  part.k = static_cast<int>(integer(field(j, "", "k"), "/k", 1, kMaxUniformity));
  part.p = static_cast<int>(integer(field(j, "", "p"), "/p", 1, kMaxUniformity));
  const Json& cycles = field(j, "", "cycles");
  if (!cycles.is_array()) semantic("/cycles", "expected an array");
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    part.cycles.push_back(read_cycle(cycles[i], "/cycles/" + std::to_string(i), part.k + part.p - 1, false, nullptr));
  }
  return part;
}

// --- families and block specs -----------------------------------------------

std::string write_family(const SubsetFamily& family) {
  std::ostringstream out;
  out << "{\n  \"version\": " << kFormatVersion << ",\n  \"ground_size\": " << family.ground_size
      << ",\n  \"members\": [";
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << ints_text(family.members[i]);
  }
  out << (family.members.empty() ? "]" : "\n  ]");
  if (!family.owners.empty()) out << ",\n  \"owners\": " << ints_text(family.owners);
  out << "\n}\n";
  return out.str();
}

SubsetFamily read_family(std::string_view text) {
  const Json j = parse_text(text);
  only_keys(j, "", {"version", "ground_size", "members", "owners"});
  check_version(j);
  SubsetFamily f;
  f.ground_size = static_cast<int>(integer(field(j, "", "ground_size"), "/ground_size", 0, 1 << 26));
  const Json& members = field(j, "", "members");
  if (!members.is_array()) semantic("/members", "expected an array");
  for (std::size_t i = 0; i < members.size(); ++i) {
    f.members.push_back(int_array(members[i], "/members/" + std::to_string(i), 0, f.ground_size - 1));
  }
  if (j.contains("owners")) {
    f.owners = int_array(j["owners"], "/owners", 0, 1 << 30);
    if (f.owners.size() != f.members.size()) semantic("/owners", "expected one owner per member");
  }
  return f;
}

std::vector<VertexSet> parse_blocks(std::string_view spec) {
  std::vector<VertexSet> blocks(1);
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("column " + std::to_string(i + 1) + ": " + what, 1, static_cast<int>(i + 1), "");
  };
  if (spec.empty()) fail("empty block specification");
  bool expect_number = true;
  while (i < spec.size()) {
    const char c = spec[i];
    if (c == ' ') {
      ++i;
    } else if (c == ',' || c == ';') {
      if (expect_number) fail("expected a vertex");
      if (c == ';') blocks.emplace_back();
      expect_number = true;
      ++i;
    } else {
      int v = 0;
      auto [end, ec] = std::from_chars(spec.data() + i, spec.data() + spec.size(), v);
      if (ec != std::errc() || v < 0) fail("expected a vertex");
      blocks.back().push_back(v);
      i = static_cast<std::size_t>(end - spec.data());
      expect_number = false;
    }
  }
  if (expect_number) fail("expected a vertex");
  return blocks;
}

// --- generators -------------------------------------------------------------

ColouredHypergraph generate_complete_random(int k, int n, int r, std::uint64_t seed) {
  if (k < 1 || n < 0 || r < 1) throw InvalidArgument("need k >= 1, n >= 0, r >= 1");
  if (binomial(n, k) > (1u << 24)) throw SizeLimit("too many edges to generate");
  std::mt19937_64 rng(seed);
  std::vector<Colour> colours(binomial(n, k));
  for (auto& c : colours) c = 1 + uniform_below(rng, r);
  return ColouredHypergraph::complete(k, n, r, colours);
}

ColouredHypergraph generate_density(int k, int n, int r, double p, std::uint64_t seed) {
  if (k < 1 || n < 0 || r < 1) throw InvalidArgument("need k >= 1, n >= 0, r >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("density must lie in [0, 1]");
  if (binomial(n, k) > (1u << 24)) throw SizeLimit("too many edges to generate");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::vector<Colour> colours;
  for_each_combination(n, k, [&](std::span<const int> c) {
    const bool keep = unit(rng) < p;
    const Colour colour = 1 + uniform_below(rng, r);
    if (!keep) return;
    edges.emplace_back(c.begin(), c.end());
    colours.push_back(colour);
  });
  return ColouredHypergraph(k, n, r, std::move(edges), std::move(colours));
}

}  // namespace tightcycle
