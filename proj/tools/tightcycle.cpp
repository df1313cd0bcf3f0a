// Command-line front end.  Exit codes: 0 success, 1 rejection, 2 internal
// verification failure, 64 malformed input, 65 size limit.

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tightcycle/driver.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/io.hpp"
#include "tightcycle/lemmas.hpp"
#include "tightcycle/oracles.hpp"
#include "tightcycle/search.hpp"

using namespace tightcycle;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kReject = 1;
constexpr int kInternal = 2;
constexpr int kMalformed = 64;
constexpr int kTooLarge = 65;

struct Failure {
  int code;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path == "-" ? "/dev/stdin" : path, std::ios::binary);
  if (!in) throw Failure{kMalformed, "cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <typename Fn>
auto parsing(const std::string& path, Fn&& fn) {
  try {
    return fn(slurp(path));
  } catch (const ParseError& e) {
    throw Failure{kMalformed, path + ": " + e.what()};
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Failure{kMalformed, "cannot write " + out};
  f << text;
}

DriverConfig read_config(const std::string& path, int k, int r) {
  DriverConfig c = DriverConfig::defaults(k, r);
  if (path.empty()) return c;
  const std::string text = slurp(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Failure{kMalformed, path + ": " + e.what()};
  }
  if (!j.is_object()) throw Failure{kMalformed, path + ": expected an object"};
  auto rational = [&](const char* key, Rational& target) {
    if (!j.contains(key)) return;
    try {
      target = parse_rational(j[key].is_string() ? j[key].get<std::string>() : j[key].dump());
    } catch (const InvalidArgument& e) {
      throw Failure{kMalformed, path + ": /" + key + ": " + e.what()};
    }
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> known{"eps",       "beta",       "gamma",          "node_limit",
                                             "time_limit", "fallback_bound", "exact_alpha_bound"};
    if (!known.count(it.key())) throw Failure{kMalformed, path + ": /" + it.key() + ": unknown field"};
  }
  rational("eps", c.eps);
  rational("beta", c.beta);
  rational("gamma", c.gamma);
  try {
    if (j.contains("node_limit")) c.budget.node_limit = j["node_limit"].get<std::uint64_t>();
    if (j.contains("time_limit")) c.budget.time_limit = j["time_limit"].get<double>();
    if (j.contains("fallback_bound")) c.fallback_bound = j["fallback_bound"].get<int>();
    if (j.contains("exact_alpha_bound")) c.exact_alpha_bound = j["exact_alpha_bound"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Failure{kMalformed, path + ": " + e.what()};
  }
  return c;
}

int resolve_alpha(const InstanceFile& file, int flag_alpha, int exact_bound) {
  if (flag_alpha > 0) return flag_alpha;
  if (file.alpha) return *file.alpha;
  if (file.graph.order() <= exact_bound) return std::max(1, independence_number(file.graph.host(), {exact_bound}));
  throw Failure{kMalformed, "alpha is required above " + std::to_string(exact_bound) + " vertices"};
}

// --- subcommands --------------------------------------------------------------

struct GenArgs {
  int k = 3, n = 6, r = 2;
  std::string model = "complete-random";
  double p = 0.5;
  int alpha = 0;
  bool compact = false;
  bool edges_as_cycles = false;
};

int run_gen(const GenArgs& a, std::uint64_t seed) {
  InstanceFile f;
  if (a.model == "complete-random") {
    f.graph = generate_complete_random(a.k, a.n, a.r, seed);
  } else if (a.model == "density") {
    f.graph = generate_density(a.k, a.n, a.r, a.p, seed);
  } else {
    throw Failure{kMalformed, "unknown model '" + a.model + "'"};
  }
  if (a.alpha > 0) f.alpha = a.alpha;
  f.flags.edges_as_cycles = a.edges_as_cycles;
  std::cout << write_instance(f, a.compact);
  return 0;
}

struct PartitionArgs {
  std::string in, config, out;
  int alpha = 0;
  bool trace = false;
};

int run_partition(const PartitionArgs& a, std::uint64_t seed) {
  const auto file = parsing(a.in, [](const std::string& t) { return read_instance(t); });
  const auto& g = file.graph;
  DriverConfig config = read_config(a.config, std::max(2, g.uniformity()), g.colours());
  config.budget.seed = seed;
  config.flags = file.flags;
  const int alpha = resolve_alpha(file, a.alpha, config.exact_alpha_bound);
  DriverTrace trace;
  PartitionCertificate cert;
  try {
    cert = partition(g, alpha, config, &trace);
  } catch (const InternalError& e) {
    throw Failure{kInternal, std::string("internal verification failure: ") + e.what()};
  }
  const auto verdict = verify_certificate(g, cert, instance_digest(g));
  if (!verdict.accepted) throw Failure{kInternal, "certificate rejected: " + verdict.reason};
  emit(write_certificate(cert, g.uniformity()), a.out);

  std::map<std::string, int> histogram;
  for (const auto& c : cert.cycles) ++histogram[to_string(c.provenance)];
  std::cerr << "cycles: " << cert.size();
  for (const auto& [name, count] : histogram) std::cerr << "  " << name << ": " << count;
  std::cerr << "\n";
  if (a.trace) {
    for (const auto& s : trace.steps) {
      std::cerr << "step " << s.j << ": crown " << s.crown_vertices << ", greedy " << s.greedy_cycles
                << ", uncovered " << s.uncovered << " (low " << s.low_link << ", high " << s.high_link
                << "), absorb " << s.absorb_status << "\n";
    }
    for (const auto& note : trace.notes) std::cerr << "note: " << note << "\n";
    std::cerr << "fallback vertices: " << trace.fallback_vertices << "\n";
  }
  return 0;
}

int run_verify(const std::string& in, const std::string& cert_path) {
  const auto file = parsing(in, [](const std::string& t) { return read_instance(t); });
  const auto cert = parsing(cert_path, [](const std::string& t) { return read_certificate(t); });
  const auto verdict = verify_certificate(file.graph, cert, instance_digest(file.graph));
  if (verdict.accepted) {
    std::cout << "accept: " << cert.size() << " cycles\n";
    return 0;
  }
  std::cout << "reject: " << verdict.reason << "\n";
  return kReject;
}

int run_crown(int k, int t, const std::string& embed_in, std::uint64_t seed) {
  Json out;
  if (embed_in.empty()) {
    const Crown c = build_crown(k, t);
    out["k"] = k;
    out["t"] = t;
    out["vertices"] = c.vertices().size();
    out["edges"] = c.edges().size();
    out["base"] = c.base;
    out["rim"] = c.rim;
    Json edges = Json::array();
    for (const auto& e : c.edges()) edges.push_back(e);
    out["edge_list"] = edges;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  const auto file = parsing(embed_in, [](const std::string& t) { return read_instance(t); });
  if (file.graph.uniformity() != k) throw Failure{kMalformed, "host uniformity does not match --k"};
  SearchBudget budget;
  budget.seed = seed;
  const auto res = find_mono_crown(file.graph, t, {}, budget);
  if (!res.found) {
    std::cout << "no monochromatic crown of order " << t << (res.exhausted ? " within budget" : "") << "\n";
    return kReject;
  }
  if (!crown_embedding_valid(file.graph, *res.found)) throw Failure{kInternal, "embedded crown fails re-check"};
  out["k"] = k;
  out["t"] = t;
  out["colour"] = res.found->colour;
  out["base"] = res.found->crown.base;
  out["rim"] = res.found->crown.rim;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_posa(const std::string& path) {
  const auto file = parsing(path, [](const std::string& t) { return read_instance(t); });
  if (file.graph.uniformity() != 2) throw Failure{kMalformed, "posa expects a graph (k = 2)"};
  const auto cover = posa_cycle_cover(file.graph.host());
  Json out;
  out["count"] = cover.size();
  out["cycles"] = cover;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_blocks(const std::string& path, const std::string& eps_text) {
  const auto family = parsing(path, [](const std::string& t) { return read_family(t); });
  const Rational eps = parse_rational(eps_text);
  const auto grouping = group_blocks(family, eps);
  Json blocks = Json::array();
  for (const auto& b : grouping.blocks) blocks.push_back(Json{{"owners", b.owners}, {"intersection", b.intersection}});
  Json out;
  out["floor"] = to_string(block_intersection_floor(eps) * family.ground_size);
  out["leftover_bound"] = to_string(block_leftover_bound(eps));
  out["blocks"] = blocks;
  out["leftover"] = grouping.leftover;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_transversal(const std::string& path, const std::string& spec, bool unchecked) {
  const auto file = parsing(path, [](const std::string& t) { return read_instance(t); });
  std::vector<VertexSet> blocks;
  try {
    blocks = parse_blocks(spec);
  } catch (const ParseError& e) {
    throw Failure{kMalformed, std::string("--blocks: ") + e.what()};
  }
  TransversalOptions options;
  options.checked = !unchecked;
  try {
    const auto res = independent_transversal(file.graph.host(), blocks, options);
    Json out;
    if (res.transversal) out["transversal"] = *res.transversal;
    if (!res.relaxed_blocks.empty()) out["relaxed_blocks"] = res.relaxed_blocks;
    if (res.stuck_block) out["stuck_block"] = *res.stuck_block;
    std::cout << out.dump(2) << "\n";
    return res.transversal ? 0 : kReject;
  } catch (const TransversalHypothesisViolation& e) {
    Json out;
    out["violation"] = e.what();
    out["block"] = e.block();
    out["lower_blocks"] = e.lower_blocks();
    out["vertex"] = e.vertex();
    std::cout << out.dump(2) << "\n";
    return kReject;
  }
}

struct ScanArgs {
  int k = 2, r = 2, n = 4;
  bool prune = false;
  bool edges_as_cycles = false;
  bool distinct_colours = false;
  std::uint64_t max_colourings = std::uint64_t{1} << 24;
};

int run_scan(const ScanArgs& a, int threads) {
  ConventionFlags flags;
  flags.edges_as_cycles = a.edges_as_cycles;
  flags.distinct_colours = a.distinct_colours;
  ScanOptions options;
  options.prune = a.prune;
  options.threads = threads;
  options.max_colourings = a.max_colourings;
  const auto report = colouring_scan(a.k, a.r, a.n, flags, options);
  Json out;
  out["k"] = report.k;
  out["r"] = report.r;
  out["n"] = report.n;
  out["flags"] = Json{{"edges_as_cycles", flags.edges_as_cycles}, {"distinct_colours", flags.distinct_colours}};
  out["pruned"] = report.pruned;
  out["scanned"] = report.scanned;
  out["solved"] = report.solved;
  out["worst"] = report.worst ? Json(*report.worst) : Json(nullptr);
  out["witness"] = report.witness;
  out["complete"] = report.complete;
  std::cout << out.dump(2) << "\n";
  return report.complete ? 0 : kReject;
}

struct PowerArgs {
  std::string in, mode = "reduce", config, out;
  int p = 2;
  int alpha = 0;
};

int run_power(const PowerArgs& a, std::uint64_t seed) {
  const auto file = parsing(a.in, [](const std::string& t) { return read_instance(t); });
  const auto& g = file.graph;
  const auto reduced = power_reduce(g, a.p);
  if (a.mode == "reduce") {
    InstanceFile f;
    f.graph = reduced;
    emit(write_instance(f), a.out);
    return 0;
  }
  if (a.mode != "partition") throw Failure{kMalformed, "mode must be reduce or partition"};
  DriverConfig config = read_config(a.config, reduced.uniformity(), reduced.colours());
  config.budget.seed = seed;
  InstanceFile rf;
  rf.graph = reduced;
  const int alpha = resolve_alpha(rf, a.alpha, config.exact_alpha_bound);
  PartitionCertificate cert;
  try {
    cert = partition(reduced, alpha, config);
  } catch (const InternalError& e) {
    throw Failure{kInternal, std::string("internal verification failure: ") + e.what()};
  }
  PowerPartition part{instance_digest(g), g.uniformity(), a.p, {}};
  for (const auto& c : cert.cycles) {
    try {
      part.cycles.push_back(power_lift_back(g, a.p, c.cycle).cycle);
    } catch (const PreconditionViolation& e) {
      throw Failure{kInternal, std::string("lift failed: ") + e.what()};
    }
  }
  emit(write_power_partition(part), a.out);
  std::cerr << "powers: " << part.cycles.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monochromatic tight-cycle partitions of edge-coloured hypergraphs"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  int threads = 1;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads for scans")->check(CLI::PositiveNumber)->capture_default_str();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--k", gen.k)->required();
  gen_cmd->add_option("--n", gen.n)->required();
  gen_cmd->add_option("--r", gen.r)->required();
  gen_cmd->add_option("--model", gen.model, "complete-random or density")->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "edge probability for the density model")->capture_default_str();
  gen_cmd->add_option("--alpha", gen.alpha, "declared independence bound");
  gen_cmd->add_flag("--compact", gen.compact, "write complete hosts as one colour array");
  gen_cmd->add_flag("--edges-as-cycles", gen.edges_as_cycles, "graph convention");
  gen_cmd->add_option("--seed", seed);

  PartitionArgs part;
  auto* part_cmd = app.add_subcommand("partition", "partition an instance into monochromatic tight cycles");
  part_cmd->add_option("--in", part.in)->required();
  part_cmd->add_option("--alpha", part.alpha);
  part_cmd->add_option("--config", part.config, "JSON with eps, beta, gamma, node_limit, ...");
  part_cmd->add_option("--out", part.out, "certificate file (default stdout)");
  part_cmd->add_flag("--trace", part.trace, "print the driver steps");
  part_cmd->add_option("--seed", seed);

  std::string verify_in, verify_cert;
  auto* verify_cmd = app.add_subcommand("verify", "check a certificate against an instance");
  verify_cmd->add_option("--in", verify_in)->required();
  verify_cmd->add_option("--cert", verify_cert)->required();

  int crown_k = 3, crown_t = 4;
  std::string crown_embed;
  auto* crown_cmd = app.add_subcommand("crown", "describe or embed a crown");
  crown_cmd->add_option("--k", crown_k)->required();
  crown_cmd->add_option("--t", crown_t)->required();
  crown_cmd->add_option("--embed-in", crown_embed);
  crown_cmd->add_option("--seed", seed);

  std::string posa_graph;
  auto* posa_cmd = app.add_subcommand("posa", "cycle cover of a graph with at most alpha parts");
  posa_cmd->add_option("--graph", posa_graph)->required();

  std::string family_path, eps_text;
  auto* blocks_cmd = app.add_subcommand("blocks", "group a set family into blocks of four");
  blocks_cmd->add_option("--family", family_path)->required();
  blocks_cmd->add_option("--eps", eps_text)->required();

  std::string trans_in, trans_blocks;
  bool trans_unchecked = false;
  auto* trans_cmd = app.add_subcommand("transversal", "independent transversal of vertex blocks");
  trans_cmd->add_option("--in", trans_in)->required();
  trans_cmd->add_option("--blocks", trans_blocks, "e.g. 0,1;2,3;4")->required();
  trans_cmd->add_flag("--unchecked", trans_unchecked, "skip the hypothesis check");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "worst minimum partition over all colourings");
  scan_cmd->add_option("--k", scan.k)->required();
  scan_cmd->add_option("--r", scan.r)->required();
  scan_cmd->add_option("--n", scan.n)->required();
  scan_cmd->add_flag("--prune", scan.prune, "solve one colouring per isomorphism class");
  scan_cmd->add_flag("--edges-as-cycles", scan.edges_as_cycles);
  scan_cmd->add_flag("--distinct-colours", scan.distinct_colours);
  scan_cmd->add_option("--max-colourings", scan.max_colourings)->capture_default_str();
  scan_cmd->add_option("--threads", threads);

  PowerArgs power;
  auto* power_cmd = app.add_subcommand("power", "reduce to cliques or partition into powers of cycles");
  power_cmd->add_option("--in", power.in)->required();
  power_cmd->add_option("--p", power.p)->required();
  power_cmd->add_option("mode", power.mode, "reduce or partition")->capture_default_str();
  power_cmd->add_option("--alpha", power.alpha);
  power_cmd->add_option("--config", power.config);
  power_cmd->add_option("--out", power.out);
  power_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (*gen_cmd) return run_gen(gen, seed);
    if (*part_cmd) return run_partition(part, seed);
    if (*verify_cmd) return run_verify(verify_in, verify_cert);
    if (*crown_cmd) return run_crown(crown_k, crown_t, crown_embed, seed);
    if (*posa_cmd) return run_posa(posa_graph);
    if (*blocks_cmd) return run_blocks(family_path, eps_text);
    if (*trans_cmd) return run_transversal(trans_in, trans_blocks, trans_unchecked);
    if (*scan_cmd) return run_scan(scan, threads);
    if (*power_cmd) return run_power(power, seed);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const SizeLimit& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return kTooLarge;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kReject;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}
