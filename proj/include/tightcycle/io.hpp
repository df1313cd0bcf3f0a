#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tightcycle/driver.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/lemmas.hpp"
#include "tightcycle/tight.hpp"

namespace tightcycle {

/// Malformed input.  Line and column are 1-based and point at the last
/// character read; both are 0 when the problem is semantic, in which case
/// `path` holds the JSON pointer of the bad value.
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& what, int line, int column, std::string path)
      : InvalidArgument(what), line_(line), column_(column), path_(std::move(path)) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& path() const { return path_; }

 private:
  int line_;
  int column_;
  std::string path_;
};

struct InstanceFile {
  int version = 1;
  ColouredHypergraph graph;
  std::optional<int> alpha;
  ConventionFlags flags;
};

/// Canonical text: fixed key order, edges sorted, one edge per line.  With
/// `compact` and a complete host the colouring is written as one array.
std::string write_instance(const InstanceFile& file, bool compact = false);
InstanceFile read_instance(std::string_view text);

/// SHA-256 (hex) of the canonical serialization of k, n, r and the coloured
/// edges.
std::string instance_digest(const ColouredHypergraph& g);

std::string write_certificate(const PartitionCertificate& cert, int k);
PartitionCertificate read_certificate(std::string_view text);

/// Partition of a host into p-th powers of tight cycles.
struct PowerPartition {
  std::string instance_digest;
  int k = 0;
  int p = 1;
  std::vector<MonoCycle> cycles;  // sequences as in the reduced instance
};

std::string write_power_partition(const PowerPartition& part);
PowerPartition read_power_partition(std::string_view text);

std::string write_family(const SubsetFamily& family);
SubsetFamily read_family(std::string_view text);

/// "0,1;2,3;4" -> {{0,1},{2,3},{4}}.
std::vector<VertexSet> parse_blocks(std::string_view spec);

// --- generators -------------------------------------------------------------

/// Complete k-graph with every edge coloured uniformly at random.
ColouredHypergraph generate_complete_random(int k, int n, int r, std::uint64_t seed);

/// Every k-set kept with probability p, then coloured uniformly.
ColouredHypergraph generate_density(int k, int n, int r, double p, std::uint64_t seed);

}  // namespace tightcycle
