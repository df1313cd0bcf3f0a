#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tightcycle/driver.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/tight.hpp"

namespace tightcycle {

// Brute-force oracles.  They share only the hypergraph container with the
// searches they check.

inline constexpr int kEnumerateBound = 14;
inline constexpr int kMinPartitionBound = 10;

/// Calls visit on every non-degenerate monochromatic tight cycle with at most
/// max_len vertices (0 = no limit), once per cycle up to rotation and
/// reflection, in canonical form.  visit returns false to stop.  Throws
/// SizeLimit above kEnumerateBound vertices.
void for_each_mono_tight_cycle(const ColouredHypergraph& g, int max_len, ConventionFlags flags,
                               const std::function<bool(const MonoCycle&)>& visit);

std::vector<MonoCycle> enumerate_mono_tight_cycles(const ColouredHypergraph& g, int max_len = 0,
                                                   ConventionFlags flags = {});

/// Bit c set in result[mask] iff the vertices of mask span a tight cycle of
/// colour c.  Singletons carry every colour.  Throws SizeLimit above
/// kEnumerateBound vertices.
std::vector<std::uint32_t> spanning_colour_masks(const ColouredHypergraph& g, ConventionFlags flags = {});

struct MinPartition {
  int size = 0;
  std::vector<MonoCycle> witness;
};

/// Exact minimum number of monochromatic tight cycles partitioning V.  With
/// distinct_colours the cycles must carry pairwise distinct colours; returns
/// nullopt when no such partition exists.  Throws SizeLimit above
/// kMinPartitionBound vertices.
std::optional<MinPartition> min_partition_size(const ColouredHypergraph& g, ConventionFlags flags = {});

struct ScanOptions {
  bool prune = true;
  int threads = 1;
  std::uint64_t max_colourings = std::uint64_t{1} << 24;
};

struct ScanReport {
  int k = 0;
  int r = 0;
  int n = 0;
  ConventionFlags flags;
  bool pruned = false;
  std::uint64_t scanned = 0;  // colourings looked at
  std::uint64_t solved = 0;   // colourings solved (the canonical ones when pruned)
  std::optional<int> worst;   // nullopt: some colouring has no admissible partition
  std::vector<Colour> witness;  // colours in lexicographic edge order
  bool complete = false;
};

/// Maximum over all r-colourings of K_n^{(k)} of min_partition_size.  With
/// pruning only colourings that are lexicographically minimal under vertex
/// permutations are solved.  Deterministic for any thread count.
ScanReport colouring_scan(int k, int r, int n, ConventionFlags flags = {}, ScanOptions options = {});

/// True iff no vertex permutation maps the colouring to a lexicographically
/// smaller one.
bool colouring_is_canonical(int k, int n, const std::vector<Colour>& colours_lex);

struct CertificateMutation {
  std::string kind;  // delete-vertex, duplicate-vertex, colour-flip, drop-cycle, digest
  PartitionCertificate cert;
};

/// Single-point corruptions of a valid certificate, each of which
/// verify_certificate must reject (the digest variant only when the
/// expected digest is passed).
std::vector<CertificateMutation> certificate_mutations(const ColouredHypergraph& g, const PartitionCertificate& cert);

}  // namespace tightcycle
