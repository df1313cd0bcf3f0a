#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tightcycle/lemmas.hpp"

using namespace tightcycle;

namespace {

SubsetFamily random_family(int m, int count, const Rational& eps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SubsetFamily f{m, {}, {}};
  const int floor_size = static_cast<int>((eps.numerator() * m + eps.denominator() - 1) / eps.denominator());
  std::uniform_int_distribution<int> extra(0, m - floor_size);
  for (int i = 0; i < count; ++i) {
    std::vector<int> all(m);
    for (int x = 0; x < m; ++x) all[x] = x;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(floor_size + extra(rng) / 2);
    f.members.push_back(all);
  }
  return f;
}

void check_grouping(const SubsetFamily& f, const BlockGrouping& g, const Rational& eps) {
  std::map<int, int> seen;
  for (const auto& b : g.blocks) {
    std::vector<int> common = f.members[b.owners[0]];
    std::sort(common.begin(), common.end());
    for (int i = 1; i < 4; ++i) {
      auto other = f.members[b.owners[i]];
      std::sort(other.begin(), other.end());
      std::vector<int> next;
      std::set_intersection(common.begin(), common.end(), other.begin(), other.end(), std::back_inserter(next));
      common = next;
    }
    CHECK(common == b.intersection);
    CHECK(at_least(static_cast<std::int64_t>(common.size()), block_intersection_floor(eps), f.ground_size));
    for (int o : b.owners) ++seen[o];
  }
  for (int o : g.leftover) ++seen[o];
  CHECK(seen.size() == f.members.size());
  for (const auto& [o, c] : seen) CHECK(c == 1);
}

}  // namespace

TEST_CASE("identical full members form full blocks") {
  SubsetFamily f{10, {}, {}};
  std::vector<int> all(10);
  for (int i = 0; i < 10; ++i) all[i] = i;
  for (int i = 0; i < 8; ++i) f.members.push_back(all);
  auto g = group_blocks(f, Rational(1));
  CHECK(g.blocks.size() == 2);
  CHECK(g.leftover.empty());
  for (const auto& b : g.blocks) CHECK(b.intersection.size() == 10);
}

TEST_CASE("three members cannot form a block") {
  SubsetFamily f{4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}}, {7, 8, 9}};
  auto g = group_blocks(f, Rational(1, 2));
  CHECK(g.blocks.empty());
  CHECK(g.leftover == std::vector<int>{7, 8, 9});
}

TEST_CASE("undersized members are rejected by owner") {
  SubsetFamily f{10, {{0, 1, 2, 3, 4}, {0}}, {3, 4}};
  try {
    group_blocks(f, Rational(1, 2));
    FAIL("accepted");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("member 4") != std::string::npos);
  }
}

TEST_CASE("constants") {
  CHECK(block_intersection_floor(Rational(1, 2)) == Rational(1, 1024));
  CHECK(block_leftover_bound(Rational(1, 4)) == Rational(136));
}

TEST_CASE("random families keep the block invariants") {
  for (auto eps : {Rational(1), Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto f = random_family(200, 30 + static_cast<int>(seed) * 7, eps, seed);
      auto g = group_blocks(f, eps);
      check_grouping(f, g, eps);
      CHECK(Rational(static_cast<std::int64_t>(g.leftover.size())) <= block_leftover_bound(eps));
    }
  }
}

TEST_CASE("posa covers fixed graphs") {
  auto k5 = ColouredHypergraph::monochromatic_complete(2, 5).host();
  auto cover = posa_cycle_cover(k5);
  REQUIRE(cover.size() == 1);
  CHECK(cover[0].size() == 5);
  auto empty = posa_cycle_cover(Hypergraph(2, 4, {}));
  CHECK(empty.size() == 4);
  for (const auto& c : empty) CHECK(c.size() == 1);
}

TEST_CASE("posa covers stay within alpha and partition the vertices") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const double p = seed % 3 == 0 ? 0.2 : seed % 3 == 1 ? 0.5 : 0.8;
    const int n = 3 + static_cast<int>(seed % 10);
    auto g = testsupport::random_coloured(2, n, 1, p, seed).host();
    auto cover = posa_cycle_cover(g);
    std::vector<int> hits(n, 0);
    for (const auto& c : cover) {
      for (Vertex v : c) ++hits[v];
      if (c.size() == 2) CHECK(g.contains(c));
      if (c.size() >= 3) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          CHECK(g.contains(std::vector<Vertex>{c[i], c[(i + 1) % c.size()]}));
        }
      }
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK(static_cast<int>(cover.size()) <= testsupport::brute_alpha(g));
    for (const auto& path : posa_path_cover(g)) {
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        CHECK(g.contains(std::vector<Vertex>{path[i], path[i + 1]}));
      }
    }
  }
}

TEST_CASE("transversal of an edgeless graph is lexicographically least") {
  Hypergraph h(3, 9, {});
  auto r = independent_transversal(h, {{2, 0}, {5, 4}, {8, 7}});
  REQUIRE(r.transversal);
  CHECK(*r.transversal == std::vector<Vertex>{0, 4, 7});
}

TEST_CASE("k = 2, m = 2 with half-sparse neighbourhoods") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    const std::vector<Vertex> b1{0, 1, 2, 3, 4, 5}, b2{6, 7, 8, 9};
    std::vector<Edge> edges;
    for (Vertex v : b2) {
      auto pool = b1;
      std::shuffle(pool.begin(), pool.end(), rng);
      for (int i = 0; i < 3; ++i) edges.push_back({std::min(v, pool[i]), std::max(v, pool[i])});
    }
    Hypergraph h(2, 10, edges);
    bool exists = false;
    for (Vertex a : b1) {
      for (Vertex b : b2) exists = exists || !h.contains(std::vector<Vertex>{a, b});
    }
    REQUIRE(exists);
    auto r = independent_transversal(h, {b1, b2});
    REQUIRE(r.transversal);
    CHECK(testsupport::is_independent_transversal(h, {b1, b2}, *r.transversal));
  }
}

TEST_CASE("k = 3, m = 4 with blocks of 50") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto inst = testsupport::make_transversal_instance(3, 4, 50, seed);
    auto r = independent_transversal(inst.h, inst.blocks);
    REQUIRE(r.transversal);
    CHECK(r.relaxed_blocks.empty());
    CHECK(testsupport::is_independent_transversal(inst.h, inst.blocks, *r.transversal));
  }
}

TEST_CASE("hypothesis violations are named") {
  // vertex 4 in block 3 sees every pair of blocks 1 and 2
  std::vector<Edge> edges;
  for (Vertex a : {0, 1}) {
    for (Vertex b : {2, 3}) edges.push_back({a, b, 4});
  }
  Hypergraph h(3, 6, edges);
  try {
    independent_transversal(h, {{0, 1}, {2, 3}, {4, 5}});
    FAIL("accepted");
  } catch (const TransversalHypothesisViolation& v) {
    CHECK(v.block() == 3);
    CHECK(v.lower_blocks() == std::vector<int>{1, 2});
    CHECK(v.vertex() == 4);
  }
  // unchecked, the greedy takes 4 first and then has nowhere to go in block 1
  auto r = independent_transversal(h, {{0, 1}, {2, 3}, {4, 5}}, {false});
  CHECK_FALSE(r.transversal);
  CHECK(r.relaxed_blocks == std::vector<int>{2});
  REQUIRE(r.stuck_block);
  CHECK(*r.stuck_block == 1);
}

TEST_CASE("unchecked mode reports a stuck block") {
  // every vertex of block 1 is adjacent to the only vertex of block 2
  Hypergraph h(2, 3, {{0, 2}, {1, 2}});
  auto r = independent_transversal(h, {{0, 1}, {2}}, {false});
  CHECK_FALSE(r.transversal);
  REQUIRE(r.stuck_block);
  CHECK(*r.stuck_block == 1);
}
