#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/hypergraph.hpp"

using namespace tightcycle;
using testsupport::all_subsets;
using testsupport::random_coloured;

TEST_CASE("hypergraph construction rejects malformed edges") {
  CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 5}}), InvalidArgument);
  CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 2}, {2, 1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(ColouredHypergraph(2, 3, 2, {{0, 1}}, {3}), InvalidArgument);
}

TEST_CASE("edge lookup is order independent") {
  Hypergraph h(3, 6, {{4, 1, 2}, {0, 3, 5}});
  CHECK(h.contains(std::vector<Vertex>{2, 4, 1}));
  CHECK(h.contains(std::vector<Vertex>{5, 0, 3}));
  CHECK_FALSE(h.contains(std::vector<Vertex>{0, 1, 2}));
  CHECK_FALSE(h.contains(std::vector<Vertex>{1, 2}));
  CHECK(h.edge(*h.find(std::vector<Vertex>{2, 1, 4})) == Edge{1, 2, 4});
}

TEST_CASE("sparse index path agrees with brute force") {
  // C(400, 4) exceeds the dense limit, so the hash index is used
  std::vector<Edge> edges = {{0, 100, 200, 399}, {5, 6, 7, 8}, {1, 2, 3, 398}};
  Hypergraph h(4, 400, edges);
  for (const auto& e : edges) CHECK(h.contains(e));
  CHECK_FALSE(h.contains(std::vector<Vertex>{0, 100, 200, 398}));
}

TEST_CASE("link graph of complete K4(3) at a vertex") {
  auto g = ColouredHypergraph::monochromatic_complete(3, 4);
  const std::vector<Vertex> pins{0};
  auto lk = link_graph(g, pins);
  CHECK(lk.uniformity == 2);
  CHECK(lk.edges == std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("colour filter with no matching edge gives an empty link") {
  ColouredHypergraph g(3, 3, 2, {{0, 1, 2}}, {1});
  const std::vector<Vertex> pins{0};
  CHECK(link_graph(g, pins, nullptr, 2).edges.empty());
  CHECK_THROWS_AS(link_graph(g, pins, nullptr, 3), InvalidArgument);
  const std::vector<Vertex> too_many{0, 1, 2};
  CHECK_THROWS_AS(link_graph(g, too_many), InvalidArgument);
}

TEST_CASE("partite link size matches an edge scan") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int k = 3 + static_cast<int>(seed % 2);
    auto g = random_coloured(k, 11, 2, 0.6, seed);
    std::vector<VertexSet> parts;
    for (int p = 0; p < k - 1; ++p) parts.push_back({1 + 3 * p, 2 + 3 * p, 3 + 3 * p});
    for (Colour c = 1; c <= 2; ++c) {
      std::int64_t scanned = 0;
      for (std::size_t id = 0; id < g.host().size(); ++id) {
        const auto& e = g.host().edge(id);
        if (g.colour(id) != c || e[0] != 0) continue;
        std::vector<int> hits(k - 1, 0);
        bool ok = true;
        for (std::size_t j = 1; j < e.size(); ++j) {
          int owner = -1;
          for (int p = 0; p < k - 1; ++p) {
            if (std::count(parts[p].begin(), parts[p].end(), e[j])) owner = p;
          }
          if (owner < 0) ok = false;
          else ++hits[owner];
        }
        ok = ok && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
        scanned += ok;
      }
      const std::vector<Vertex> pins{0};
      CHECK(link_size(g, pins, parts, c) == scanned);
      CHECK(static_cast<std::int64_t>(link_graph(g, pins, &parts, c).size()) == scanned);
    }
  }
}

TEST_CASE("partite links: degree sum over a part counts the partite edges") {
  auto g = random_coloured(3, 12, 1, 0.5, 99);
  const std::vector<VertexSet> blocks{{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}};
  std::int64_t partite_edges = 0;
  for (const auto& e : g.host().edges()) {
    std::set<int> seen;
    for (Vertex v : e) seen.insert(v / 4);
    partite_edges += seen.size() == 3;
  }
  std::int64_t degree_sum = 0;
  const std::vector<VertexSet> rest{blocks[1], blocks[2]};
  for (Vertex v : blocks[0]) {
    const std::vector<Vertex> pins{v};
    degree_sum += link_size(g, pins, rest);
  }
  CHECK(degree_sum == partite_edges);
}

TEST_CASE("independence number on small fixed graphs") {
  CHECK(independence_number(Hypergraph(3, 5, {})) == 5);
  CHECK(independence_number(ColouredHypergraph::monochromatic_complete(3, 5).host()) == 2);
  CHECK(independence_number(ColouredHypergraph::monochromatic_complete(2, 7).host()) == 1);
  CHECK_THROWS_AS(independence_number(Hypergraph(2, 30, {})), SizeLimit);
  CHECK(independence_number(Hypergraph(2, 30, {}), {40}) == 30);
}

TEST_CASE("independence number matches subset enumeration") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    const int n = 4 + static_cast<int>(seed % 9);
    const double p = 0.15 + 0.1 * static_cast<double>(seed % 7);
    auto g = random_coloured(k, n, 1, p, seed);
    CAPTURE(seed);
    CHECK(independence_number(g.host()) == testsupport::brute_alpha(g.host()));
  }
}

TEST_CASE("density is exact") {
  CHECK(density(ColouredHypergraph::monochromatic_complete(3, 6).host()) == Rational(1));
  CHECK(density(Hypergraph(3, 6, {})) == Rational(0));
  auto ten = all_subsets(6, 3);
  ten.resize(10);
  CHECK(density(Hypergraph(3, 6, ten)) == Rational(1, 2));
  CHECK_THROWS_AS(density(Hypergraph(3, 2, {})), InvalidArgument);
}

TEST_CASE("partite clique sets") {
  CHECK(partite_clique_set(VertexPartition({{0}, {1}, {2}}), 3).edges() == std::vector<Edge>{{0, 1, 2}});
  CHECK(partite_clique_set(VertexPartition({{0, 1}, {2, 3}}), 2).size() == 4);
  const std::vector<std::vector<int>> sizes{{1, 2, 3}, {2, 2, 2}, {3, 1, 4}, {2, 3, 2, 2}};
  for (const auto& s : sizes) {
    std::vector<VertexSet> blocks;
    int next = 0;
    std::size_t product = 1;
    for (int size : s) {
      VertexSet b;
      for (int i = 0; i < size; ++i) b.push_back(next++);
      blocks.push_back(b);
      product *= size;
    }
    auto h = partite_clique_set(VertexPartition(blocks), static_cast<int>(s.size()));
    CHECK(h.size() == product);
  }
}

TEST_CASE("clique hypergraph") {
  auto complete2 = ColouredHypergraph::monochromatic_complete(2, 6).host();
  CHECK(clique_hypergraph(complete2, 3).size() == 20);
  Hypergraph c5(2, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(clique_hypergraph(c5, 3).size() == 0);
  CHECK(clique_hypergraph(c5, 7).size() == 0);
  CHECK_THROWS_AS(clique_hypergraph(c5, 1), InvalidArgument);
}

TEST_CASE("coloured clique hypergraph matches brute-force K4 enumeration") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_coloured(2, 8, 2, 1.0, seed);
    const testsupport::EdgeTable table(g);
    std::vector<std::pair<Edge, Colour>> expected;
    for (const auto& q : all_subsets(8, 4)) {
      std::set<Colour> seen;
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) seen.insert(table.colour({q[a], q[b]}));
      }
      if (seen.size() == 1 && *seen.begin() != 0) expected.emplace_back(q, *seen.begin());
    }
    auto lifted = clique_hypergraph(g, 4);
    REQUIRE(lifted.host().size() == expected.size());
    for (const auto& [q, c] : expected) CHECK(lifted.colour_of(q) == c);
  }
}

TEST_CASE("clique hypergraph is monotone under edge addition") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto sparse = random_coloured(2, 9, 1, 0.5, seed);
    auto edges = sparse.host().edges();
    for (const auto& e : all_subsets(9, 2)) {
      if (!sparse.host().contains(e) && (e[0] + e[1] + static_cast<int>(seed)) % 3 == 0) edges.push_back(e);
    }
    Hypergraph denser(2, 9, edges);
    auto before = clique_hypergraph(sparse.host(), 3);
    auto after = clique_hypergraph(denser, 3);
    for (const auto& e : before.edges()) CHECK(after.contains(e));
  }
}
