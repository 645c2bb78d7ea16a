#include "doctest.h"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>
#include <vector>

#include "kpm/constructions.hpp"
#include "kpm/hypergraph.hpp"
#include "kpm/matching.hpp"
#include "kpm/structure.hpp"

using namespace kpm;

namespace {

KPartiteHypergraph complete(int n) {
  std::vector<std::vector<int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) edges.push_back({a, b, c});
  return KPartiteHypergraph::build(3, {n, n, n}, edges);
}

// pair-type fixture: e1 = (0,0,0), e2 = (1,1,1), S = (3,3,3), extra edges
// picked per test from the six candidate triples
KPartiteHypergraph pair_fixture(const std::vector<std::vector<int>>& extra) {
  std::vector<std::vector<int>> edges{{0, 0, 0}, {1, 1, 1}};
  edges.insert(edges.end(), extra.begin(), extra.end());
  return KPartiteHypergraph::build(3, {4, 4, 4}, edges);
}

LegalSet far_transversal() { return LegalSet({{0, 3}, {1, 3}, {2, 3}}); }

SimpleGraph path_graph(int n) {
  SimpleGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

}  // namespace

TEST_CASE("pair types count witnessing triples per class") {
  // class-0 candidates: (3,0,1) and (3,1,0); class-1: (1,3,0) and (0,3,1);
  // class-2: (0,1,3) and (1,0,3)
  auto h = pair_fixture({{3, 0, 1}, {3, 1, 0}, {0, 3, 1}, {1, 0, 3}});
  EdgeId e1 = *h.find_edge(std::array{0, 0, 0});
  EdgeId e2 = *h.find_edge(std::array{1, 1, 1});
  auto t = edge_pair_type(h, far_transversal(), e1, e2);
  CHECK(t.a[0] == 2);
  CHECK(t.a[1] == 1);
  CHECK(t.a[2] == 1);
  CHECK(t.sum() == 4);
  // swapping the pair keeps the type
  CHECK(edge_pair_type(h, far_transversal(), e2, e1) == t);
}

TEST_CASE("pair types reject covered transversals") {
  auto h = pair_fixture({});
  EdgeId e1 = *h.find_edge(std::array{0, 0, 0});
  EdgeId e2 = *h.find_edge(std::array{1, 1, 1});
  LegalSet covered({{0, 0}, {1, 3}, {2, 3}});
  CHECK_THROWS_AS(edge_pair_type(h, covered, e1, e2), std::invalid_argument);
  CHECK_THROWS_AS(edge_pair_type(h, far_transversal(), e1, e1), std::invalid_argument);
}

TEST_CASE("path classification distinguishes the two centers") {
  EdgeId e1, e2;
  {
    // witnesses touching e1's class-0 vertex: expect the center on e1
    auto h = pair_fixture({{3, 0, 1}, {3, 1, 0}, {0, 3, 1}, {0, 1, 3}});
    e1 = *h.find_edge(std::array{0, 0, 0});
    e2 = *h.find_edge(std::array{1, 1, 1});
    auto t = edge_pair_type(h, far_transversal(), e1, e2);
    CHECK(t.sum() == 4);
    auto form = classify_path_form(h, far_transversal(), e1, e2);
    REQUIRE(form.has_value());
    CHECK(*form == PathForm::center_in_first);
  }
  {
    // witnesses touching e2's class-0 vertex instead
    auto h = pair_fixture({{3, 0, 1}, {3, 1, 0}, {1, 3, 0}, {1, 0, 3}});
    e1 = *h.find_edge(std::array{0, 0, 0});
    e2 = *h.find_edge(std::array{1, 1, 1});
    auto form = classify_path_form(h, far_transversal(), e1, e2);
    REQUIRE(form.has_value());
    CHECK(*form == PathForm::center_in_second);
  }
}

TEST_CASE("path classification rejects split witnesses") {
  // two disjoint two-edge pieces, not a path
  auto h = pair_fixture({{3, 0, 1}, {3, 1, 0}, {0, 3, 1}, {1, 0, 3}});
  EdgeId e1 = *h.find_edge(std::array{0, 0, 0});
  EdgeId e2 = *h.find_edge(std::array{1, 1, 1});
  CHECK(!classify_path_form(h, far_transversal(), e1, e2).has_value());
}

TEST_CASE("path classification needs a {2,1,1} type") {
  auto h = pair_fixture({{3, 0, 1}});
  EdgeId e1 = *h.find_edge(std::array{0, 0, 0});
  EdgeId e2 = *h.find_edge(std::array{1, 1, 1});
  CHECK(!classify_path_form(h, far_transversal(), e1, e2).has_value());
}

TEST_CASE("matching graph aggregates every pair") {
  auto h = complete(4);
  Matching m(h);
  m.add(*h.find_edge(std::array{0, 0, 0}));
  m.add(*h.find_edge(std::array{1, 1, 1}));
  m.add(*h.find_edge(std::array{2, 2, 2}));
  LegalSet s({{0, 3}, {1, 3}, {2, 3}});
  auto g = matching_graph(h, m, s, true);
  CHECK(g.total_pairs() == 3);
  EdgeType full;
  full.a = {2, 2, 2};
  CHECK(g.count(full) == 3);  // complete host: every candidate triple present
  CHECK(g.count_axis(0, 2) == 3);
  CHECK(g.count_axis(1, 0) == 0);
  CHECK(g.pairs().size() == 3);
}

TEST_CASE("matching graph requires an uncovered transversal") {
  auto h = complete(3);
  Matching m(h);
  m.add(*h.find_edge(std::array{0, 0, 0}));
  LegalSet covered({{0, 0}, {1, 2}, {2, 2}});
  CHECK_THROWS_AS(matching_graph(h, m, covered), std::invalid_argument);
}

TEST_CASE("strongly connected matched vertices") {
  auto big = complete(9);
  Matching m(big);
  m.add(*big.find_edge(std::array{0, 0, 0}));
  auto conn = i_connections(big, m, VertexRef{0, 5});
  REQUIRE(conn.size() == 2);  // classes 1 and 2 of the one matched edge
  CHECK(conn[0].second == 1);
  CHECK(conn[1].second == 2);

  auto small = complete(7);
  Matching sm(small);
  sm.add(*small.find_edge(std::array{0, 0, 0}));
  CHECK(i_connections(small, sm, VertexRef{0, 5}).empty());
  // lowering the cutoff brings the pairs back
  CHECK(i_connections(small, sm, VertexRef{0, 5}, 5).size() == 2);
}

TEST_CASE("i_connections rejects covered query vertices") {
  auto h = complete(4);
  Matching m(h);
  m.add(*h.find_edge(std::array{0, 0, 0}));
  CHECK_THROWS_AS(i_connections(h, m, VertexRef{0, 0}), std::invalid_argument);
}

TEST_CASE("simple graph bookkeeping") {
  SimpleGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  CHECK(g.order() == 5);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(1) == 2);
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 2));
  g.remove_vertex(1);
  CHECK(g.order() == 4);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(0) == 0);
  CHECK(!g.has_edge(0, 1));
}

TEST_CASE("peeling dissolves sparse graphs") {
  // a path loses its endpoints, then everything
  CHECK(!peel_subgraph(path_graph(4), 0.4).has_value());
  // a star collapses once the leaves go
  SimpleGraph star(5);
  for (int leaf = 1; leaf < 5; ++leaf) star.add_edge(0, leaf);
  CHECK(!peel_subgraph(star, 0.3).has_value());
}

TEST_CASE("peeling keeps dense cores intact") {
  SimpleGraph g(5);
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) g.add_edge(u, v);
  auto core = peel_subgraph(g, 0.5);
  REQUIRE(core.has_value());
  CHECK(core->order() == 5);
  CHECK(core->edge_count() == 10);
}

TEST_CASE("surviving cores meet the degree guarantee") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 8 + trial % 17;
    double p = 0.15 + 0.03 * (trial % 5);
    SimpleGraph g(n);
    long long edges = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng) < p) {
          g.add_edge(u, v);
          ++edges;
        }
    double eps = 0.1;
    auto core = peel_subgraph(g, eps);
    long long budget = static_cast<long long>(2 * eps * (n * (n - 1) / 2.0));
    if (edges > budget) REQUIRE(core.has_value());
    if (core.has_value()) {
      for (int v : core->vertices()) CHECK(core->degree(v) >= eps * n);
      CHECK(edges - core->edge_count() < 2 * eps * (n * (n - 1) / 2.0));
    }
  }
}

TEST_CASE("closeness counts missing template edges") {
  ExtremalTemplate tmpl(3, 6, {2, 2, 2}, TemplateRule::uuw_uww);
  auto exact_copy = tmpl.instantiate();
  auto rep = closeness(exact_copy, tmpl);
  CHECK(rep.missing == 0);
  CHECK(rep.epsilon == 0.0);

  // drop two template edges, add one non-template edge: misses only the drops
  std::vector<std::vector<int>> edges;
  for (EdgeId e = 2; e < static_cast<EdgeId>(exact_copy.edge_count()); ++e) {
    auto t = exact_copy.edge(e);
    edges.push_back({t[0], t[1], t[2]});
  }
  edges.push_back({5, 5, 5});  // all-W triple, outside the strip rule
  auto noisy = KPartiteHypergraph::build(3, {6, 6, 6}, edges);
  auto rep2 = closeness(noisy, tmpl);
  CHECK(rep2.missing == 2);
  CHECK(rep2.epsilon == doctest::Approx(2.0 / 216.0));
}

TEST_CASE("per-vertex misses add up to three times the total") {
  ExtremalTemplate tmpl(3, 6, {2, 2, 2}, TemplateRule::uuw_uww);
  auto full = tmpl.instantiate();
  std::vector<std::vector<int>> edges;
  for (EdgeId e = 0; e < static_cast<EdgeId>(full.edge_count()); ++e) {
    if (e % 7 == 0) continue;
    auto t = full.edge(e);
    edges.push_back({t[0], t[1], t[2]});
  }
  auto h = KPartiteHypergraph::build(3, {6, 6, 6}, edges);
  auto good = classify_good_vertices(h, tmpl, 0.5);
  auto rep = closeness(h, tmpl);
  long long sum = 0;
  for (const auto& cls : good.missing)
    for (long long v : cls) sum += v;
  CHECK(sum == 3 * rep.missing);
}

TEST_CASE("vertices stripped of their link turn bad") {
  ExtremalTemplate tmpl(3, 6, {2, 2, 2}, TemplateRule::uuw_uww);
  auto full = tmpl.instantiate();
  std::vector<std::vector<int>> edges;
  for (EdgeId e = 0; e < static_cast<EdgeId>(full.edge_count()); ++e) {
    auto t = full.edge(e);
    if (t[0] == 0) continue;  // vertex (0,0) loses every link edge
    edges.push_back({t[0], t[1], t[2]});
  }
  auto h = KPartiteHypergraph::build(3, {6, 6, 6}, edges);
  auto good = classify_good_vertices(h, tmpl, 0.01);
  REQUIRE(!good.bad.empty());
  CHECK(std::find(good.bad.begin(), good.bad.end(), VertexRef{0, 0}) != good.bad.end());
  CHECK(good.missing[0][0] == tmpl.link_degree({0, 0}));

  // the intact instance has no bad vertices at any sane alpha
  auto clean = classify_good_vertices(full, tmpl, 0.01);
  CHECK(clean.bad.empty());
}

TEST_CASE("pair types inside the one-or-two rule strip family") {
  // two disjoint edges with their third vertex in the strip; every candidate
  // triple keeps two plain vertices, so membership hinges on the transversal
  auto h = build_family_hprime(9, 3, 3, 3);
  EdgeId e1 = *h.find_edge(std::array{0, 0, 6});
  EdgeId e2 = *h.find_edge(std::array{1, 1, 7});

  // third coordinate inside the strip: all six candidates carry one strip
  // vertex and qualify, the largest type the classifier can emit
  auto hot = edge_pair_type(h, LegalSet({{0, 5}, {1, 5}, {2, 8}}), e1, e2);
  CHECK(hot.a[2] == 2);
  CHECK(hot == EdgeType{{2, 2, 2}});
  CHECK(hot.sum() == 6);

  // third coordinate outside the strip: the class-three candidates have no
  // strip vertex at all and drop out
  auto cold = edge_pair_type(h, LegalSet({{0, 5}, {1, 5}, {2, 5}}), e1, e2);
  CHECK(cold.a[2] == 0);
  CHECK(cold == EdgeType{{2, 2, 0}});
  for (int i = 0; i < 3; ++i) {
    CHECK(hot.a[i] <= 2);
    CHECK(cold.a[i] <= 2);
  }
}

TEST_CASE("peeling respects the cutoff on both sides") {
  // a path clears a low bar whole
  auto core = peel_subgraph(path_graph(4), 0.2);
  REQUIRE(core.has_value());
  CHECK(core->order() == 4);
  CHECK(core->edge_count() == 3);
  // a star never does once the bar tops the leaf degree
  SimpleGraph star(6);
  for (int leaf = 1; leaf < 6; ++leaf) star.add_edge(0, leaf);
  CHECK(!peel_subgraph(star, 0.5).has_value());
}
