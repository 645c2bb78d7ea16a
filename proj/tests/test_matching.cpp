#include "doctest.h"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>
#include <vector>

#include "kpm/constructions.hpp"
#include "kpm/hypergraph.hpp"
#include "kpm/matching.hpp"

using namespace kpm;

namespace {

// reference solver: plain include/exclude over the edge list, no pruning
// beyond the remaining-edge count, so it is independent of the search under test
int oracle_max(const KPartiteHypergraph& h) {
  int k = h.uniformity();
  std::vector<std::vector<char>> used(k);
  for (int c = 0; c < k; ++c) used[c].assign(h.class_size(c), 0);
  int best = 0;
  auto rec = [&](auto&& self, EdgeId from, int size) -> void {
    best = std::max(best, size);
    if (size + static_cast<int>(h.edge_count()) - from <= best) return;
    for (EdgeId e = from; e < static_cast<EdgeId>(h.edge_count()); ++e) {
      auto t = h.edge(e);
      bool free = true;
      for (int c = 0; c < k; ++c)
        if (used[c][t[c]]) free = false;
      if (!free) continue;
      for (int c = 0; c < k; ++c) used[c][t[c]] = 1;
      self(self, e + 1, size + 1);
      for (int c = 0; c < k; ++c) used[c][t[c]] = 0;
    }
  };
  rec(rec, 0, 0);
  return best;
}

KPartiteHypergraph random_graph(int n, double p, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::vector<int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (coin(rng) < p) edges.push_back({a, b, c});
  return KPartiteHypergraph::build(3, {n, n, n}, edges);
}

KPartiteHypergraph complete(int n) {
  std::vector<std::vector<int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) edges.push_back({a, b, c});
  return KPartiteHypergraph::build(3, {n, n, n}, edges);
}

bool greedy_is_maximal(const KPartiteHypergraph& h, const Matching& m) {
  for (EdgeId e = 0; e < static_cast<EdgeId>(h.edge_count()); ++e)
    if (m.can_add(e)) return false;
  return true;
}

}  // namespace

TEST_CASE("exact search matches the reference on random graphs") {
  for (unsigned seed = 1; seed <= 20; ++seed) {
    int n = 3 + static_cast<int>(seed % 2);
    auto h = random_graph(n, 0.35, seed * 101);
    auto res = max_matching_exact(h);
    CHECK(res.optimal);
    CHECK(res.matching.verify(h));
    CHECK(res.matching.size() == oracle_max(h));
  }
}

TEST_CASE("exact search matches the reference on construction families") {
  std::vector<KPartiteHypergraph> graphs;
  graphs.push_back(build_family_hk(3, 4, 3));
  graphs.push_back(build_family_hk(3, 5, 4));
  graphs.push_back(build_family_hstar(3, 4, 4));
  graphs.push_back(build_family_hprime(4, 1, 1, 2));
  graphs.push_back(build_counterexample6());
  for (const auto& h : graphs) {
    auto res = max_matching_exact(h);
    CHECK(res.optimal);
    CHECK(res.matching.size() == oracle_max(h));
  }
  // one designated-vertex edge can join a matching of the base family
  auto hs = build_family_hstar(3, 5, 4);
  CHECK(max_matching_exact(hs).matching.size() == 4);
}

TEST_CASE("perfect matching decision") {
  auto whole = complete(4);
  auto yes = has_perfect_matching(whole);
  REQUIRE(yes.status == PmStatus::yes);
  REQUIRE(yes.witness.has_value());
  CHECK(yes.witness->is_perfect());
  CHECK(yes.witness->verify(whole));

  auto blocked = build_family_hk(3, 4, 3);
  CHECK(has_perfect_matching(blocked).status == PmStatus::no);

  auto unequal = KPartiteHypergraph::build(3, {2, 2, 3}, {{0, 0, 0}, {1, 1, 1}});
  CHECK(has_perfect_matching(unequal).status == PmStatus::no);

  auto empty_classes = KPartiteHypergraph::build(3, {0, 0, 0}, {});
  auto trivial = has_perfect_matching(empty_classes);
  CHECK(trivial.status == PmStatus::yes);
  CHECK(trivial.witness->size() == 0);
}

TEST_CASE("exhausted budget reports unknown, not no") {
  auto h = random_graph(6, 0.2, 9);
  SearchBudget tight;
  tight.node_limit = 1;
  auto ans = has_perfect_matching(h, tight);
  CHECK(ans.status != PmStatus::no);
  auto res = max_matching_exact(h, tight);
  CHECK(!res.optimal);
  CHECK(res.matching.verify(h));
}

TEST_CASE("parallel root split returns the same size") {
  for (unsigned seed : {3u, 14u, 29u}) {
    auto h = random_graph(5, 0.3, seed);
    auto one = max_matching_exact(h);
    SearchBudget par;
    par.threads = 2;
    auto two = max_matching_exact(h, par);
    CHECK(one.optimal);
    CHECK(two.optimal);
    CHECK(one.matching.size() == two.matching.size());
  }
}

TEST_CASE("greedy matching is maximal, valid and seed-stable") {
  auto h = random_graph(6, 0.25, 42);
  auto a = greedy_matching(h, 7);
  auto b = greedy_matching(h, 7);
  auto c = greedy_matching(h, 8);
  CHECK(a.verify(h));
  CHECK(greedy_is_maximal(h, a));
  CHECK(a.edge_ids() == b.edge_ids());
  CHECK(c.verify(h));
  CHECK(greedy_is_maximal(h, c));
}

TEST_CASE("local exchange depth validation") {
  auto h = build_counterexample6();
  Matching m(h);
  CHECK_THROWS_AS(augment_local(h, m, 0), std::invalid_argument);
  CHECK_THROWS_AS(augment_local(h, m, 4), std::invalid_argument);
}

TEST_CASE("augment to fixpoint reaches the optimum on small graphs") {
  auto h = KPartiteHypergraph::build(3, {2, 2, 2},
                                     {{0, 0, 0}, {1, 1, 1}, {0, 1, 1}});
  Matching stuck(h);
  stuck.add(*h.find_edge(std::array{0, 1, 1}));
  auto grown = augment_local(h, stuck, 1);
  REQUIRE(grown.has_value());
  CHECK(grown->size() == 2);
  CHECK(grown->is_perfect());

  auto fix = augment_to_fixpoint(h, stuck, 1);
  CHECK(fix.size() == 2);
}

TEST_CASE("direct extension is found at any depth") {
  auto h = complete(3);
  Matching m(h);
  m.add(*h.find_edge(std::array{0, 0, 0}));
  auto grown = augment_local(h, m, 1);
  REQUIRE(grown.has_value());
  CHECK(grown->size() == 2);
  auto fix = augment_to_fixpoint(h, m, 2);
  CHECK(fix.size() == 3);
  CHECK(fix.is_perfect());
}

TEST_CASE("intersecting family detection") {
  CHECK(is_intersecting_family(build_counterexample6()));
  CHECK(!is_intersecting_family(complete(2)));
  CHECK(is_intersecting_family(KPartiteHypergraph::build(3, {2, 2, 2}, {})));
  CHECK(is_intersecting_family(KPartiteHypergraph::build(3, {2, 2, 2}, {{0, 0, 0}})));
}

TEST_CASE("balanced cover search finds the designed cover") {
  auto h = build_family_h(6, {1, 2, 2});
  std::vector<int> profile{1, 2, 2};
  auto res = balanced_cover_check(h, profile);
  REQUIRE(res.status == CoverSearchResult::Status::found);
  REQUIRE(res.witness.has_value());
  CHECK(cover_witness_valid(h, *res.witness, profile));
}

TEST_CASE("balanced cover search proves absence") {
  auto h = complete(3);
  std::vector<int> profile{1, 1, 0};
  // a complete graph needs a full class (or a blown budget) to be covered
  auto res = balanced_cover_check(h, profile);
  CHECK(res.status == CoverSearchResult::Status::none);
  std::vector<int> full{3, 0, 0};
  auto covered = balanced_cover_check(h, full);
  REQUIRE(covered.status == CoverSearchResult::Status::found);
  CHECK(cover_witness_valid(h, *covered.witness, full));
}

TEST_CASE("cover witness validation is strict") {
  auto h = build_counterexample6();
  std::vector<int> profile{2, 0, 0};
  CoverWitness w;
  w.vertices = {{0, 0}, {0, 1}};
  CHECK(cover_witness_valid(h, w, profile));  // class 0 covers all 4 edges
  CoverWitness wrong;
  wrong.vertices = {{0, 0}, {1, 0}};
  CHECK(!cover_witness_valid(h, wrong, profile));  // profile mismatch
  CoverWitness partial;
  partial.vertices = {{0, 0}};
  CHECK(!cover_witness_valid(h, partial, profile));
}

TEST_CASE("exhaustive threshold sweep at n=2") {
  auto plain = brute_force_threshold(3, 2);
  CHECK(plain.value == 3);
  CHECK(plain.max_delta_no_pm == 2);
  CHECK(plain.graphs_examined == 256);
  auto sym = brute_force_threshold(3, 2, true);
  CHECK(sym.value == 3);
  CHECK(sym.max_delta_no_pm == 2);
  CHECK(sym.graphs_examined < 256);
  auto tiny = brute_force_threshold(3, 1);
  CHECK(tiny.value == 1);
  CHECK_THROWS_AS(brute_force_threshold(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_threshold(4, 2), std::invalid_argument);
}

TEST_CASE("degree bound after removing one vertex") {
  // every edge of this family goes through the last class-2 vertex, so
  // removing a class-0 vertex keeps the matching number at 1
  auto h = build_family_h(4, {0, 0, 1});
  CHECK(check_degree_bound_after_removal(h, VertexRef{0, 0}, 1));
  // hypothesis failure is vacuous truth: complete graphs lose matching size
  auto whole = complete(3);
  CHECK(check_degree_bound_after_removal(whole, VertexRef{1, 2}, 3));
}

TEST_CASE("degree bound after removing a legal set") {
  auto h = build_family_h(4, {0, 0, 1});
  LegalSet t({{0, 0}, {1, 0}, {2, 3}});
  CHECK(check_degree_bound_after_removal(h, t, 1));
  for (unsigned seed : {5u, 6u, 7u}) {
    auto g = random_graph(3, 0.5, seed);
    LegalSet s({{0, 0}, {1, 1}, {2, 2}});
    CHECK(check_degree_bound_after_removal(g, s, oracle_max(g)));
  }
}

TEST_CASE("edge-list matching helper") {
  auto h = complete(3);
  std::vector<EdgeId> all(h.edge_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(h.edge_count()); ++e) all[e] = e;
  auto res = max_matching_on_edges(h, all, 3, 1u << 20);
  CHECK(res.exact);
  CHECK(res.edges.size() == 3);

  // stop_at cuts the search short once the target size appears
  auto two = max_matching_on_edges(h, all, 2, 1u << 20);
  CHECK(two.edges.size() == 2);

  // a candidate list sharing one vertex everywhere caps at 1
  std::vector<EdgeId> star;
  for (EdgeId e : h.incident({0, 0})) star.push_back(e);
  auto one = max_matching_on_edges(h, star, 5, 1u << 20);
  CHECK(one.exact);
  CHECK(one.edges.size() == 1);
}

TEST_CASE("tiny node cap disables the exact flag") {
  auto h = complete(4);
  std::vector<EdgeId> all(h.edge_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(h.edge_count()); ++e) all[e] = e;
  auto res = max_matching_on_edges(h, all, 99, 1);
  CHECK(!res.exact);
}

TEST_CASE("local exchanges lift a stuck greedy matching") {
  // one strip vertex per class: a greedy pass can burn two of them on one
  // edge and stall at two; a single release-and-replace round frees the pair
  auto h = build_family_h(5, {1, 1, 1});
  auto stuck = greedy_matching(h, 1);
  REQUIRE(stuck.size() == 2);
  auto lifted = augment_to_fixpoint(h, stuck, 2);
  CHECK(lifted.size() == 3);
  CHECK(max_matching_exact(h).matching.size() == 3);
}

TEST_CASE("designated-vertex family below the forcing degree has no perfect matching") {
  auto h = build_family_hstar(3, 5, 4);
  CHECK(has_perfect_matching(h).status == PmStatus::no);
}

TEST_CASE("no exchange escapes an intersecting family") {
  auto h = build_counterexample6();
  Matching m(h);
  m.add(0);
  for (int depth = 1; depth <= 3; ++depth) CHECK(!augment_local(h, m, depth).has_value());
}

TEST_CASE("cover profiles on the intersecting family") {
  auto h = build_counterexample6();
  std::vector<int> one{1, 0, 0};
  CHECK(balanced_cover_check(h, one).status == CoverSearchResult::Status::none);
  // either full pair in one class meets all four edges
  std::vector<int> pair{0, 0, 2};
  auto res = balanced_cover_check(h, pair);
  REQUIRE(res.status == CoverSearchResult::Status::found);
  CHECK(cover_witness_valid(h, *res.witness, pair));
}

TEST_CASE("degree bound holds on and off the hypotheses") {
  // wrong m: the premise about the maximum matching fails, bound is vacuous
  CHECK(check_degree_bound_after_removal(complete(3), VertexRef{0, 0}, 2));
  // honest case: removing a plain vertex keeps a maximum matching around
  auto h = build_family_hk(3, 6, 5);
  CHECK(check_degree_bound_after_removal(h, VertexRef{0, 0}, 5));
}
