// Acceptance battery: one line per criterion, nonzero exit on any failure.
// Each criterion carries the runtime ceiling it must stay under.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "kpm/absorption.hpp"
#include "kpm/constructions.hpp"
#include "kpm/hypergraph.hpp"
#include "kpm/matching.hpp"
#include "kpm/solver.hpp"
#include "kpm/structure.hpp"

using namespace kpm;

namespace {

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  bool pass = false;
  double elapsed_s = 0.0;
  std::string note;
};

KPartiteHypergraph complete(int n) {
  std::vector<std::vector<int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) edges.push_back({a, b, c});
  return KPartiteHypergraph::build(3, {n, n, n}, edges);
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

std::string describe(int n, int m, long long got, long long want) {
  return "n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + std::to_string(got) +
         " != " + std::to_string(want);
}

// 1. closed-form vertex degree vs the built family, every n <= 30
bool run_formula_agreement(std::string& note) {
  for (int n = 3; n <= 30; ++n)
    for (int m = 0; m <= n; ++m) {
      long long got = min_l_degree(build_family_hk(3, n, m), 1);
      long long want = delta_l_formula(3, 1, n, m);
      if (got != want) {
        note = describe(n, m, got, want);
        return false;
      }
    }
  return true;
}

// 2. extremal families sit exactly at the closed-form degree and have no PM
bool run_tightness(std::string& note) {
  for (int n = 3; n <= 14; ++n) {
    auto tv = threshold_exact(n);
    KPartiteHypergraph fam = tv.residue == 2 ? build_family_hstar(3, n, n - 1)
                                             : build_family_hk(3, n, n - 1);
    long long measured = min_l_degree(fam, 1);
    if (measured != tv.value) {
      note = "degree " + describe(n, n - 1, measured, tv.value);
      return false;
    }
    auto ans = has_perfect_matching(fam);
    if (ans.status != PmStatus::no) {
      note = "n=" + std::to_string(n) + ": oracle did not rule out a perfect matching";
      return false;
    }
  }
  return true;
}

// 3. the six-vertex counterexample's facts
bool run_counterexample(std::string& note) {
  auto h = build_counterexample6();
  if (min_l_degree(h, 1) != 2) {
    note = "min degree is not 2";
    return false;
  }
  auto res = max_matching_exact(h);
  if (!res.optimal || res.matching.size() != 1) {
    note = "matching number is not 1";
    return false;
  }
  if (has_perfect_matching(h).status != PmStatus::no) {
    note = "perfect matching not ruled out";
    return false;
  }
  if (!is_intersecting_family(h)) {
    note = "family is not intersecting";
    return false;
  }
  return true;
}

// 4. matching number of the meeting-W family equals min(n, sum of profile)
bool run_family_matching_sizes(std::string& note) {
  for (int n = 1; n <= 8; ++n)
    for (int d1 = 0; d1 <= n; ++d1)
      for (int d2 = 0; d2 <= n; ++d2)
        for (int d3 = 0; d3 <= n; ++d3) {
          auto h = build_family_h(n, {d1, d2, d3});
          auto res = max_matching_exact(h);
          int want = std::min(n, d1 + d2 + d3);
          if (!res.optimal || res.matching.size() != want) {
            note = "n=" + std::to_string(n) + " profile=" + std::to_string(d1) + "," +
                   std::to_string(d2) + "," + std::to_string(d3) + ": got " +
                   std::to_string(res.matching.size()) + " want " + std::to_string(want);
            return false;
          }
        }
  return true;
}

// 5. exhaustive n=2 sweep and the counterexample's place in it
bool run_brute_force(std::string& note) {
  auto rep = brute_force_threshold(3, 2);
  if (rep.graphs_examined != 256) {
    note = "expected 256 graphs, saw " + std::to_string(rep.graphs_examined);
    return false;
  }
  if (rep.value < 3) {
    note = "threshold " + std::to_string(rep.value) + " below 3";
    return false;
  }
  if (rep.max_delta_no_pm != 2) {
    note = "best degree without a matching is " + std::to_string(rep.max_delta_no_pm);
    return false;
  }
  auto c6 = build_counterexample6();
  if (min_l_degree(c6, 1) != 2 || has_perfect_matching(c6).status != PmStatus::no) {
    note = "counterexample does not witness degree 2 without a matching";
    return false;
  }
  return true;
}

// 6. pair types over maximum matchings never exceed a sum of 4
bool run_pair_type_bound(std::string& note) {
  std::vector<KPartiteHypergraph> corpus;
  for (int n = 3; n <= 7; ++n) {
    for (int m = 0; m <= n; ++m) corpus.push_back(build_family_hk(3, n, m));
    for (int m = 1; m <= n; ++m) corpus.push_back(build_family_hstar(3, n, m));
    for (int d1 = 1; d1 < n; ++d1)
      for (int d2 = 1; d1 + d2 < n; ++d2)
        corpus.push_back(build_family_hprime(n, d1, d2, n - d1 - d2));
    corpus.push_back(complete(n));
  }
  corpus.push_back(build_counterexample6());

  for (const auto& h : corpus) {
    auto res = max_matching_exact(h);
    if (!res.optimal) {
      note = "search budget tripped on a corpus instance";
      return false;
    }
    const auto& m = res.matching;
    if (m.size() < 2 || m.is_perfect()) continue;
    auto u0 = m.uncovered(0), u1 = m.uncovered(1), u2 = m.uncovered(2);
    for (const auto& x0 : u0)
      for (const auto& x1 : u1)
        for (const auto& x2 : u2) {
          LegalSet s({x0, x1, x2});
          const auto& ids = m.edge_ids();
          for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
              auto t = edge_pair_type(h, s, ids[i], ids[j]);
              if (t.sum() > 4) {
                note = "pair sum " + std::to_string(t.sum()) + " on a maximum matching";
                return false;
              }
            }
        }
  }
  return true;
}

// 7. peeling low-degree vertices keeps a dense core
bool run_peel_property(std::string& note) {
  std::mt19937 rng(20260818);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::array<double, 4> eps_grid{0.02, 0.05, 0.1, 0.15};
  int applicable = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 8 + trial % 57;
    double eps = eps_grid[trial % eps_grid.size()];
    double p = 2.0 * eps + 0.3 * coin(rng);
    SimpleGraph g(n);
    long long edges = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng) < p) {
          g.add_edge(u, v);
          ++edges;
        }
    double budget = 2.0 * eps * (n * (n - 1) / 2.0);
    if (static_cast<double>(edges) <= budget) continue;
    ++applicable;
    auto core = peel_subgraph(g, eps);
    if (!core.has_value()) {
      note = "core dissolved with edges above the deletion budget";
      return false;
    }
    for (int v : core->vertices())
      if (core->degree(v) < eps * n) {
        note = "core degree " + std::to_string(core->degree(v)) + " below the floor";
        return false;
      }
    if (static_cast<double>(edges - core->edge_count()) >= budget) {
      note = "deleted edge count reached the budget";
      return false;
    }
  }
  if (applicable < 500) {
    note = "only " + std::to_string(applicable) + " graphs met the density hypothesis";
    return false;
  }
  return true;
}

// 8. vertex degree dominates n times the pair degree
bool run_degree_domination(std::string& note) {
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + trial % 8;
    double p = 0.15 + 0.004 * (trial % 150);
    auto h = random_graph(n, p, 7000 + trial);
    long long d1 = min_l_degree(h, 1);
    long long d2 = min_l_degree(h, 2);
    if (d1 < d2 * n) {
      note = "trial " + std::to_string(trial) + ": d1=" + std::to_string(d1) +
             " below n*d2=" + std::to_string(d2 * n);
      return false;
    }
  }
  return true;
}

// 9. absorbing-set counting and one full absorption round trip
bool run_absorption(std::string& note) {
  for (int n = 4; n <= 8; ++n) {
    auto h = complete(n);
    BalancedSet t(3, {{n - 1}, {n - 1}, {n - 1}});
    long long c = n - 1;
    long long want = (c * (c - 1) / 2) * (c * (c - 1) / 2) * (c * (c - 1) / 2);
    long long got = count_absorbing(h, t);
    if (got != want) {
      note = "n=" + std::to_string(n) + ": count " + std::to_string(got) + " want " +
             std::to_string(want);
      return false;
    }
  }
  auto h = complete(6);
  std::vector<BalancedSet> members{BalancedSet(3, {{0, 1}, {0, 1}, {0, 1}})};
  EdgeId a = *h.find_edge(std::array{0, 0, 0});
  EdgeId b = *h.find_edge(std::array{1, 1, 1});
  AbsorbingFamily fam(members, {{a, b}});
  std::vector<VertexRef> leftover{{0, 2}, {1, 2}, {2, 2}};
  auto res = absorb(h, fam, leftover);
  if (!res.ok || !res.matching.verify(h) || res.matching.size() != 3) {
    note = "absorption round trip failed";
    return false;
  }
  int covered = 0;
  for (int cls = 0; cls < 3; ++cls)
    for (int idx = 0; idx < 6; ++idx)
      if (res.matching.covers({cls, idx})) {
        ++covered;
        bool in_family = fam.contains_vertex({cls, idx});
        bool in_leftover = idx == 2;
        if (!in_family && !in_leftover) {
          note = "matching covers a vertex outside the family and leftover";
          return false;
        }
      }
  if (covered != 9) {
    note = "covered " + std::to_string(covered) + " vertices, want 9";
    return false;
  }
  return true;
}

// 10. template finisher on clean and perturbed strip instances
bool run_extremal_routine(std::string& note) {
  for (int n : {9, 12, 15}) {
    int d = n / 3;
    auto h = build_family_hprime(n, d, d, d);
    ExtremalTemplate tmpl(3, n, {d, d, d}, TemplateRule::uuw_uww);
    auto res = extremal_solve(h, tmpl, 0.01);
    if (!res.ok || !res.matching->is_perfect() || !res.matching->verify(h)) {
      note = "clean instance failed at n=" + std::to_string(n);
      return false;
    }
  }

  const int n = 12, d = 4;
  ExtremalTemplate tmpl(3, n, {d, d, d}, TemplateRule::uuw_uww);
  auto full = tmpl.instantiate();
  std::vector<std::vector<int>> all;
  for (EdgeId e = 0; e < static_cast<EdgeId>(full.edge_count()); ++e) {
    auto t = full.edge(e);
    all.push_back({t[0], t[1], t[2]});
  }
  for (int round = 0; round < 50; ++round) {
    std::mt19937 rng(52000 + round);
    auto pool = all;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> hits(3 * n, 0);
    std::vector<std::vector<int>> edges;
    int dropped = 0;
    for (const auto& t : pool) {
      bool fresh = hits[t[0]] == 0 && hits[n + t[1]] == 0 && hits[2 * n + t[2]] == 0;
      if (fresh && dropped < n) {
        ++hits[t[0]];
        ++hits[n + t[1]];
        ++hits[2 * n + t[2]];
        ++dropped;
        continue;
      }
      edges.push_back(t);
    }
    auto h = KPartiteHypergraph::build(3, {n, n, n}, edges);
    if (has_perfect_matching(h).status != PmStatus::yes) {
      note = "round " + std::to_string(round) + ": oracle lost the perfect matching";
      return false;
    }
    auto res = extremal_solve(h, tmpl, 0.01);
    if (!res.ok || !res.matching->is_perfect() || !res.matching->verify(h)) {
      note = "round " + std::to_string(round) + ": " + res.failure;
      return false;
    }
  }
  return true;
}

// 11. the pipeline never overclaims in either direction
bool run_honesty(std::string& note) {
  std::vector<KPartiteHypergraph> corpus;
  for (int n = 3; n <= 10; ++n) {
    for (int m = 0; m <= n; ++m) corpus.push_back(build_family_hk(3, n, m));
    for (int m = 1; m <= n; ++m) corpus.push_back(build_family_hstar(3, n, m));
    int d = std::max(1, n / 3);
    corpus.push_back(build_family_hprime(n, d, d, n - 2 * d));
    corpus.push_back(complete(n));
  }
  corpus.push_back(build_counterexample6());

  SolverConfig heuristic;
  heuristic.mode = SolverConfig::Mode::heuristic_only;

  int checked = 0;
  for (const auto& h : corpus) {
    auto oracle = has_perfect_matching(h);
    if (oracle.status == PmStatus::unknown) {
      note = "oracle budget tripped on a corpus instance";
      return false;
    }
    auto out = solve_perfect_matching(h);
    if (out.status == SolveStatus::no_perfect &&
        (oracle.status == PmStatus::yes || !out.exact_proof)) {
      note = "claimed impossibility against the oracle";
      return false;
    }
    if (out.status == SolveStatus::perfect &&
        (!out.matching.has_value() || !out.matching->verify(h) || !out.matching->is_perfect())) {
      note = "claimed a perfect matching that does not verify";
      return false;
    }
    auto soft = solve_perfect_matching(h, heuristic);
    if (soft.status == SolveStatus::no_perfect) {
      note = "heuristic mode claimed impossibility";
      return false;
    }
    if (soft.status == SolveStatus::perfect &&
        (!soft.matching.has_value() || !soft.matching->verify(h) || !soft.matching->is_perfect())) {
      note = "heuristic mode returned an invalid matching";
      return false;
    }
    ++checked;
  }
  note = std::to_string(checked) + " instances";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> table{
      {1, "degree formula matches the built families", 60},
      {2, "extremal families are tight and unmatched", 300},
      {3, "six-vertex counterexample facts", 60},
      {4, "meeting-W family matching sizes", 600},
      {5, "exhaustive n=2 degree sweep", 1},
      {6, "pair-type sum bound on maximum matchings", 300},
      {7, "low-degree peeling keeps a dense core", 60},
      {8, "vertex degree dominates scaled pair degree", 60},
      {9, "absorbing-set count and absorption round trip", 60},
      {10, "template finisher on clean and perturbed strips", 600},
      {11, "pipeline honesty on the family corpus", 900},
  };

  using Runner = bool (*)(std::string&);
  const Runner runners[] = {
      run_formula_agreement, run_tightness,       run_counterexample, run_family_matching_sizes,
      run_brute_force,       run_pair_type_bound, run_peel_property,  run_degree_domination,
      run_absorption,        run_extremal_routine, run_honesty,
  };

  int failures = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto& c = table[i];
    auto start = std::chrono::steady_clock::now();
    c.pass = runners[i](c.note);
    c.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.pass && c.elapsed_s > c.limit_s) {
      c.pass = false;
      c.note = "over the " + std::to_string(static_cast<int>(c.limit_s)) + "s ceiling";
    }
    if (!c.pass) ++failures;
    std::printf("[%s] %2d %s (%.2fs)%s%s\n", c.pass ? "PASS" : "FAIL", c.id, c.name, c.elapsed_s,
                c.note.empty() ? "" : ": ", c.note.c_str());
  }
  if (failures == 0)
    std::printf("all %zu criteria passed\n", table.size());
  else
    std::printf("%d of %zu criteria failed\n", failures, table.size());
  return failures;
}
