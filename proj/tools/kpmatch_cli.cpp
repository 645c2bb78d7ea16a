#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kpm/absorption.hpp"
#include "kpm/constructions.hpp"
#include "kpm/hypergraph.hpp"
#include "kpm/matching.hpp"
#include "kpm/solver.hpp"
#include "kpm/structure.hpp"

using nlohmann::json;

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw CLI::ValidationError("empty entry in list '" + text + "'");
    out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<long long> parse_ll_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(std::stoll(item));
  return out;
}

kpm::KPartiteHypergraph load_graph(const std::string& path) {
  if (path == "-") return kpm::KPartiteHypergraph::from_text(std::cin);
  return kpm::KPartiteHypergraph::from_text_file(path);
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << content;
}

json matching_json(const kpm::KPartiteHypergraph& h, const kpm::Matching& m) {
  json edges = json::array();
  std::vector<kpm::EdgeId> ids(m.edge_ids().begin(), m.edge_ids().end());
  std::sort(ids.begin(), ids.end());
  for (kpm::EdgeId e : ids) {
    json tuple = json::array();
    for (auto v : h.edge(e)) tuple.push_back(static_cast<int>(v));
    edges.push_back(std::move(tuple));
  }
  return edges;
}

std::string matching_text(const kpm::KPartiteHypergraph& h, const kpm::Matching& m) {
  std::ostringstream os;
  os << "# matching size=" << m.size() << "\n";
  std::vector<kpm::EdgeId> ids(m.edge_ids().begin(), m.edge_ids().end());
  std::sort(ids.begin(), ids.end());
  for (kpm::EdgeId e : ids) {
    os << "e";
    for (auto v : h.edge(e)) os << " " << static_cast<int>(v);
    os << "\n";
  }
  return os.str();
}

kpm::Matching load_matching(const kpm::KPartiteHypergraph& h, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  kpm::Matching m(h);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != "e") throw std::runtime_error("matching line " + std::to_string(lineno) +
                                             ": expected 'e', got '" + tag + "'");
    std::vector<int> tuple(h.uniformity());
    for (int c = 0; c < h.uniformity(); ++c)
      if (!(ls >> tuple[c]))
        throw std::runtime_error("matching line " + std::to_string(lineno) + ": short edge");
    auto id = h.find_edge(tuple);
    if (!id)
      throw std::runtime_error("matching line " + std::to_string(lineno) +
                               ": edge not in hypergraph");
    m.add(*id);
  }
  return m;
}

kpm::ExtremalTemplate parse_template(const std::string& spec, int n) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("template must look like Hprime:d1,d2,d3 or Hk:m");
  const std::string name = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (name == "Hk") {
    const int m = std::stoi(rest);
    return kpm::ExtremalTemplate(3, n, kpm::hk_profile(3, m), kpm::TemplateRule::all_meeting_w);
  }
  auto profile = parse_int_list(rest);
  if (name == "H")
    return kpm::ExtremalTemplate(static_cast<int>(profile.size()), n, profile,
                                 kpm::TemplateRule::all_meeting_w);
  if (name == "Hprime")
    return kpm::ExtremalTemplate(static_cast<int>(profile.size()), n, profile,
                                 kpm::TemplateRule::uuw_uww);
  throw CLI::ValidationError("unknown template kind '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-partite hypergraph matching toolkit"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a named hypergraph family");
  std::string gen_family, gen_profile, gen_out = "-";
  int gen_n = 0, gen_m = -1, gen_k = 3;
  gen->add_option("--family", gen_family, "H | Hk | Hstar | Hprime | complete | counterexample6")
      ->required();
  gen->add_option("--n", gen_n, "class size");
  gen->add_option("--m", gen_m, "target matching parameter (Hk, Hstar)");
  gen->add_option("--k", gen_k, "number of classes (default 3)");
  gen->add_option("--profile", gen_profile, "comma separated W sizes d1,d2,...");
  gen->add_option("-o,--out", gen_out, "output file, - for stdout");

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "search for a (perfect) matching");
  std::string solve_file, solve_mode = "auto", solve_mout;
  std::uint64_t solve_seed = 0, solve_nodes = 10'000'000;
  int solve_threads = 1, solve_depth = 2, solve_cutoff = 10;
  solve->add_option("file", solve_file, "hypergraph file, - for stdin")->required();
  solve->add_option("--mode", solve_mode, "exact | greedy | local | auto (default)");
  solve->add_option("--seed", solve_seed, "random seed");
  solve->add_option("--node-limit", solve_nodes, "search node budget");
  solve->add_option("--threads", solve_threads, "worker threads for the exact search");
  solve->add_option("--depth", solve_depth, "local search exchange depth (1..3)");
  solve->add_option("--exact-cutoff", solve_cutoff, "auto mode: exact search up to this n");
  solve->add_option("--matching-out", solve_mout, "write the matching to this file");

  // --- analyze ---
  auto* analyze = app.add_subcommand("analyze", "distance from an extremal template");
  std::string an_file, an_template;
  double an_alpha = 0.01, an_eps = 0.05;
  analyze->add_option("file", an_file, "hypergraph file, - for stdin")->required();
  analyze->add_option("--template", an_template, "H:d1,..|Hprime:d1,..|Hk:m")->required();
  analyze->add_option("--alpha", an_alpha, "per-vertex badness threshold");
  analyze->add_option("--epsilon", an_eps, "closeness verdict threshold");

  // --- mgraph ---
  auto* mgraph = app.add_subcommand("mgraph", "pair-type census of a matching");
  std::string mg_file, mg_matching, mg_s;
  mgraph->add_option("file", mg_file, "hypergraph file, - for stdin")->required();
  mgraph->add_option("--matching", mg_matching, "matching file ('e a b c' lines)")->required();
  mgraph->add_option("--s", mg_s, "uncovered transversal x1,x2,x3")->required();

  // --- absorb ---
  auto* absorb = app.add_subcommand("absorb", "sample an absorbing family");
  std::string ab_file;
  double ab_gamma = 0.1, ab_oversample = 4.0;
  std::uint64_t ab_seed = 0;
  bool ab_strict = false;
  std::size_t ab_max = 0;
  int ab_retries = 5;
  absorb->add_option("file", ab_file, "hypergraph file, - for stdin")->required();
  absorb->add_option("--gamma", ab_gamma, "density parameter");
  absorb->add_option("--seed", ab_seed, "random seed");
  absorb->add_flag("--strict", ab_strict, "textbook member budget and probability");
  absorb->add_option("--oversample", ab_oversample, "selection probability inflation");
  absorb->add_option("--max-members", ab_max, "family size cap (0: derived)");
  absorb->add_option("--retries", ab_retries, "rounds to retry on zero coverage");

  // --- sweep ---
  auto* sweep = app.add_subcommand("sweep", "random instances along a degree grid");
  int sw_n = 0, sw_trials = 0;
  std::string sw_grid, sw_out = "-";
  std::uint64_t sw_seed = 0;
  sweep->add_option("--n", sw_n, "class size")->required();
  sweep->add_option("--trials", sw_trials, "instances per grid point")->required();
  sweep->add_option("--grid", sw_grid, "comma separated degree targets")->required();
  sweep->add_option("--seed", sw_seed, "random seed");
  sweep->add_option("--out", sw_out, "CSV output file, - for stdout");

  // --- verify-thresholds ---
  auto* verify = app.add_subcommand("verify-thresholds", "audit the closed-form degree bounds");
  int vt_nmax = 0, vt_cap = 14;
  std::string vt_out = "-";
  verify->add_option("--n-max", vt_nmax, "largest class size to audit")->required();
  verify->add_option("--oracle-cap", vt_cap, "run the no-matching search up to this n");
  verify->add_option("--out", vt_out, "JSON output file, - for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      kpm::KPartiteHypergraph h = [&]() {
        if (gen_family == "counterexample6") return kpm::build_counterexample6();
        if (gen_n <= 0) throw CLI::ValidationError("--n is required for this family");
        if (gen_family == "H") return kpm::build_family_h(gen_n, parse_int_list(gen_profile));
        if (gen_family == "Hprime") {
          auto d = parse_int_list(gen_profile);
          if (d.size() != 3) throw CLI::ValidationError("Hprime needs --profile d1,d2,d3");
          return kpm::build_family_hprime(gen_n, d[0], d[1], d[2]);
        }
        if (gen_family == "complete")
          return kpm::build_family_h(gen_n, std::vector<int>(gen_k, gen_n));
        if (gen_m < 0) throw CLI::ValidationError("--m is required for this family");
        if (gen_family == "Hk") return kpm::build_family_hk(gen_k, gen_n, gen_m);
        if (gen_family == "Hstar") return kpm::build_family_hstar(gen_k, gen_n, gen_m);
        throw CLI::ValidationError("unknown family '" + gen_family + "'");
      }();
      write_output(gen_out, h.to_text());
      return 0;
    }

    if (solve->parsed()) {
      auto h = load_graph(solve_file);
      json out;
      kpm::Matching m(h);
      kpm::SearchBudget budget;
      budget.node_limit = solve_nodes;
      budget.threads = solve_threads;
      if (solve_mode == "exact") {
        auto r = kpm::max_matching_exact(h, budget);
        m = r.matching;
        const bool pm = h.classes_equal() && m.size() == h.class_size(0);
        out["status"] = pm ? "perfect" : (r.optimal ? "no_perfect" : "incomplete");
        out["optimal"] = r.optimal || pm;
        out["nodes"] = r.nodes;
      } else if (solve_mode == "greedy" || solve_mode == "local") {
        m = kpm::greedy_matching(h, solve_seed);
        if (solve_mode == "local") m = kpm::augment_to_fixpoint(h, std::move(m), solve_depth);
        out["status"] = m.is_perfect() ? "perfect" : "incomplete";
        out["optimal"] = m.is_perfect();
      } else if (solve_mode == "auto") {
        kpm::SolverConfig cfg;
        cfg.seed = solve_seed;
        cfg.exact_budget = budget;
        cfg.augment_depth = solve_depth;
        cfg.exact_cutoff = solve_cutoff;
        auto res = kpm::solve_perfect_matching(h, cfg);
        out["status"] = res.status == kpm::SolveStatus::perfect
                            ? "perfect"
                            : res.status == kpm::SolveStatus::no_perfect ? "no_perfect"
                                                                         : "incomplete";
        out["optimal"] = res.status == kpm::SolveStatus::perfect || res.exact_proof;
        out["certificate"] = res.certificate;
        json trace = json::array();
        for (const auto& ev : res.trace) trace.push_back({{"phase", ev.phase}, {"detail", ev.detail}});
        out["trace"] = std::move(trace);
        if (res.matching) m = *res.matching;
      } else {
        throw CLI::ValidationError("unknown mode '" + solve_mode + "'");
      }
      out["matching_size"] = m.size();
      out["matching"] = matching_json(h, m);
      std::cout << out.dump(2) << "\n";
      if (!solve_mout.empty()) write_output(solve_mout, matching_text(h, m));
      return 0;
    }

    if (analyze->parsed()) {
      auto h = load_graph(an_file);
      if (!h.classes_equal()) throw std::runtime_error("analyze expects equal class sizes");
      auto tmpl = parse_template(an_template, h.class_size(0));
      auto close = kpm::closeness(h, tmpl);
      auto good = kpm::classify_good_vertices(h, tmpl, an_alpha);
      json out;
      out["template"] = {{"rule", tmpl.rule() == kpm::TemplateRule::uuw_uww ? "Hprime" : "H"},
                         {"n", tmpl.n()},
                         {"profile", tmpl.profile()}};
      out["missing"] = close.missing;
      out["epsilon"] = close.epsilon;
      out["close"] = close.epsilon <= an_eps;
      out["goodness_threshold"] = good.threshold;
      json bad = json::array();
      for (const auto& v : good.bad) bad.push_back({v.cls, v.idx});
      out["bad_count"] = good.bad.size();
      out["bad_vertices"] = std::move(bad);
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (mgraph->parsed()) {
      auto h = load_graph(mg_file);
      auto m = load_matching(h, mg_matching);
      auto sidx = parse_int_list(mg_s);
      if (static_cast<int>(sidx.size()) != h.uniformity())
        throw std::runtime_error("--s needs one index per class");
      std::vector<kpm::VertexRef> refs;
      for (int c = 0; c < h.uniformity(); ++c) refs.push_back({c, sidx[c]});
      kpm::LegalSet s(refs);
      auto g = kpm::matching_graph(h, m, s);
      std::ostringstream csv;
      csv << "a1,a2,a3,count\n";
      for (int a0 = 0; a0 < 3; ++a0)
        for (int a1 = 0; a1 < 3; ++a1)
          for (int a2 = 0; a2 < 3; ++a2) {
            kpm::EdgeType t;
            t.a = {static_cast<std::uint8_t>(a0), static_cast<std::uint8_t>(a1),
                   static_cast<std::uint8_t>(a2)};
            csv << a0 << "," << a1 << "," << a2 << "," << g.count(t) << "\n";
          }
      std::cout << csv.str();
      return 0;
    }

    if (absorb->parsed()) {
      auto h = load_graph(ab_file);
      kpm::AbsorptionConfig cfg;
      cfg.gamma = ab_gamma;
      cfg.seed = ab_seed;
      cfg.strict = ab_strict;
      cfg.oversample = ab_oversample;
      cfg.max_members = ab_max;
      cfg.retry_limit = ab_retries;
      auto res = kpm::sample_absorbing_family(h, cfg);
      json out;
      json members = json::array();
      for (const auto& mset : res.family.members()) {
        json per_class = json::array();
        for (int c = 0; c < mset.k(); ++c) per_class.push_back(mset.cls(c));
        members.push_back(std::move(per_class));
      }
      out["member_count"] = res.family.size();
      out["members"] = std::move(members);
      out["base_matching"] = matching_json(h, res.family.base_matching(h));
      out["coverage_g"] = res.coverage_g;
      out["retries"] = res.retries;
      out["scanned"] = res.scanned;
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (sweep->parsed()) {
      auto grid = parse_ll_list(sw_grid);
      auto rows = kpm::threshold_sweep(sw_n, sw_trials, grid, sw_seed);
      std::ostringstream csv;
      kpm::write_sweep_csv(csv, rows);
      write_output(sw_out, csv.str());
      return 0;
    }

    if (verify->parsed()) {
      auto rep = kpm::verify_thresholds(vt_nmax, vt_cap);
      json out;
      json rows = json::array();
      for (const auto& r : rep.rows)
        rows.push_back({{"n", r.n},
                        {"residue", r.residue},
                        {"family", r.family},
                        {"formula", r.formula},
                        {"measured", r.measured},
                        {"formula_matches", r.formula_matches},
                        {"oracle", r.oracle}});
      out["rows"] = std::move(rows);
      out["all_ok"] = rep.all_ok;
      std::string text = out.dump(2) + "\n";
      write_output(vt_out, text);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
