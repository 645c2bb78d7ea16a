#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kpm/absorption.hpp"
#include "kpm/constructions.hpp"
#include "kpm/hypergraph.hpp"
#include "kpm/matching.hpp"

namespace kpm {

struct SolverConfig {
  enum class Mode { automatic, exact_only, heuristic_only, extremal_only };

  Mode mode = Mode::automatic;
  std::uint64_t seed = 0;
  int exact_cutoff = 10;      // class size up to which the exact search runs first
  SearchBudget exact_budget;  // budget for that search
  int augment_depth = 2;      // local-search exchange depth (1..3)
  double gamma = 0.1;         // absorbing-family density
  double alpha = 0.01;        // per-vertex goodness threshold for the extremal path
  double epsilon = 0.05;      // template distance below which the extremal path runs
  double rho = 0.05;          // slack kept between alpha and epsilon based bounds
};

enum class SolveStatus { perfect, no_perfect, incomplete };

struct PhaseEvent {
  std::string phase;
  std::string detail;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::incomplete;
  std::optional<Matching> matching;  // verified perfect matching when status is perfect
  bool exact_proof = false;          // no_perfect holds only with this set
  std::vector<PhaseEvent> trace;
  std::string certificate;  // one-line note on how the status was established
};

/// Perfect-matching pipeline: exact search at small sizes, then an absorbing
/// family plus local search, then the template-based finisher when the input
/// sits near an extremal template. "perfect" is always re-verified against the
/// input; "no_perfect" is only ever reported with an exhaustive-search proof.
SolveOutcome solve_perfect_matching(const KPartiteHypergraph& h, const SolverConfig& cfg = {});

struct ExtremalSolveResult {
  bool ok = false;
  std::optional<Matching> matching;
  std::vector<PhaseEvent> trace;
  std::string failure;
};

/// Perfect matching for hypergraphs close to a two-W-type template (every edge
/// one or two W vertices): cover the vertices that lost too many template
/// edges, restore the W-to-size balance, then finish with one-W-typed edges,
/// trading two matched edges for three when the greedy step stalls.
ExtremalSolveResult extremal_solve(const KPartiteHypergraph& h, const ExtremalTemplate& tmpl,
                                   double alpha);

struct SweepRow {
  int n = 0;
  long long delta1 = 0;  // degree floor enforced on the sampled instance
  int trials = 0;
  int pm_found = 0;
  double mean_time_ms = 0.0;
};

/// For each grid value t: sample `trials` random instances with edge
/// probability t/n^2, repair them upward until the minimum degree reaches t,
/// and count how many get a perfect matching. Fully seed-determined except for
/// the timing column.
std::vector<SweepRow> threshold_sweep(int n, int trials, std::span<const long long> grid,
                                      std::uint64_t seed, const SolverConfig& cfg = {});

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

struct ThresholdRow {
  int n = 0;
  int residue = 0;
  std::string family;
  long long formula = 0;   // closed-form extremal degree
  long long measured = 0;  // minimum vertex degree of the built family
  bool formula_matches = false;
  std::string oracle;  // "no_pm", "skipped", or a mismatch description
};

struct ThresholdReport {
  std::vector<ThresholdRow> rows;
  bool all_ok = false;
};

/// Rebuild the extremal family for every n up to n_max, compare its minimum
/// degree against the closed form, and (up to oracle_cap) confirm by search
/// that it has no perfect matching.
ThresholdReport verify_thresholds(int n_max, int oracle_cap = 14);

}  // namespace kpm
