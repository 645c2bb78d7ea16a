#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kpm/hypergraph.hpp"

namespace kpm {

/// Resource limits for exhaustive searches. `exact` keeps searching until the
/// space is exhausted or the limits trip; `best_effort` is the same search but
/// callers treat a tripped limit as an acceptable answer.
struct SearchBudget {
  enum class Mode { exact, best_effort };
  std::uint64_t node_limit = 10'000'000;
  std::chrono::milliseconds time_limit{0};  // zero means no time limit
  Mode mode = Mode::exact;
  int threads = 1;  // >1 splits the root branches of the exact search
};

struct MatchingSearchResult {
  Matching matching;
  bool optimal = false;   // true when the search space was exhausted (or the
                          // size bound was met), so the size is the maximum
  std::uint64_t nodes = 0;
};

/// Branch-and-bound maximum matching. Deterministic given the hypergraph.
MatchingSearchResult max_matching_exact(const KPartiteHypergraph& h,
                                        const SearchBudget& budget = {});

enum class PmStatus { yes, no, unknown };

struct PmAnswer {
  PmStatus status = PmStatus::unknown;
  std::optional<Matching> witness;  // present iff status == yes
  std::uint64_t nodes = 0;
};

/// Perfect matching decision with witness; `no` only after an exhausted search.
PmAnswer has_perfect_matching(const KPartiteHypergraph& h, const SearchBudget& budget = {});

/// Maximal (non-extendable) matching built by a seeded random scan order.
Matching greedy_matching(const KPartiteHypergraph& h, std::uint64_t seed);

/// One local exchange step: releases r <= depth matching edges and looks for
/// r+1 disjoint replacement edges inside the released and uncovered vertices.
/// Returns a strictly larger matching, or nothing if no move exists at this
/// depth. depth must be 1, 2 or 3.
std::optional<Matching> augment_local(const KPartiteHypergraph& h, const Matching& m, int depth);

/// Applies augment_local until it stops improving.
Matching augment_to_fixpoint(const KPartiteHypergraph& h, Matching m, int depth);

/// True when every two edges share a vertex (so the matching number is <= 1).
bool is_intersecting_family(const KPartiteHypergraph& h);

struct CoverWitness {
  std::vector<VertexRef> vertices;
};

struct CoverSearchResult {
  enum class Status { found, none, exhausted } status = Status::exhausted;
  std::optional<CoverWitness> witness;
  std::uint64_t nodes = 0;
};

/// Searches for a vertex set W with exactly profile[i] vertices in class i
/// meeting every edge. `none` is only reported after an exhausted search;
/// a tripped budget reports `exhausted`.
CoverSearchResult balanced_cover_check(const KPartiteHypergraph& h, std::span<const int> profile,
                                       const SearchBudget& budget = {});

/// True when W hits every edge and matches the profile exactly.
bool cover_witness_valid(const KPartiteHypergraph& h, const CoverWitness& w,
                         std::span<const int> profile);

struct BruteForceThresholdReport {
  int value = 0;             // smallest t with: min degree >= t forces a perfect matching
  int max_delta_no_pm = -1;  // largest min degree seen among graphs without one
  std::uint64_t graphs_examined = 0;
};

/// Sweeps every 3-partite 3-graph on classes of size n (n <= 2). The symmetric
/// sweep skips isomorphic duplicates; both paths return the same threshold.
BruteForceThresholdReport brute_force_threshold(int k, int n, bool use_symmetry = false);

/// Degree bound after deleting one vertex: under the hypotheses that the
/// largest matching of H has size m and H minus v still has one of size m,
/// deg(v) <= n^(k-1) - (n-m)^(k-1). Returns whether the implication holds for
/// this instance (vacuously true when a hypothesis fails). Classes must have
/// equal size.
bool check_degree_bound_after_removal(const KPartiteHypergraph& h, VertexRef v, int m);

/// Legal-set variant: if the largest matching has size m and H minus T has one
/// of size m-k+1, some vertex of T has degree at most
/// n^(k-1) - (n-m)^(k-1) <= k*m*n^(k-2).
bool check_degree_bound_after_removal(const KPartiteHypergraph& h, const LegalSet& t, int m);

/// Maximum matching restricted to the given edge ids (helper for exchange
/// searches; exact when `exact` comes back true).
struct EdgeListMatchingResult {
  std::vector<EdgeId> edges;
  bool exact = false;
};
EdgeListMatchingResult max_matching_on_edges(const KPartiteHypergraph& h,
                                             std::span<const EdgeId> candidates, int stop_at,
                                             std::uint64_t node_cap);

}  // namespace kpm
