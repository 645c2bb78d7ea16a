#include "kpm/absorption.hpp"

#include "kpm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kpm {

namespace {

long long binom_ll(long long n, long long r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  long long out = 1;
  for (long long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

/// Perfect matching of the induced sub-hypergraph on a balanced vertex set,
/// by enumerating the per-class alignments (cheap for 2 or 3 per class).
std::optional<std::vector<EdgeId>> aligned_pm(const KPartiteHypergraph& h,
                                              const std::vector<std::vector<int>>& per_class) {
  const int k = h.uniformity();
  const int r = static_cast<int>(per_class[0].size());
  if (r == 0) return std::vector<EdgeId>{};
  std::vector<std::vector<int>> perm(k);
  for (int c = 0; c < k; ++c) {
    perm[c].resize(r);
    for (int j = 0; j < r; ++j) perm[c][j] = j;
  }
  std::vector<EdgeId> found(r);
  std::vector<int> tuple(k);

  auto check = [&]() -> bool {
    for (int j = 0; j < r; ++j) {
      for (int c = 0; c < k; ++c) tuple[c] = per_class[c][perm[c][j]];
      auto id = h.find_edge(tuple);
      if (!id) return false;
      found[j] = *id;
    }
    return true;
  };

  // Odometer over permutations of classes 1..k-1 (class 0 stays fixed).
  auto rec = [&](auto&& self, int c) -> bool {
    if (c == k) return check();
    do {
      if (self(self, c + 1)) return true;
    } while (std::next_permutation(perm[c].begin(), perm[c].end()));
    return false;
  };
  if (rec(rec, 1)) return found;
  return std::nullopt;
}

std::vector<std::vector<int>> union_classes(const BalancedSet& a, const BalancedSet& b) {
  std::vector<std::vector<int>> out(a.k());
  for (int c = 0; c < a.k(); ++c) {
    out[c] = a.cls(c);
    out[c].insert(out[c].end(), b.cls(c).begin(), b.cls(c).end());
    std::sort(out[c].begin(), out[c].end());
  }
  return out;
}

void require_shapes(const KPartiteHypergraph& h, const BalancedSet& a, const BalancedSet& t) {
  const int k = h.uniformity();
  if (a.k() != k || t.k() != k) throw std::invalid_argument("class count mismatch");
  if (a.per_class_count() != k - 1)
    throw std::invalid_argument("absorbing candidate needs k-1 vertices per class");
  if (t.per_class_count() != 1) throw std::invalid_argument("target must be a transversal");
  for (int c = 0; c < k; ++c) {
    for (int i : a.cls(c))
      if (i < 0 || i >= h.class_size(c)) throw std::invalid_argument("vertex out of range");
    if (t.cls(c)[0] < 0 || t.cls(c)[0] >= h.class_size(c))
      throw std::invalid_argument("vertex out of range");
  }
  if (!a.disjoint_with(t)) throw std::invalid_argument("sets must be disjoint");
}

}  // namespace

bool is_absorbing(const KPartiteHypergraph& h, const BalancedSet& a, const BalancedSet& t) {
  require_shapes(h, a, t);
  std::vector<std::vector<int>> own(a.k());
  for (int c = 0; c < a.k(); ++c) own[c] = a.cls(c);
  if (!aligned_pm(h, own)) return false;
  return aligned_pm(h, union_classes(a, t)).has_value();
}

long long count_absorbing(const KPartiteHypergraph& h, const BalancedSet& t, long long cap) {
  const int k = h.uniformity();
  if (t.k() != k || t.per_class_count() != 1)
    throw std::invalid_argument("target must be a transversal");
  std::vector<std::vector<int>> avail(k);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < h.class_size(c); ++i)
      if (i != t.cls(c)[0]) avail[c].push_back(i);
  const int r = k - 1;
  for (int c = 0; c < k; ++c)
    if (static_cast<int>(avail[c].size()) < r) return 0;

  long long count = 0;
  std::vector<std::vector<int>> pick(k);  // positions into avail[c]
  std::vector<std::vector<int>> chosen(k, std::vector<int>(r));

  auto advance = [&](std::vector<int>& comb, int m) -> bool {
    int pos = r - 1;
    while (pos >= 0 && comb[pos] == m - r + pos) --pos;
    if (pos < 0) return false;
    ++comb[pos];
    for (int q = pos + 1; q < r; ++q) comb[q] = comb[q - 1] + 1;
    return true;
  };

  auto rec = [&](auto&& self, int c) -> bool {  // returns true to stop early
    if (c == k) {
      BalancedSet a(k, chosen);
      if (is_absorbing(h, a, t)) {
        ++count;
        if (cap > 0 && count >= cap) return true;
      }
      return false;
    }
    pick[c].resize(r);
    for (int j = 0; j < r; ++j) pick[c][j] = j;
    while (true) {
      for (int j = 0; j < r; ++j) chosen[c][j] = avail[c][pick[c][j]];
      if (self(self, c + 1)) return true;
      if (!advance(pick[c], static_cast<int>(avail[c].size()))) return false;
    }
  };
  rec(rec, 0);
  return count;
}

// --- config arithmetic -----------------------------------------------------------

double AbsorptionConfig::member_budget(int k, int n) const {
  return std::pow(gamma, k) * static_cast<double>(n);
}

double AbsorptionConfig::sampling_delta(int k, int n) const {
  return 2.0 * std::pow(static_cast<double>(n) * std::numbers::e / (k - 1),
                        static_cast<double>(k) * (k - 1));
}

double AbsorptionConfig::sampling_p(int k, int n) const {
  return member_budget(k, n) / sampling_delta(k, n);
}

// --- family ----------------------------------------------------------------------

AbsorbingFamily::AbsorbingFamily(std::vector<BalancedSet> members,
                                 std::vector<std::vector<EdgeId>> local_pms)
    : members_(std::move(members)), local_pms_(std::move(local_pms)) {
  if (members_.size() != local_pms_.size())
    throw std::invalid_argument("one matching per member required");
}

Matching AbsorbingFamily::base_matching(const KPartiteHypergraph& h) const {
  Matching m(h);
  for (const auto& pm : local_pms_)
    for (EdgeId e : pm) m.add(e);
  return m;
}

std::vector<VertexRef> AbsorbingFamily::vertices() const {
  std::vector<VertexRef> out;
  for (const auto& mset : members_) {
    auto refs = mset.refs();
    out.insert(out.end(), refs.begin(), refs.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool AbsorbingFamily::contains_vertex(VertexRef v) const {
  for (const auto& mset : members_)
    if (mset.contains(v)) return true;
  return false;
}

// --- sampling ----------------------------------------------------------------------

namespace {

void unrank_combination(long long rank, int n, int r, std::vector<int>& out) {
  out.clear();
  int x = 0;
  for (int slot = 0; slot < r; ++slot) {
    while (true) {
      long long skip = binom_ll(n - x - 1, r - slot - 1);
      if (rank < skip) break;
      rank -= skip;
      ++x;
    }
    out.push_back(x);
    ++x;
  }
}

BalancedSet unrank_member(long long idx, int k, std::span<const long long> radix, int n, int r) {
  std::vector<std::vector<int>> per_class(k);
  std::vector<long long> digit(k);
  for (int c = k - 1; c >= 0; --c) {
    digit[c] = idx % radix[c];
    idx /= radix[c];
  }
  for (int c = 0; c < k; ++c) unrank_combination(digit[c], n, r, per_class[c]);
  return BalancedSet(k, std::move(per_class));
}

struct Round {
  std::vector<BalancedSet> members;
  std::vector<std::vector<EdgeId>> pms;
  std::uint64_t scanned = 0;
};

Round sample_round(const KPartiteHypergraph& h, double p, long long total, std::size_t scan_cap,
                   std::uint64_t seed, bool strict) {
  const int k = h.uniformity();
  const int n = h.class_size(0);
  const int r = k - 1;
  std::vector<long long> radix(k, binom_ll(n, r));
  auto g = rng::engine(seed);
  Round round;
  long long idx = -1;
  while (true) {
    long long gap = rng::geometric_gap(g, p);
    if (gap < 0) break;
    idx += 1 + gap;
    if (idx >= total) break;
    ++round.scanned;
    BalancedSet a = unrank_member(idx, k, radix, n, r);
    std::vector<std::vector<int>> own(k);
    for (int c = 0; c < k; ++c) own[c] = a.cls(c);
    if (auto pm = aligned_pm(h, own)) {
      round.members.push_back(std::move(a));
      round.pms.push_back(std::move(*pm));
      if (scan_cap > 0 && round.members.size() >= scan_cap) break;
    }
  }
  // Disjointness. Strict mode drops every member touching another one, which
  // at realistic probabilities almost never fires. At small n overlaps are the
  // norm, so the default keeps a maximal disjoint subfamily in draw order.
  const std::size_t m = round.members.size();
  std::vector<std::uint8_t> drop(m, 0);
  if (strict) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (!round.members[i].disjoint_with(round.members[j])) drop[i] = drop[j] = 1;
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      if (drop[i]) continue;
      for (std::size_t j = 0; j < i; ++j)
        if (!drop[j] && !round.members[i].disjoint_with(round.members[j])) {
          drop[i] = 1;
          break;
        }
    }
  }
  std::size_t out = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (!drop[i]) {
      if (out != i) {
        round.members[out] = std::move(round.members[i]);
        round.pms[out] = std::move(round.pms[i]);
      }
      ++out;
    }
  round.members.resize(out);
  round.pms.resize(out);
  return round;
}

long long coverage_of(const KPartiteHypergraph& h, const AbsorbingFamily& fam,
                      std::size_t sample_cap, std::uint64_t seed) {
  const int k = h.uniformity();
  std::vector<std::vector<int>> free_idx(k);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < h.class_size(c); ++i)
      if (!fam.contains_vertex({c, i})) free_idx[c].push_back(i);
  long long combos = 1;
  for (int c = 0; c < k; ++c) {
    if (free_idx[c].empty()) return -1;
    combos *= static_cast<long long>(free_idx[c].size());
    if (combos > (1ll << 40)) combos = 1ll << 40;
  }
  if (fam.size() == 0) return 0;

  auto count_for = [&](const std::vector<int>& picks) {
    std::vector<std::vector<int>> t(k);
    for (int c = 0; c < k; ++c) t[c] = {free_idx[c][picks[c]]};
    BalancedSet target(k, std::move(t));
    long long cnt = 0;
    for (const auto& mset : fam.members())
      if (is_absorbing(h, mset, target)) ++cnt;
    return cnt;
  };

  long long g_min = -1;
  if (sample_cap == 0 || combos <= static_cast<long long>(sample_cap)) {
    std::vector<int> picks(k, 0);
    while (true) {
      long long cnt = count_for(picks);
      g_min = g_min < 0 ? cnt : std::min(g_min, cnt);
      if (g_min == 0) return 0;
      int c = k - 1;
      while (c >= 0 && picks[c] + 1 == static_cast<int>(free_idx[c].size())) {
        picks[c] = 0;
        --c;
      }
      if (c < 0) break;
      ++picks[c];
    }
  } else {
    auto g = rng::engine(seed);
    std::vector<int> picks(k);
    for (std::size_t s = 0; s < sample_cap; ++s) {
      for (int c = 0; c < k; ++c)
        picks[c] = static_cast<int>(rng::below(g, free_idx[c].size()));
      long long cnt = count_for(picks);
      g_min = g_min < 0 ? cnt : std::min(g_min, cnt);
      if (g_min == 0) return 0;
    }
  }
  return g_min;
}

}  // namespace

FamilyResult sample_absorbing_family(const KPartiteHypergraph& h, const AbsorptionConfig& cfg) {
  const int k = h.uniformity();
  if (!h.classes_equal()) throw std::invalid_argument("classes must have equal size");
  if (!(cfg.gamma > 0.0) || cfg.gamma > 1.0)
    throw std::invalid_argument("gamma must be in (0, 1]");
  const int n = h.class_size(0);
  const int r = k - 1;

  long long per_class = binom_ll(n, r);
  long long total = 1;
  for (int c = 0; c < k && total > 0; ++c) {
    if (per_class == 0 || total > (4ll << 60) / std::max(per_class, 1ll))
      total = per_class == 0 ? 0 : (4ll << 60);
    else
      total *= per_class;
  }

  std::size_t max_members;
  const double budget = cfg.member_budget(k, n);
  if (cfg.max_members > 0)
    max_members = cfg.max_members;
  else if (cfg.strict)
    max_members = static_cast<std::size_t>(std::floor(budget));
  else
    max_members = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(budget)));

  double p = cfg.sampling_p(k, n);
  std::size_t scan_cap = 0;
  if (!cfg.strict) {
    double inflated = std::max(p * cfg.oversample,
                               total > 0 ? 4.0 * static_cast<double>(max_members) /
                                               static_cast<double>(total)
                                         : 0.0);
    p = std::min(1.0, inflated);
    scan_cap = 4 * max_members + 16;
  }
  p = std::clamp(p, 0.0, 1.0);

  FamilyResult result;
  for (int attempt = 0; attempt <= cfg.retry_limit; ++attempt) {
    result.retries = attempt;
    if (total == 0 || max_members == 0) {
      result.family = AbsorbingFamily({}, {});
      result.coverage_g = coverage_of(h, result.family, cfg.coverage_sample_cap,
                                      rng::derive_seed(cfg.seed, 1000 + attempt));
      break;
    }
    Round round =
        sample_round(h, p, total, scan_cap, rng::derive_seed(cfg.seed, attempt), cfg.strict);
    result.scanned += round.scanned;
    if (round.members.size() > max_members) {
      round.members.resize(max_members);
      round.pms.resize(max_members);
    }
    result.family = AbsorbingFamily(std::move(round.members), std::move(round.pms));
    result.coverage_g = coverage_of(h, result.family, cfg.coverage_sample_cap,
                                    rng::derive_seed(cfg.seed, 1000 + attempt));
    if (result.coverage_g != 0) break;
  }
  return result;
}

AbsorbResult absorb(const KPartiteHypergraph& h, const AbsorbingFamily& fam,
                    std::span<const VertexRef> leftover) {
  const int k = h.uniformity();
  std::vector<std::vector<int>> byclass(k);
  for (const auto& v : leftover) {
    if (v.cls < 0 || v.cls >= k || v.idx < 0 || v.idx >= h.class_size(v.cls))
      throw std::invalid_argument("leftover vertex out of range");
    if (fam.contains_vertex(v))
      throw std::invalid_argument("leftover vertex belongs to the family");
    byclass[v.cls].push_back(v.idx);
  }
  for (int c = 0; c < k; ++c) {
    std::sort(byclass[c].begin(), byclass[c].end());
    if (std::adjacent_find(byclass[c].begin(), byclass[c].end()) != byclass[c].end())
      throw std::invalid_argument("duplicate leftover vertex");
    if (byclass[c].size() != byclass[0].size())
      throw std::invalid_argument("leftover must be balanced across classes");
  }

  AbsorbResult out;
  const std::size_t rounds = byclass[0].size();
  std::vector<std::uint8_t> used(fam.size(), 0);
  std::vector<std::vector<EdgeId>> replaced(fam.size());
  for (std::size_t j = 0; j < rounds; ++j) {
    std::vector<std::vector<int>> t(k);
    for (int c = 0; c < k; ++c) t[c] = {byclass[c][j]};
    BalancedSet target(k, t);
    bool assigned = false;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (used[i]) continue;
      if (!is_absorbing(h, fam.members()[i], target)) continue;
      auto pm = aligned_pm(h, union_classes(fam.members()[i], target));
      used[i] = 1;
      replaced[i] = std::move(*pm);
      assigned = true;
      break;
    }
    if (!assigned) {
      std::ostringstream msg;
      msg << "no unused member absorbs (";
      for (int c = 0; c < k; ++c) msg << (c ? "," : "") << byclass[c][j];
      msg << ")";
      out.ok = false;
      out.matching = fam.base_matching(h);
      out.failure = msg.str();
      return out;
    }
  }

  Matching m(h);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& edges = used[i] ? replaced[i] : fam.member_matchings()[i];
    for (EdgeId e : edges) m.add(e);
  }
  out.ok = true;
  out.matching = std::move(m);
  return out;
}

}  // namespace kpm
