#include "kpm/constructions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kpm {

namespace {

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

long long binom(long long n, long long r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  long long out = 1;
  for (long long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

void check_profile(int k, int n, const std::vector<int>& profile) {
  if (profile.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("profile needs one entry per class");
  for (int d : profile)
    if (d < 0 || d > n)
      throw std::invalid_argument("profile entry out of range [0, n]");
}

// Enumerates all n^k legal tuples, keeping those the filter accepts.
template <typename F>
std::vector<std::vector<int>> filter_tuples(int k, int n, F&& keep) {
  double space = 1;
  for (int c = 0; c < k; ++c) space *= n;
  if (space > 8e6) throw std::invalid_argument("construction too large to enumerate");
  std::vector<std::vector<int>> edges;
  std::vector<int> t(k, 0);
  if (n == 0) return edges;
  while (true) {
    if (keep(t)) edges.push_back(t);
    int pos = k;
    while (pos > 0) {
      --pos;
      if (++t[pos] < n) break;
      t[pos] = 0;
      if (pos == 0) return edges;
    }
  }
}

}  // namespace

ExtremalTemplate::ExtremalTemplate(int k, int n, std::vector<int> profile, TemplateRule rule)
    : k_(k), n_(n), profile_(std::move(profile)), rule_(rule) {
  if (k_ < 2) throw std::invalid_argument("uniformity must be at least 2");
  if (n_ < 0) throw std::invalid_argument("n must be nonnegative");
  check_profile(k_, n_, profile_);
  if (rule_ == TemplateRule::uuw_uww && k_ != 3)
    throw std::invalid_argument("uuw_uww rule is 3-partite");
}

bool ExtremalTemplate::contains_edge(std::span<const VertexIdx> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(k_)) return false;
  int w = 0;
  for (int c = 0; c < k_; ++c) {
    if (tuple[c] >= n_) return false;
    if (in_w(c, tuple[c])) ++w;
  }
  if (rule_ == TemplateRule::all_meeting_w) return w >= 1;
  return w >= 1 && w < k_;
}

bool ExtremalTemplate::contains_edge(std::span<const int> tuple) const {
  std::vector<VertexIdx> t;
  t.reserve(tuple.size());
  for (int v : tuple) {
    if (v < 0 || v > 0xFFFF) return false;
    t.push_back(static_cast<VertexIdx>(v));
  }
  return contains_edge(std::span<const VertexIdx>(t));
}

long long ExtremalTemplate::edge_count() const {
  long long all = ipow(n_, k_);
  long long avoid_w = 1;
  long long inside_w = 1;
  for (int c = 0; c < k_; ++c) {
    avoid_w *= n_ - profile_[c];
    inside_w *= profile_[c];
  }
  if (rule_ == TemplateRule::all_meeting_w) return all - avoid_w;
  return all - avoid_w - inside_w;
}

long long ExtremalTemplate::link_degree(VertexRef v) const {
  if (v.cls < 0 || v.cls >= k_ || v.idx < 0 || v.idx >= n_)
    throw std::invalid_argument("vertex out of range");
  long long all = ipow(n_, k_ - 1);
  long long avoid_w = 1;
  long long inside_w = 1;
  for (int c = 0; c < k_; ++c) {
    if (c == v.cls) continue;
    avoid_w *= n_ - profile_[c];
    inside_w *= profile_[c];
  }
  const bool w = in_w(v.cls, v.idx);
  if (rule_ == TemplateRule::all_meeting_w) return w ? all : all - avoid_w;
  // uuw_uww: at least one W overall, not all W.
  if (w) return all - inside_w;
  return all - avoid_w;
}

KPartiteHypergraph ExtremalTemplate::instantiate() const {
  auto edges = filter_tuples(k_, n_, [&](const std::vector<int>& t) {
    return contains_edge(std::span<const int>(t));
  });
  return KPartiteHypergraph::build(k_, std::vector<int>(k_, n_), edges);
}

KPartiteHypergraph build_family_h(int n, const std::vector<int>& profile) {
  const int k = static_cast<int>(profile.size());
  if (k < 2) throw std::invalid_argument("profile needs at least two classes");
  check_profile(k, n, profile);
  ExtremalTemplate tmpl(k, n, profile, TemplateRule::all_meeting_w);
  return tmpl.instantiate();
}

std::vector<int> hk_profile(int k, int m) {
  std::vector<int> d(k);
  for (int i = 1; i <= k; ++i) d[i - 1] = (m + i - 1) / k;
  return d;
}

KPartiteHypergraph build_family_hk(int k, int n, int m) {
  if (m < 0 || m > static_cast<long long>(k) * n)
    throw std::invalid_argument("m must lie in [0, k*n]");
  return build_family_h(n, hk_profile(k, m));
}

namespace {

std::vector<std::vector<int>> hstar_added_edges(int k, int n, int m) {
  if (m < 1 || m > static_cast<long long>(k) * n)
    throw std::invalid_argument("m must lie in [1, k*n]");
  if (n < 1) throw std::invalid_argument("n must be positive");
  ExtremalTemplate base(k, n, hk_profile(k, m - 1), TemplateRule::all_meeting_w);
  // Designated vertices are local index 0 in every class; a tuple joins when
  // it contains strictly more than k/2 of them.
  return filter_tuples(k, n, [&](const std::vector<int>& t) {
    int designated = 0;
    for (int c = 0; c < k; ++c)
      if (t[c] == 0) ++designated;
    return 2 * designated > k && !base.contains_edge(std::span<const int>(t));
  });
}

}  // namespace

KPartiteHypergraph build_family_hstar(int k, int n, int m) {
  auto added = hstar_added_edges(k, n, m);
  ExtremalTemplate base(k, n, hk_profile(k, m - 1), TemplateRule::all_meeting_w);
  auto edges = filter_tuples(k, n, [&](const std::vector<int>& t) {
    return base.contains_edge(std::span<const int>(t));
  });
  edges.insert(edges.end(), added.begin(), added.end());
  return KPartiteHypergraph::build(k, std::vector<int>(k, n), edges);
}

KPartiteHypergraph build_hstar_added_family(int k, int n, int m) {
  return KPartiteHypergraph::build(k, std::vector<int>(k, n), hstar_added_edges(k, n, m));
}

KPartiteHypergraph build_family_hprime(int n, int d1, int d2, int d3) {
  ExtremalTemplate tmpl(3, n, {d1, d2, d3}, TemplateRule::uuw_uww);
  return tmpl.instantiate();
}

KPartiteHypergraph build_counterexample6() {
  return KPartiteHypergraph::build(3, {2, 2, 2},
                                   {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 0, 1}});
}

ThresholdValue threshold_exact(int n) {
  if (n < 3) throw std::invalid_argument("threshold defined for n >= 3");
  const long long nn = n;
  ThresholdValue out;
  out.n = n;
  out.residue = n % 3;
  switch (out.residue) {
    case 0: out.value = (5 * nn * nn - 6 * nn) / 9; break;
    case 1: out.value = (5 * nn * nn - 4 * nn - 1) / 9; break;
    default: out.value = (5 * nn * nn - 8 * nn + 5) / 9; break;
  }
  return out;
}

long long delta_l_formula(int k, int l, long long n, long long m) {
  if (k < 2 || l < 1 || l > k) throw std::invalid_argument("need 2 <= k and 1 <= l <= k");
  if (n < 0 || m < 0 || m > k * n) throw std::invalid_argument("need 0 <= m <= k*n");
  long long prod = 1;
  for (int i = 1; i <= k - l; ++i) prod *= n - (m + i - 1) / k;
  return ipow(n, k - l) - prod;
}

long long d3_threshold(long long n, long long r, int s) {
  if (s < 1 || s > 3) throw std::invalid_argument("s must be 1, 2 or 3");
  if (n < 0 || r < 0 || r + s > n) throw std::invalid_argument("need 0 <= r and r+s <= n");
  switch (s) {
    case 1: return n * n - (n - r) * (n - r) + 1;
    case 2: return n * n - (n - r) * (n - r - 1);
    default: return n * n - (n - r - 1) * (n - r - 1);
  }
}

long long delta1_hstar_formula(int k, long long n, long long m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  long long extra = 0;
  for (int i = k / 2 + 1; i <= k - 1; ++i) extra += binom(k - 1, i) * ipow(n, k - 1 - i);
  return delta_l_formula(k, 1, n, m - 1) + extra;
}

}  // namespace kpm
