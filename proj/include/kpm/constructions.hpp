#pragma once

#include <span>
#include <vector>

#include "kpm/hypergraph.hpp"

namespace kpm {

/// Edge rule of a degree-extremal template on k classes of size n with a
/// per-class split into U_i (first n-d_i indices) and W_i (last d_i indices).
enum class TemplateRule {
  all_meeting_w,  // every edge meets W somewhere
  uuw_uww,        // edges meet W but are not fully inside W (k=3: types UUW, UWW)
};

/// Closed-form template against which concrete hypergraphs are compared.
/// Membership, edge counts and per-vertex link sizes are all O(k) formulas,
/// so templates stay cheap even when instantiating them would not be.
class ExtremalTemplate {
 public:
  ExtremalTemplate(int k, int n, std::vector<int> profile, TemplateRule rule);

  int uniformity() const { return k_; }
  int n() const { return n_; }
  const std::vector<int>& profile() const { return profile_; }
  TemplateRule rule() const { return rule_; }

  bool in_w(int cls, int idx) const { return idx >= n_ - profile_[cls]; }
  bool contains_edge(std::span<const VertexIdx> tuple) const;
  bool contains_edge(std::span<const int> tuple) const;
  long long edge_count() const;
  /// Number of template edges through one vertex.
  long long link_degree(VertexRef v) const;
  KPartiteHypergraph instantiate() const;

 private:
  int k_;
  int n_;
  std::vector<int> profile_;
  TemplateRule rule_;
};

/// All legal k-tuples meeting the set W, where W_i is the last d_i indices of
/// class i. Classes all have size n; profile supplies d_1..d_k.
KPartiteHypergraph build_family_h(int n, const std::vector<int>& profile);

/// The profile floor((m+i-1)/k) for i = 1..k.
std::vector<int> hk_profile(int k, int m);

/// build_family_h with the canonical profile for target matching size m.
KPartiteHypergraph build_family_hk(int k, int n, int m);

/// build_family_hk(k, n, m-1) plus every legal k-set containing more than k/2
/// of the designated vertices u_1..u_k (local index 0 of each class).
KPartiteHypergraph build_family_hstar(int k, int n, int m);

/// Only the k-sets build_family_hstar adds on top of its base family.
KPartiteHypergraph build_hstar_added_family(int k, int n, int m);

/// 3-partite variant keeping only edges with one or two W vertices.
KPartiteHypergraph build_family_hprime(int n, int d1, int d2, int d3);

/// Six vertices, four edges, vertex degree 2 everywhere, no two disjoint edges.
KPartiteHypergraph build_counterexample6();

struct ThresholdValue {
  int n = 0;
  int residue = 0;
  long long value = 0;
};

/// Largest minimum vertex degree attained by a 3-partite 3-graph with classes
/// of size n and no perfect matching (closed form, n >= 3). Any strictly
/// larger minimum degree forces a perfect matching.
ThresholdValue threshold_exact(int n);

/// Minimum l-degree of build_family_hk(k, n, m): n^(k-l) minus the product of
/// (n - floor((m+i-1)/k)) over i = 1..k-l.
long long delta_l_formula(int k, int l, long long n, long long m);

/// Vertex-degree bound forcing a matching of size r+s on classes of size n,
/// s in {1,2,3}.
long long d3_threshold(long long n, long long r, int s);

/// Minimum vertex degree of build_family_hstar(k, n, m), closed form.
long long delta1_hstar_formula(int k, long long n, long long m);

}  // namespace kpm
