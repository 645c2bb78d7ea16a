#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "kpm/constructions.hpp"
#include "kpm/hypergraph.hpp"

namespace kpm {

// Type of an edge pair relative to an uncovered transversal S (3-partite only).
// a[i] counts, among the two triples that combine S's class-i vertex with one
// vertex of e1 and one of e2 from the remaining classes, how many are edges.
struct EdgeType {
  std::array<std::uint8_t, 3> a{};
  int sum() const { return a[0] + a[1] + a[2]; }
  bool operator==(const EdgeType&) const = default;
};

EdgeType edge_pair_type(const KPartiteHypergraph& h, const LegalSet& s, EdgeId e1, EdgeId e2);

// Aggregated pair types over all unordered pairs of a matching.
class MatchingGraph {
 public:
  MatchingGraph();
  void record(EdgeId e1, EdgeId e2, EdgeType t, bool store);
  int count(const EdgeType& t) const;
  long long count_axis(int axis, int value) const;  // pairs with a[axis] == value
  long long total_pairs() const;
  const std::vector<std::tuple<EdgeId, EdgeId, EdgeType>>& pairs() const { return pairs_; }

 private:
  std::array<long long, 27> cells_{};
  long long total_ = 0;
  std::vector<std::tuple<EdgeId, EdgeId, EdgeType>> pairs_;
};

MatchingGraph matching_graph(const KPartiteHypergraph& h, const Matching& m, const LegalSet& s,
                             bool store_pairs = false);

// For a pair of type {2,1,1} the four witnessing triples, read as a graph on
// the six endpoints of the pair, can form a four-edge path. The path's middle
// vertex then lies on e1 or on e2.
enum class PathForm { center_in_first, center_in_second };

std::optional<PathForm> classify_path_form(const KPartiteHypergraph& h, const LegalSet& s,
                                           EdgeId e1, EdgeId e2);

// Matched vertices v = e_j[i] joined to the uncovered vertex x by many edges
// that avoid every other matched vertex. Default threshold is (2k)^(k-2).
std::vector<std::pair<EdgeId, int>> i_connections(const KPartiteHypergraph& h, const Matching& m,
                                                  VertexRef x, long long threshold = -1);

// Plain graph used by the degree-peeling step.
class SimpleGraph {
 public:
  explicit SimpleGraph(int n);
  void add_edge(int u, int v);
  int label_space() const { return static_cast<int>(adj_.size()); }
  int order() const { return active_count_; }
  bool active(int v) const { return active_[v] != 0; }
  long long edge_count() const { return edges_; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  bool has_edge(int u, int v) const;
  void remove_vertex(int v);
  std::vector<int> vertices() const;

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint8_t> active_;
  int active_count_ = 0;
  long long edges_ = 0;
};

// Repeatedly delete vertices of degree below eps * n, n being the original
// order. Returns the surviving subgraph (original labels), or nothing if the
// whole graph dissolves.
std::optional<SimpleGraph> peel_subgraph(const SimpleGraph& g, double eps);

struct ClosenessReport {
  long long missing = 0;  // template edges absent from the hypergraph
  double epsilon = 0.0;   // missing / n^k
};

ClosenessReport closeness(const KPartiteHypergraph& h, const ExtremalTemplate& tmpl);

struct GoodnessReport {
  std::vector<std::vector<long long>> missing;  // [class][index]
  std::vector<VertexRef> bad;                   // missing count above the threshold
  double threshold = 0.0;                       // alpha * n^(k-1)
};

GoodnessReport classify_good_vertices(const KPartiteHypergraph& h, const ExtremalTemplate& tmpl,
                                      double alpha);

}  // namespace kpm
