#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kpm {

using VertexIdx = std::uint16_t;
using EdgeId = std::int32_t;

/// One vertex of a k-partite vertex set: partition class plus class-local index.
struct VertexRef {
  int cls = 0;
  int idx = 0;
  friend constexpr auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Vertex set with at most one vertex per partition class, kept sorted by class.
class LegalSet {
 public:
  LegalSet() = default;
  explicit LegalSet(std::vector<VertexRef> vertices);
  std::span<const VertexRef> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool has_class(int cls) const;
  const VertexRef& operator[](std::size_t i) const { return vertices_[i]; }

 private:
  std::vector<VertexRef> vertices_;
};

/// Vertex set with the same number of vertices in every one of the k classes.
class BalancedSet {
 public:
  BalancedSet() = default;
  BalancedSet(int k, std::vector<std::vector<int>> per_class);
  static BalancedSet from_refs(int k, std::span<const VertexRef> refs);

  int k() const { return k_; }
  int per_class_count() const { return k_ == 0 ? 0 : static_cast<int>(per_class_[0].size()); }
  std::size_t size() const { return static_cast<std::size_t>(k_) * per_class_count(); }
  const std::vector<int>& cls(int c) const { return per_class_.at(c); }
  std::vector<VertexRef> refs() const;
  bool contains(VertexRef v) const;
  bool disjoint_with(const BalancedSet& other) const;
  friend bool operator==(const BalancedSet&, const BalancedSet&) = default;

 private:
  int k_ = 0;
  std::vector<std::vector<int>> per_class_;  // sorted, distinct per class
};

/// Immutable k-partite k-uniform hypergraph. Vertices are class-local indices;
/// an edge holds exactly one vertex per class, stored as a k-tuple whose i-th
/// entry is the class-i vertex. Edges are kept lexicographically sorted and
/// deduplicated, so equal hypergraphs have identical edge arrays.
class KPartiteHypergraph {
 public:
  static KPartiteHypergraph build(int k, std::vector<int> class_sizes,
                                  const std::vector<std::vector<int>>& edges);

  int uniformity() const { return k_; }
  int class_size(int cls) const { return class_sizes_.at(cls); }
  const std::vector<int>& class_sizes() const { return class_sizes_; }
  bool classes_equal() const;
  std::size_t vertex_count() const;
  std::size_t edge_count() const { return edge_data_.size() / k_; }

  std::span<const VertexIdx> edge(EdgeId e) const {
    return {edge_data_.data() + static_cast<std::size_t>(e) * k_, static_cast<std::size_t>(k_)};
  }
  std::vector<VertexRef> edge_refs(EdgeId e) const;

  bool contains(std::span<const int> tuple) const;
  bool contains(std::span<const VertexIdx> tuple) const;
  std::optional<EdgeId> find_edge(std::span<const int> tuple) const;

  /// Edge ids incident to a vertex, ascending.
  const std::vector<EdgeId>& incident(VertexRef v) const;
  long long vertex_degree(VertexRef v) const { return static_cast<long long>(incident(v).size()); }

  /// Canonical text form (see docs/FORMAT in README): header then sorted edge lines.
  std::string to_text() const;
  void write_text(std::ostream& out) const;
  static KPartiteHypergraph from_text(std::istream& in);
  static KPartiteHypergraph from_text_file(const std::string& path);
  void write_text_file(const std::string& path) const;

  friend bool operator==(const KPartiteHypergraph& a, const KPartiteHypergraph& b) {
    return a.k_ == b.k_ && a.class_sizes_ == b.class_sizes_ && a.edge_data_ == b.edge_data_;
  }

 private:
  KPartiteHypergraph() = default;

  int k_ = 0;
  std::vector<int> class_sizes_;
  std::vector<VertexIdx> edge_data_;            // stride k_, lexicographically sorted
  std::vector<std::vector<EdgeId>> incident_;   // indexed by flat vertex id
  std::vector<std::size_t> vertex_offset_;      // class -> flat id base
  std::vector<std::uint64_t> membership_;       // flat edge bitset, may be empty
  std::size_t flat_edge_space_ = 0;             // product of class sizes if bitset in use

  std::size_t flat_vertex(int cls, int idx) const { return vertex_offset_[cls] + idx; }
  std::size_t flat_edge_index(std::span<const VertexIdx> tuple) const;
};

/// Matching: pairwise disjoint edges of a host hypergraph, with a per-class
/// coverage index. Holds a non-owning pointer to the host; the hypergraph must
/// outlive the matching.
class Matching {
 public:
  Matching() = default;
  explicit Matching(const KPartiteHypergraph& host);

  int size() const { return static_cast<int>(edges_.size()); }
  const std::vector<EdgeId>& edge_ids() const { return edges_; }
  bool can_add(EdgeId e) const;
  void add(EdgeId e);          // throws std::invalid_argument on conflict
  void remove(EdgeId e);
  bool covers(VertexRef v) const { return covered_[v.cls][v.idx] != 0; }
  int covered_in_class(int cls) const { return covered_count_[cls]; }
  std::vector<VertexRef> uncovered(int cls) const;
  std::vector<VertexRef> uncovered_all() const;
  bool is_perfect() const;
  /// Re-checks edge membership and pairwise disjointness against a hypergraph.
  bool verify(const KPartiteHypergraph& h) const;
  const KPartiteHypergraph* host() const { return host_; }

 private:
  const KPartiteHypergraph* host_ = nullptr;
  std::vector<EdgeId> edges_;
  std::vector<std::vector<std::uint8_t>> covered_;
  std::vector<int> covered_count_;
};

/// Link of a center vertex: the (k-1)-sets that complete it to an edge.
/// For k=3 the completions are pairs across the two other classes.
class LinkGraph {
 public:
  LinkGraph() = default;
  LinkGraph(VertexRef center, int k, std::vector<std::vector<VertexRef>> completions);

  VertexRef center() const { return center_; }
  int uniformity() const { return k_; }
  std::size_t edge_count() const { return completions_.size(); }
  const std::vector<std::vector<VertexRef>>& completions() const { return completions_; }
  bool contains(std::span<const VertexRef> completion) const;

 private:
  VertexRef center_{};
  int k_ = 0;
  std::vector<std::vector<VertexRef>> completions_;  // each sorted by class, list sorted
};

/// Number of edges containing every vertex of the legal set T.
long long degree(const KPartiteHypergraph& h, const LegalSet& t);

/// Minimum of degree() over all legal l-sets, 1 <= l <= k-1.
long long min_l_degree(const KPartiteHypergraph& h, int l);

/// Minimum of degree() over legal sets drawn from a fixed class set L.
long long min_degree_for_classes(const KPartiteHypergraph& h, std::span<const int> classes);

LinkGraph link_graph(const KPartiteHypergraph& h, VertexRef center);

/// Restricted link: completions drawn from the union of the given vertex sets,
/// at most one vertex per set.
LinkGraph link_graph(const KPartiteHypergraph& h, VertexRef center,
                     std::span<const std::vector<VertexRef>> restriction);

}  // namespace kpm
