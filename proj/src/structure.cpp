#include "kpm/structure.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace kpm {

namespace {

long long ipow_ll(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void require_transversal(const KPartiteHypergraph& h, const LegalSet& s) {
  if (h.uniformity() != 3) throw std::invalid_argument("pair types are defined for k = 3");
  if (s.size() != 3) throw std::invalid_argument("need one vertex from every class");
  for (const auto& v : s.vertices())
    if (v.idx < 0 || v.idx >= h.class_size(v.cls))
      throw std::invalid_argument("transversal vertex out of range");
}

}  // namespace

EdgeType edge_pair_type(const KPartiteHypergraph& h, const LegalSet& s, EdgeId e1, EdgeId e2) {
  require_transversal(h, s);
  if (e1 < 0 || e2 < 0 || e1 >= static_cast<EdgeId>(h.edge_count()) ||
      e2 >= static_cast<EdgeId>(h.edge_count()))
    throw std::invalid_argument("edge id out of range");
  if (e1 == e2) throw std::invalid_argument("need two distinct edges");
  auto t1 = h.edge(e1);
  auto t2 = h.edge(e2);
  for (int c = 0; c < 3; ++c) {
    if (t1[c] == t2[c]) throw std::invalid_argument("edges must be disjoint");
    if (s[c].idx == t1[c] || s[c].idx == t2[c])
      throw std::invalid_argument("transversal must avoid both edges");
  }
  EdgeType out;
  for (int i = 0; i < 3; ++i) {
    int trial[3];
    trial[i] = s[i].idx;
    trial[(i + 1) % 3] = t1[(i + 1) % 3];
    trial[(i + 2) % 3] = t2[(i + 2) % 3];
    if (h.contains(std::span<const int>(trial, 3))) ++out.a[i];
    trial[(i + 1) % 3] = t2[(i + 1) % 3];
    trial[(i + 2) % 3] = t1[(i + 2) % 3];
    if (h.contains(std::span<const int>(trial, 3))) ++out.a[i];
  }
  return out;
}

MatchingGraph::MatchingGraph() = default;

void MatchingGraph::record(EdgeId e1, EdgeId e2, EdgeType t, bool store) {
  ++cells_[t.a[0] * 9 + t.a[1] * 3 + t.a[2]];
  ++total_;
  if (store) pairs_.emplace_back(e1, e2, t);
}

int MatchingGraph::count(const EdgeType& t) const {
  return static_cast<int>(cells_[t.a[0] * 9 + t.a[1] * 3 + t.a[2]]);
}

long long MatchingGraph::count_axis(int axis, int value) const {
  long long total = 0;
  for (int a0 = 0; a0 < 3; ++a0)
    for (int a1 = 0; a1 < 3; ++a1)
      for (int a2 = 0; a2 < 3; ++a2) {
        int a[3] = {a0, a1, a2};
        if (a[axis] == value) total += cells_[a0 * 9 + a1 * 3 + a2];
      }
  return total;
}

long long MatchingGraph::total_pairs() const { return total_; }

MatchingGraph matching_graph(const KPartiteHypergraph& h, const Matching& m, const LegalSet& s,
                             bool store_pairs) {
  require_transversal(h, s);
  for (const auto& v : s.vertices())
    if (m.covers(v)) throw std::invalid_argument("transversal must avoid the matching");
  MatchingGraph g;
  const auto& ids = m.edge_ids();
  std::vector<EdgeId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      g.record(sorted[i], sorted[j], edge_pair_type(h, s, sorted[i], sorted[j]), store_pairs);
  return g;
}

std::optional<PathForm> classify_path_form(const KPartiteHypergraph& h, const LegalSet& s,
                                           EdgeId e1, EdgeId e2) {
  EdgeType t = edge_pair_type(h, s, e1, e2);
  int star = -1;
  int ones = 0;
  for (int i = 0; i < 3; ++i) {
    if (t.a[i] == 2) {
      if (star >= 0) return std::nullopt;
      star = i;
    } else if (t.a[i] == 1) {
      ++ones;
    }
  }
  if (star < 0 || ones != 2) return std::nullopt;

  // Auxiliary graph on the six endpoints: labels 0..2 are e1's vertices by
  // class, 3..5 are e2's. A witnessing triple for class i joins the class
  // (i+1) vertex of one edge with the class (i+2) vertex of the other.
  auto t1 = h.edge(e1);
  auto t2 = h.edge(e2);
  std::array<std::array<int, 2>, 4> aux{};
  int naux = 0;
  for (int i = 0; i < 3; ++i) {
    int trial[3];
    trial[i] = s[i].idx;
    trial[(i + 1) % 3] = t1[(i + 1) % 3];
    trial[(i + 2) % 3] = t2[(i + 2) % 3];
    if (h.contains(std::span<const int>(trial, 3)))
      aux[naux++] = {(i + 1) % 3, 3 + (i + 2) % 3};
    trial[(i + 1) % 3] = t2[(i + 1) % 3];
    trial[(i + 2) % 3] = t1[(i + 2) % 3];
    if (h.contains(std::span<const int>(trial, 3)))
      aux[naux++] = {3 + (i + 1) % 3, (i + 2) % 3};
  }

  std::array<int, 6> deg{};
  for (int e = 0; e < naux; ++e) {
    ++deg[aux[e][0]];
    ++deg[aux[e][1]];
  }
  int isolated = 0, endpoints = 0, inner = 0, start = -1;
  for (int v = 0; v < 6; ++v) {
    if (deg[v] == 0) ++isolated;
    if (deg[v] == 1) {
      ++endpoints;
      start = v;
    }
    if (deg[v] == 2) ++inner;
  }
  if (isolated != 1 || endpoints != 2 || inner != 3) return std::nullopt;

  // Connected + max degree 2 + one isolated vertex: a four-edge path.
  std::array<std::uint8_t, 6> seen{};
  std::queue<int> bfs;
  bfs.push(start);
  seen[start] = 1;
  int reached = 0;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    ++reached;
    for (int e = 0; e < naux; ++e) {
      int other = -1;
      if (aux[e][0] == v) other = aux[e][1];
      if (aux[e][1] == v) other = aux[e][0];
      if (other >= 0 && !seen[other]) {
        seen[other] = 1;
        bfs.push(other);
      }
    }
  }
  if (reached != 5) return std::nullopt;

  // The covered class-star vertex is the path's middle.
  if (deg[star] > 0) return PathForm::center_in_first;
  if (deg[3 + star] > 0) return PathForm::center_in_second;
  return std::nullopt;
}

std::vector<std::pair<EdgeId, int>> i_connections(const KPartiteHypergraph& h, const Matching& m,
                                                  VertexRef x, long long threshold) {
  const int k = h.uniformity();
  if (x.cls < 0 || x.cls >= k || x.idx < 0 || x.idx >= h.class_size(x.cls))
    throw std::invalid_argument("vertex out of range");
  if (m.covers(x)) throw std::invalid_argument("vertex must be uncovered");
  if (threshold < 0) threshold = ipow_ll(2 * k, k - 2);

  std::vector<std::pair<EdgeId, int>> out;
  std::vector<EdgeId> ids(m.edge_ids().begin(), m.edge_ids().end());
  std::sort(ids.begin(), ids.end());
  for (EdgeId ej : ids) {
    auto tj = h.edge(ej);
    for (int i = 0; i < k; ++i) {
      if (i == x.cls) continue;
      long long count = 0;
      for (EdgeId e : h.incident(x)) {
        auto t = h.edge(e);
        if (t[i] != tj[i]) continue;
        bool clean = true;
        for (int c = 0; c < k && clean; ++c) {
          if (c == x.cls || c == i) continue;
          if (m.covers({c, t[c]})) clean = false;
        }
        if (clean) ++count;
      }
      if (count > threshold) out.emplace_back(ej, i);
    }
  }
  return out;
}

// --- plain graphs and peeling ----------------------------------------------------

SimpleGraph::SimpleGraph(int n) {
  if (n < 0) throw std::invalid_argument("order must be nonnegative");
  adj_.resize(n);
  active_.assign(n, 1);
  active_count_ = n;
}

void SimpleGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= label_space() || v >= label_space())
    throw std::invalid_argument("vertex out of range");
  if (u == v) throw std::invalid_argument("no loops");
  if (!active_[u] || !active_[v]) throw std::invalid_argument("vertex was removed");
  if (has_edge(u, v)) return;
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
  ++edges_;
}

bool SimpleGraph::has_edge(int u, int v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

void SimpleGraph::remove_vertex(int v) {
  if (v < 0 || v >= label_space() || !active_[v]) return;
  for (int w : adj_[v]) {
    auto& a = adj_[w];
    a.erase(std::lower_bound(a.begin(), a.end(), v));
  }
  edges_ -= static_cast<long long>(adj_[v].size());
  adj_[v].clear();
  active_[v] = 0;
  --active_count_;
}

std::vector<int> SimpleGraph::vertices() const {
  std::vector<int> out;
  for (int v = 0; v < label_space(); ++v)
    if (active_[v]) out.push_back(v);
  return out;
}

std::optional<SimpleGraph> peel_subgraph(const SimpleGraph& g, double eps) {
  if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
  SimpleGraph core = g;
  const double cut = eps * g.order();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < core.label_space(); ++v)
      if (core.active(v) && static_cast<double>(core.degree(v)) < cut) {
        core.remove_vertex(v);
        changed = true;
      }
  }
  if (core.order() == 0) return std::nullopt;
  return core;
}

// --- closeness to a template ------------------------------------------------------

namespace {

void require_template_fits(const KPartiteHypergraph& h, const ExtremalTemplate& tmpl) {
  if (h.uniformity() != tmpl.uniformity())
    throw std::invalid_argument("uniformity mismatch with template");
  for (int c = 0; c < h.uniformity(); ++c)
    if (h.class_size(c) != tmpl.n()) throw std::invalid_argument("class size mismatch");
}

}  // namespace

ClosenessReport closeness(const KPartiteHypergraph& h, const ExtremalTemplate& tmpl) {
  require_template_fits(h, tmpl);
  long long present = 0;
  const EdgeId ne = static_cast<EdgeId>(h.edge_count());
  for (EdgeId e = 0; e < ne; ++e)
    if (tmpl.contains_edge(h.edge(e))) ++present;
  ClosenessReport rep;
  rep.missing = tmpl.edge_count() - present;
  rep.epsilon = static_cast<double>(rep.missing) /
                static_cast<double>(ipow_ll(tmpl.n(), tmpl.uniformity()));
  return rep;
}

GoodnessReport classify_good_vertices(const KPartiteHypergraph& h, const ExtremalTemplate& tmpl,
                                      double alpha) {
  require_template_fits(h, tmpl);
  const int k = h.uniformity();
  GoodnessReport rep;
  rep.threshold = alpha * static_cast<double>(ipow_ll(tmpl.n(), k - 1));
  rep.missing.resize(k);
  for (int c = 0; c < k; ++c) {
    rep.missing[c].assign(h.class_size(c), 0);
    for (int i = 0; i < h.class_size(c); ++i) {
      long long present = 0;
      for (EdgeId e : h.incident({c, i}))
        if (tmpl.contains_edge(h.edge(e))) ++present;
      rep.missing[c][i] = tmpl.link_degree({c, i}) - present;
      if (static_cast<double>(rep.missing[c][i]) > rep.threshold) rep.bad.push_back({c, i});
    }
  }
  return rep;
}

}  // namespace kpm
