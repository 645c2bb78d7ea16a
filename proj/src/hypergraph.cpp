#include "kpm/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kpm {

namespace {

std::string tuple_to_string(std::span<const int> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

constexpr std::size_t kMaxFlatBitset = std::size_t{1} << 26;

}  // namespace

LegalSet::LegalSet(std::vector<VertexRef> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    if (vertices_[i].cls == vertices_[i + 1].cls) {
      throw std::invalid_argument("legal set has two vertices in class " +
                                  std::to_string(vertices_[i].cls));
    }
  }
}

bool LegalSet::has_class(int cls) const {
  for (const auto& v : vertices_)
    if (v.cls == cls) return true;
  return false;
}

BalancedSet::BalancedSet(int k, std::vector<std::vector<int>> per_class)
    : k_(k), per_class_(std::move(per_class)) {
  if (k_ <= 0 || per_class_.size() != static_cast<std::size_t>(k_))
    throw std::invalid_argument("balanced set needs one vertex list per class");
  for (auto& c : per_class_) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      throw std::invalid_argument("balanced set repeats a vertex");
    if (c.size() != per_class_[0].size())
      throw std::invalid_argument("balanced set has uneven class counts");
  }
}

BalancedSet BalancedSet::from_refs(int k, std::span<const VertexRef> refs) {
  std::vector<std::vector<int>> per(k);
  for (const auto& r : refs) {
    if (r.cls < 0 || r.cls >= k) throw std::invalid_argument("vertex class out of range");
    per[r.cls].push_back(r.idx);
  }
  return BalancedSet(k, std::move(per));
}

std::vector<VertexRef> BalancedSet::refs() const {
  std::vector<VertexRef> out;
  for (int c = 0; c < k_; ++c)
    for (int i : per_class_[c]) out.push_back({c, i});
  return out;
}

bool BalancedSet::contains(VertexRef v) const {
  if (v.cls < 0 || v.cls >= k_) return false;
  const auto& c = per_class_[v.cls];
  return std::binary_search(c.begin(), c.end(), v.idx);
}

bool BalancedSet::disjoint_with(const BalancedSet& other) const {
  if (k_ != other.k_) return true;
  for (int c = 0; c < k_; ++c)
    for (int i : per_class_[c])
      if (std::binary_search(other.per_class_[c].begin(), other.per_class_[c].end(), i))
        return false;
  return true;
}

KPartiteHypergraph KPartiteHypergraph::build(int k, std::vector<int> class_sizes,
                                             const std::vector<std::vector<int>>& edges) {
  if (k < 2) throw std::invalid_argument("uniformity must be at least 2");
  if (class_sizes.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("need one class size per class");
  for (int s : class_sizes)
    if (s < 0 || s > 0xFFFF) throw std::invalid_argument("class size out of range");

  KPartiteHypergraph h;
  h.k_ = k;
  h.class_sizes_ = std::move(class_sizes);

  std::vector<std::vector<VertexIdx>> rows;
  rows.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.size() != static_cast<std::size_t>(k))
      throw std::invalid_argument("edge arity mismatch: " + tuple_to_string(e));
    std::vector<VertexIdx> row(k);
    for (int c = 0; c < k; ++c) {
      if (e[c] < 0 || e[c] >= h.class_sizes_[c])
        throw std::invalid_argument("edge index out of range: " + tuple_to_string(e));
      row[c] = static_cast<VertexIdx>(e[c]);
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  h.edge_data_.reserve(rows.size() * k);
  for (const auto& row : rows) h.edge_data_.insert(h.edge_data_.end(), row.begin(), row.end());

  h.vertex_offset_.assign(k + 1, 0);
  for (int c = 0; c < k; ++c) h.vertex_offset_[c + 1] = h.vertex_offset_[c] + h.class_sizes_[c];
  h.incident_.assign(h.vertex_offset_[k], {});
  const EdgeId m = static_cast<EdgeId>(h.edge_count());
  for (EdgeId e = 0; e < m; ++e) {
    auto t = h.edge(e);
    for (int c = 0; c < k; ++c) h.incident_[h.flat_vertex(c, t[c])].push_back(e);
  }

  std::size_t space = 1;
  bool fits = true;
  for (int s : h.class_sizes_) {
    if (s == 0) { fits = false; break; }
    if (space > kMaxFlatBitset / static_cast<std::size_t>(s)) { fits = false; break; }
    space *= static_cast<std::size_t>(s);
  }
  if (fits && space <= kMaxFlatBitset) {
    h.flat_edge_space_ = space;
    h.membership_.assign((space + 63) / 64, 0);
    for (EdgeId e = 0; e < m; ++e) {
      std::size_t ix = h.flat_edge_index(h.edge(e));
      h.membership_[ix >> 6] |= std::uint64_t{1} << (ix & 63);
    }
  }
  return h;
}

bool KPartiteHypergraph::classes_equal() const {
  return std::all_of(class_sizes_.begin(), class_sizes_.end(),
                     [&](int s) { return s == class_sizes_[0]; });
}

std::size_t KPartiteHypergraph::vertex_count() const {
  return std::accumulate(class_sizes_.begin(), class_sizes_.end(), std::size_t{0});
}

std::vector<VertexRef> KPartiteHypergraph::edge_refs(EdgeId e) const {
  auto t = edge(e);
  std::vector<VertexRef> out(k_);
  for (int c = 0; c < k_; ++c) out[c] = {c, t[c]};
  return out;
}

std::size_t KPartiteHypergraph::flat_edge_index(std::span<const VertexIdx> tuple) const {
  std::size_t ix = 0;
  for (int c = 0; c < k_; ++c) ix = ix * class_sizes_[c] + tuple[c];
  return ix;
}

bool KPartiteHypergraph::contains(std::span<const VertexIdx> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(k_)) return false;
  for (int c = 0; c < k_; ++c)
    if (tuple[c] >= class_sizes_[c]) return false;
  if (!membership_.empty()) {
    std::size_t ix = flat_edge_index(tuple);
    return (membership_[ix >> 6] >> (ix & 63)) & 1;
  }
  const std::size_t m = edge_count();
  std::size_t lo = 0, hi = m;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto e = edge(static_cast<EdgeId>(mid));
    if (std::lexicographical_compare(e.begin(), e.end(), tuple.begin(), tuple.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == m) return false;
  auto e = edge(static_cast<EdgeId>(lo));
  return std::equal(e.begin(), e.end(), tuple.begin(), tuple.end());
}

bool KPartiteHypergraph::contains(std::span<const int> tuple) const {
  std::vector<VertexIdx> t(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] > 0xFFFF) return false;
    t[i] = static_cast<VertexIdx>(tuple[i]);
  }
  return contains(std::span<const VertexIdx>(t));
}

std::optional<EdgeId> KPartiteHypergraph::find_edge(std::span<const int> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(k_)) return std::nullopt;
  std::vector<VertexIdx> t(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= class_sizes_[i]) return std::nullopt;
    t[i] = static_cast<VertexIdx>(tuple[i]);
  }
  const std::size_t m = edge_count();
  std::size_t lo = 0, hi = m;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto e = edge(static_cast<EdgeId>(mid));
    if (std::lexicographical_compare(e.begin(), e.end(), t.begin(), t.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == m) return std::nullopt;
  auto e = edge(static_cast<EdgeId>(lo));
  if (!std::equal(e.begin(), e.end(), t.begin(), t.end())) return std::nullopt;
  return static_cast<EdgeId>(lo);
}

const std::vector<EdgeId>& KPartiteHypergraph::incident(VertexRef v) const {
  if (v.cls < 0 || v.cls >= k_ || v.idx < 0 || v.idx >= class_sizes_[v.cls])
    throw std::invalid_argument("vertex out of range: class " + std::to_string(v.cls) +
                                " index " + std::to_string(v.idx));
  return incident_[flat_vertex(v.cls, v.idx)];
}

// --- text format ------------------------------------------------------------
//
// Header line:  k=<k> n=<n_1,...,n_k>
// Edge lines:   e i_1 i_2 ... i_k   (class-local, 0-based)
// Lines starting with '#' and blank lines are ignored on read.
// The writer is canonical: sorted edges, single spaces, LF endings.

void KPartiteHypergraph::write_text(std::ostream& out) const {
  out << "k=" << k_ << " n=";
  for (int c = 0; c < k_; ++c) {
    if (c) out << ',';
    out << class_sizes_[c];
  }
  out << '\n';
  const EdgeId m = static_cast<EdgeId>(edge_count());
  for (EdgeId e = 0; e < m; ++e) {
    out << 'e';
    for (VertexIdx v : edge(e)) out << ' ' << static_cast<int>(v);
    out << '\n';
  }
}

std::string KPartiteHypergraph::to_text() const {
  std::ostringstream os;
  write_text(os);
  return os.str();
}

KPartiteHypergraph KPartiteHypergraph::from_text(std::istream& in) {
  std::string line;
  int lineno = 0;
  int k = 0;
  std::vector<int> sizes;
  bool have_header = false;
  std::vector<std::vector<int>> edges;

  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    if (!have_header) {
      std::istringstream ls(line.substr(start));
      std::string ktok, ntok;
      if (!(ls >> ktok >> ntok) || ktok.rfind("k=", 0) != 0 || ntok.rfind("n=", 0) != 0)
        fail("expected header 'k=<k> n=<n_1,...,n_k>'");
      try {
        k = std::stoi(ktok.substr(2));
      } catch (...) {
        fail("bad k value");
      }
      std::string rest = ntok.substr(2);
      std::istringstream ns(rest);
      std::string part;
      while (std::getline(ns, part, ',')) {
        try {
          sizes.push_back(std::stoi(part));
        } catch (...) {
          fail("bad class size '" + part + "'");
        }
      }
      if (k < 2 || sizes.size() != static_cast<std::size_t>(k))
        fail("class size list does not match k");
      have_header = true;
      continue;
    }
    std::istringstream ls(line.substr(start));
    std::string tag;
    ls >> tag;
    if (tag != "e") fail("expected edge line starting with 'e'");
    std::vector<int> tuple;
    int v;
    while (ls >> v) tuple.push_back(v);
    if (tuple.size() != static_cast<std::size_t>(k)) fail("edge arity mismatch");
    edges.push_back(std::move(tuple));
  }
  if (!have_header) throw std::invalid_argument("missing header line");
  return build(k, std::move(sizes), edges);
}

KPartiteHypergraph KPartiteHypergraph::from_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return from_text(in);
}

void KPartiteHypergraph::write_text_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  write_text(out);
}

// --- Matching ----------------------------------------------------------------

Matching::Matching(const KPartiteHypergraph& host) : host_(&host) {
  const int k = host.uniformity();
  covered_.resize(k);
  for (int c = 0; c < k; ++c) covered_[c].assign(host.class_size(c), 0);
  covered_count_.assign(k, 0);
}

bool Matching::can_add(EdgeId e) const {
  auto t = host_->edge(e);
  for (int c = 0; c < host_->uniformity(); ++c)
    if (covered_[c][t[c]]) return false;
  return true;
}

void Matching::add(EdgeId e) {
  if (e < 0 || static_cast<std::size_t>(e) >= host_->edge_count())
    throw std::invalid_argument("edge id out of range");
  if (!can_add(e)) throw std::invalid_argument("edge conflicts with matching");
  auto t = host_->edge(e);
  for (int c = 0; c < host_->uniformity(); ++c) {
    covered_[c][t[c]] = 1;
    ++covered_count_[c];
  }
  edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
}

void Matching::remove(EdgeId e) {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) throw std::invalid_argument("edge not in matching");
  edges_.erase(it);
  auto t = host_->edge(e);
  for (int c = 0; c < host_->uniformity(); ++c) {
    covered_[c][t[c]] = 0;
    --covered_count_[c];
  }
}

std::vector<VertexRef> Matching::uncovered(int cls) const {
  std::vector<VertexRef> out;
  for (int i = 0; i < host_->class_size(cls); ++i)
    if (!covered_[cls][i]) out.push_back({cls, i});
  return out;
}

std::vector<VertexRef> Matching::uncovered_all() const {
  std::vector<VertexRef> out;
  for (int c = 0; c < host_->uniformity(); ++c) {
    auto part = uncovered(c);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool Matching::is_perfect() const {
  for (int c = 0; c < host_->uniformity(); ++c)
    if (covered_count_[c] != host_->class_size(c)) return false;
  return true;
}

bool Matching::verify(const KPartiteHypergraph& h) const {
  if (host_ == nullptr) return false;
  if (h.uniformity() != host_->uniformity() || h.class_sizes() != host_->class_sizes())
    return false;
  std::vector<std::vector<std::uint8_t>> seen(h.uniformity());
  for (int c = 0; c < h.uniformity(); ++c) seen[c].assign(h.class_size(c), 0);
  for (EdgeId e : edges_) {
    if (e < 0 || static_cast<std::size_t>(e) >= h.edge_count()) return false;
    auto t = h.edge(e);
    for (int c = 0; c < h.uniformity(); ++c) {
      if (seen[c][t[c]]) return false;
      seen[c][t[c]] = 1;
    }
  }
  return true;
}

// --- LinkGraph ---------------------------------------------------------------

LinkGraph::LinkGraph(VertexRef center, int k, std::vector<std::vector<VertexRef>> completions)
    : center_(center), k_(k), completions_(std::move(completions)) {
  for (auto& c : completions_) std::sort(c.begin(), c.end());
  std::sort(completions_.begin(), completions_.end());
  completions_.erase(std::unique(completions_.begin(), completions_.end()), completions_.end());
}

bool LinkGraph::contains(std::span<const VertexRef> completion) const {
  std::vector<VertexRef> key(completion.begin(), completion.end());
  std::sort(key.begin(), key.end());
  return std::binary_search(completions_.begin(), completions_.end(), key);
}

// --- degree operations --------------------------------------------------------

long long degree(const KPartiteHypergraph& h, const LegalSet& t) {
  if (t.size() == 0) throw std::invalid_argument("degree of empty set is not defined");
  if (t.size() > static_cast<std::size_t>(h.uniformity()))
    throw std::invalid_argument("legal set larger than uniformity");
  // Scan only edges incident to the member with the fewest incident edges.
  const VertexRef* pivot = nullptr;
  std::size_t best = ~std::size_t{0};
  for (const auto& v : t.vertices()) {
    std::size_t d = h.incident(v).size();
    if (d < best) {
      best = d;
      pivot = &v;
    }
  }
  long long count = 0;
  for (EdgeId e : h.incident(*pivot)) {
    auto tuple = h.edge(e);
    bool all = true;
    for (const auto& v : t.vertices()) {
      if (tuple[v.cls] != v.idx) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }
  return count;
}

namespace {

long long min_degree_over_tuples(const KPartiteHypergraph& h, std::span<const int> classes) {
  // Iterates the full index product over the given classes.
  std::vector<int> idx(classes.size(), 0);
  for (int c : classes)
    if (h.class_size(c) == 0) return 0;
  long long best = -1;
  while (true) {
    std::vector<VertexRef> refs;
    refs.reserve(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) refs.push_back({classes[i], idx[i]});
    long long d = degree(h, LegalSet(std::move(refs)));
    if (best < 0 || d < best) best = d;
    if (best == 0) return 0;
    std::size_t pos = classes.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < h.class_size(classes[pos])) break;
      idx[pos] = 0;
      if (pos == 0) return best;
    }
  }
}

}  // namespace

long long min_degree_for_classes(const KPartiteHypergraph& h, std::span<const int> classes) {
  if (classes.empty()) throw std::invalid_argument("class set must be nonempty");
  std::vector<int> cs(classes.begin(), classes.end());
  std::sort(cs.begin(), cs.end());
  if (std::adjacent_find(cs.begin(), cs.end()) != cs.end())
    throw std::invalid_argument("class set repeats a class");
  for (int c : cs)
    if (c < 0 || c >= h.uniformity()) throw std::invalid_argument("class out of range");
  return min_degree_over_tuples(h, cs);
}

long long min_l_degree(const KPartiteHypergraph& h, int l) {
  const int k = h.uniformity();
  if (l < 1 || l > k - 1)
    throw std::invalid_argument("l must satisfy 1 <= l <= k-1");
  if (l == 1) {
    long long best = -1;
    for (int c = 0; c < k; ++c)
      for (int i = 0; i < h.class_size(c); ++i) {
        long long d = h.vertex_degree({c, i});
        if (best < 0 || d < best) best = d;
      }
    return best < 0 ? 0 : best;
  }
  // All l-subsets of classes.
  std::vector<int> pick(l);
  long long best = -1;
  std::vector<int> stack;
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == l) {
      long long d = min_degree_over_tuples(h, pick);
      if (best < 0 || d < best) best = d;
      return;
    }
    for (int c = start; c < k; ++c) {
      pick[depth] = c;
      self(self, c + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return best < 0 ? 0 : best;
}

LinkGraph link_graph(const KPartiteHypergraph& h, VertexRef center) {
  std::vector<std::vector<VertexRef>> comps;
  for (EdgeId e : h.incident(center)) {
    auto t = h.edge(e);
    std::vector<VertexRef> comp;
    for (int c = 0; c < h.uniformity(); ++c)
      if (c != center.cls) comp.push_back({c, t[c]});
    comps.push_back(std::move(comp));
  }
  return LinkGraph(center, h.uniformity(), std::move(comps));
}

LinkGraph link_graph(const KPartiteHypergraph& h, VertexRef center,
                     std::span<const std::vector<VertexRef>> restriction) {
  std::vector<std::vector<VertexRef>> comps;
  for (EdgeId e : h.incident(center)) {
    auto t = h.edge(e);
    std::vector<VertexRef> comp;
    for (int c = 0; c < h.uniformity(); ++c)
      if (c != center.cls) comp.push_back({c, t[c]});
    // Every vertex must come from some restriction set, one vertex per set.
    std::vector<int> used(restriction.size(), 0);
    bool ok = true;
    for (const auto& v : comp) {
      int owner = -1;
      for (std::size_t s = 0; s < restriction.size(); ++s) {
        if (std::find(restriction[s].begin(), restriction[s].end(), v) != restriction[s].end()) {
          owner = static_cast<int>(s);
          break;
        }
      }
      if (owner < 0 || used[owner]) {
        ok = false;
        break;
      }
      used[owner] = 1;
    }
    if (ok) comps.push_back(std::move(comp));
  }
  return LinkGraph(center, h.uniformity(), std::move(comps));
}

}  // namespace kpm
