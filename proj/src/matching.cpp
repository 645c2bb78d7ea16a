#include "kpm/matching.hpp"

#include "kpm/rng.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace kpm {

namespace {

// --- small edge-list search ---------------------------------------------------

struct EdgeListSearch {
  const KPartiteHypergraph& h;
  std::span<const EdgeId> edges;
  int stop_at;  // stop as soon as a matching of this size is found (<0: none)
  std::uint64_t cap;
  std::uint64_t nodes = 0;
  bool exact = true;
  bool stopped = false;
  std::vector<std::uint8_t> covered;  // flat vertex marks
  std::vector<std::size_t> offset;
  std::vector<EdgeId> cur, best;

  EdgeListSearch(const KPartiteHypergraph& hg, std::span<const EdgeId> es, int stop,
                 std::uint64_t c)
      : h(hg), edges(es), stop_at(stop), cap(c) {
    offset.assign(h.uniformity() + 1, 0);
    for (int i = 0; i < h.uniformity(); ++i) offset[i + 1] = offset[i] + h.class_size(i);
    covered.assign(offset.back(), 0);
  }

  bool fits(EdgeId e) const {
    auto t = h.edge(e);
    for (int c = 0; c < h.uniformity(); ++c)
      if (covered[offset[c] + t[c]]) return false;
    return true;
  }

  void mark(EdgeId e, std::uint8_t val) {
    auto t = h.edge(e);
    for (int c = 0; c < h.uniformity(); ++c) covered[offset[c] + t[c]] = val;
  }

  void rec(std::size_t pos) {
    if (stopped) return;
    if (cur.size() > best.size()) {
      best = cur;
      if (stop_at >= 0 && static_cast<int>(best.size()) >= stop_at) {
        stopped = true;
        return;
      }
    }
    if (pos == edges.size()) return;
    if (cur.size() + (edges.size() - pos) <= best.size()) return;
    if (nodes++ >= cap) {
      exact = false;
      return;
    }
    if (fits(edges[pos])) {
      mark(edges[pos], 1);
      cur.push_back(edges[pos]);
      rec(pos + 1);
      cur.pop_back();
      mark(edges[pos], 0);
      if (stopped) return;
    }
    rec(pos + 1);
  }
};

// --- branch and bound ----------------------------------------------------------

struct Undo {
  std::vector<EdgeId> killed;
  std::vector<int> disabled;  // flat vertex ids
};

struct Bnb {
  const KPartiteHypergraph& h;
  int k;
  int ne;
  std::vector<std::size_t> offset;
  int nv;
  std::vector<int> cls_of;

  std::vector<std::uint8_t> avail;
  std::vector<int> avail_count;
  std::vector<std::uint8_t> alive;
  std::vector<int> res_deg;
  int alive_count = 0;

  std::vector<EdgeId> current;
  std::vector<EdgeId> best;
  int stop_at = -1;
  int global_ub = 0;
  std::uint64_t nodes = 0;
  std::uint64_t node_limit;
  bool clean = true;
  bool hit_stop = false;
  std::chrono::steady_clock::time_point deadline{};
  bool has_deadline = false;

  std::vector<std::uint8_t> tmp_mark;
  std::vector<EdgeId> tmp_ext;
  std::vector<EdgeId> hvec;
  std::vector<int> hdeg;

  explicit Bnb(const KPartiteHypergraph& hg, const SearchBudget& budget)
      : h(hg), k(hg.uniformity()), ne(static_cast<int>(hg.edge_count())),
        node_limit(budget.node_limit) {
    offset.assign(k + 1, 0);
    for (int c = 0; c < k; ++c) offset[c + 1] = offset[c] + h.class_size(c);
    nv = static_cast<int>(offset.back());
    cls_of.resize(nv);
    for (int c = 0; c < k; ++c)
      for (int i = 0; i < h.class_size(c); ++i) cls_of[offset[c] + i] = c;
    avail.assign(nv, 1);
    avail_count.resize(k);
    for (int c = 0; c < k; ++c) avail_count[c] = h.class_size(c);
    alive.assign(ne, 1);
    alive_count = ne;
    res_deg.assign(nv, 0);
    for (EdgeId e = 0; e < ne; ++e) {
      auto t = h.edge(e);
      for (int c = 0; c < k; ++c) ++res_deg[offset[c] + t[c]];
    }
    global_ub = *std::min_element(avail_count.begin(), avail_count.end());
    tmp_mark.assign(nv, 0);
    hdeg.assign(nv, 0);
    if (budget.time_limit.count() > 0) {
      deadline = std::chrono::steady_clock::now() + budget.time_limit;
      has_deadline = true;
    }
  }

  int flat(int c, VertexIdx i) const { return static_cast<int>(offset[c]) + i; }

  void kill_edge(EdgeId e, Undo& u) {
    alive[e] = 0;
    --alive_count;
    u.killed.push_back(e);
    auto t = h.edge(e);
    for (int c = 0; c < k; ++c) --res_deg[flat(c, t[c])];
  }

  void disable_vertex(int fv, Undo& u) {
    avail[fv] = 0;
    --avail_count[cls_of[fv]];
    u.disabled.push_back(fv);
    for (EdgeId e : h.incident({cls_of[fv], fv - static_cast<int>(offset[cls_of[fv]])}))
      if (alive[e]) kill_edge(e, u);
  }

  void propagate(Undo& u) {
    // A vertex with no remaining edges can never be covered; write it off so
    // the class counts reflect what is still achievable.
    for (int fv = 0; fv < nv; ++fv)
      if (avail[fv] && res_deg[fv] == 0) {
        avail[fv] = 0;
        --avail_count[cls_of[fv]];
        u.disabled.push_back(fv);
      }
  }

  void take(EdgeId e, Undo& u) {
    current.push_back(e);
    auto t = h.edge(e);
    for (int c = 0; c < k; ++c) disable_vertex(flat(c, t[c]), u);
    propagate(u);
  }

  void untake(Undo& u) {
    current.pop_back();
    restore(u);
  }

  void skip(int fv, Undo& u) {
    disable_vertex(fv, u);
    propagate(u);
  }

  void restore(Undo& u) {
    for (EdgeId e : u.killed) {
      alive[e] = 1;
      ++alive_count;
      auto t = h.edge(e);
      for (int c = 0; c < k; ++c) ++res_deg[flat(c, t[c])];
    }
    for (int fv : u.disabled) {
      avail[fv] = 1;
      ++avail_count[cls_of[fv]];
    }
  }

  void greedy_complete() {
    tmp_ext.clear();
    for (EdgeId e = 0; e < ne; ++e) {
      if (!alive[e]) continue;
      auto t = h.edge(e);
      bool ok = true;
      for (int c = 0; c < k; ++c)
        if (tmp_mark[flat(c, t[c])]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (int c = 0; c < k; ++c) tmp_mark[flat(c, t[c])] = 1;
      tmp_ext.push_back(e);
    }
    for (EdgeId e : tmp_ext) {
      auto t = h.edge(e);
      for (int c = 0; c < k; ++c) tmp_mark[flat(c, t[c])] = 0;
    }
    if (current.size() + tmp_ext.size() > best.size()) {
      best = current;
      best.insert(best.end(), tmp_ext.begin(), tmp_ext.end());
    }
  }

  // Upper bound on how many further edges any matching can add from the live
  // residual: every hitting set bounds the residual matching, so a greedy
  // hitting prefix plus an exact answer on the small tail is admissible.
  int hitting_bound(int cutoff) {
    hvec.clear();
    for (EdgeId e = 0; e < ne; ++e)
      if (alive[e]) hvec.push_back(e);
    std::vector<int> touched;
    for (EdgeId e : hvec) {
      auto t = h.edge(e);
      for (int c = 0; c < k; ++c) {
        int fv = flat(c, t[c]);
        if (hdeg[fv] == 0) touched.push_back(fv);
        ++hdeg[fv];
      }
    }
    int picked = 0;
    constexpr std::size_t kTail = 64;
    while (hvec.size() > kTail && picked < cutoff) {
      int bestv = -1, bestd = 0;
      for (int fv : touched)
        if (hdeg[fv] > bestd || (hdeg[fv] == bestd && bestv >= 0 && fv < bestv)) {
          if (hdeg[fv] > 0) {
            bestd = hdeg[fv];
            bestv = fv;
          }
        }
      if (bestv < 0) break;
      ++picked;
      std::size_t out = 0;
      for (std::size_t i = 0; i < hvec.size(); ++i) {
        auto t = h.edge(hvec[i]);
        bool hit = false;
        for (int c = 0; c < k; ++c)
          if (flat(c, t[c]) == bestv) {
            hit = true;
            break;
          }
        if (hit) {
          for (int c = 0; c < k; ++c) --hdeg[flat(c, t[c])];
        } else {
          hvec[out++] = hvec[i];
        }
      }
      hvec.resize(out);
    }
    for (int fv : touched) hdeg[fv] = 0;
    if (picked >= cutoff) return cutoff;  // bound can no longer improve on the caller's
    int tail;
    if (hvec.empty()) {
      tail = 0;
    } else {
      EdgeListSearch tailsearch(h, hvec, -1, 20'000);
      tailsearch.rec(0);
      tail = tailsearch.exact ? static_cast<int>(tailsearch.best.size())
                              : static_cast<int>(hvec.size());
    }
    return picked + tail;
  }

  bool out_of_time() {
    return has_deadline && (nodes & 1023) == 0 &&
           std::chrono::steady_clock::now() > deadline;
  }

  void rec() {
    if (hit_stop || !clean) return;
    if (nodes >= node_limit || out_of_time()) {
      clean = false;
      return;
    }
    greedy_complete();
    if (static_cast<int>(best.size()) >= global_ub ||
        (stop_at >= 0 && static_cast<int>(best.size()) >= stop_at)) {
      hit_stop = true;
      return;
    }
    int mc = std::numeric_limits<int>::max();
    for (int c = 0; c < k; ++c) mc = std::min(mc, avail_count[c]);
    const int cur = static_cast<int>(current.size());
    const int bestsz = static_cast<int>(best.size());
    if (cur + mc <= bestsz) return;
    if (alive_count == 0) return;
    int hb = hitting_bound(mc);
    if (cur + std::min(mc, hb) <= bestsz) return;

    // Branch on the available vertex with fewest remaining edges.
    int pick = -1, pickdeg = std::numeric_limits<int>::max();
    for (int fv = 0; fv < nv; ++fv)
      if (avail[fv] && res_deg[fv] > 0 && res_deg[fv] < pickdeg) {
        pickdeg = res_deg[fv];
        pick = fv;
      }
    if (pick < 0) return;

    const int pcls = cls_of[pick];
    const int pidx = pick - static_cast<int>(offset[pcls]);
    std::vector<std::pair<long long, EdgeId>> branches;
    for (EdgeId e : h.incident({pcls, pidx})) {
      if (!alive[e]) continue;
      auto t = h.edge(e);
      long long key = 0;
      for (int c = 0; c < k; ++c) key += res_deg[flat(c, t[c])];
      branches.emplace_back(key, e);
    }
    std::sort(branches.begin(), branches.end());
    for (auto& [key, e] : branches) {
      ++nodes;
      Undo u;
      take(e, u);
      rec();
      untake(u);
      if (hit_stop || !clean) return;
    }
    ++nodes;
    Undo u;
    skip(pick, u);
    rec();
    restore(u);
  }
};

struct BnbOutcome {
  std::vector<EdgeId> edges;
  bool optimal = false;
  bool reached_stop = false;
  std::uint64_t nodes = 0;
};

BnbOutcome run_single(const KPartiteHypergraph& h, const SearchBudget& budget, int stop_at,
                      const std::vector<EdgeId>& prefix) {
  Bnb b(h, budget);
  b.stop_at = stop_at;
  Undo u;
  for (EdgeId e : prefix) {
    if (!b.alive[e]) throw std::logic_error("prefix edge conflicts");
    b.take(e, u);
  }
  if (prefix.empty()) {
    Undo u0;
    b.propagate(u0);  // write off isolated vertices up front
  }
  b.rec();
  BnbOutcome out;
  out.edges = b.best;
  out.nodes = b.nodes;
  out.reached_stop = b.hit_stop;
  out.optimal = b.clean || static_cast<int>(b.best.size()) >= b.global_ub;
  return out;
}

BnbOutcome run_search(const KPartiteHypergraph& h, const SearchBudget& budget, int stop_at) {
  if (budget.threads <= 1 || h.edge_count() < 64)
    return run_single(h, budget, stop_at, {});

  // Split the root branches across workers. Workers do not share discoveries,
  // so the merged answer is independent of scheduling.
  Bnb probe(h, budget);
  probe.stop_at = stop_at;
  Undo u0;
  probe.propagate(u0);
  probe.greedy_complete();
  int pick = -1, pickdeg = std::numeric_limits<int>::max();
  for (int fv = 0; fv < probe.nv; ++fv)
    if (probe.avail[fv] && probe.res_deg[fv] > 0 && probe.res_deg[fv] < pickdeg) {
      pickdeg = probe.res_deg[fv];
      pick = fv;
    }
  if (pick < 0) {
    BnbOutcome out;
    out.edges = probe.best;
    out.optimal = true;
    return out;
  }
  const int pcls = probe.cls_of[pick];
  const int pidx = pick - static_cast<int>(probe.offset[pcls]);
  std::vector<std::pair<long long, EdgeId>> branches;
  for (EdgeId e : h.incident({pcls, pidx})) {
    auto t = h.edge(e);
    long long key = 0;
    for (int c = 0; c < probe.k; ++c) key += probe.res_deg[probe.flat(c, t[c])];
    branches.emplace_back(key, e);
  }
  std::sort(branches.begin(), branches.end());

  SearchBudget part = budget;
  part.threads = 1;
  part.node_limit = std::max<std::uint64_t>(budget.node_limit / (branches.size() + 1), 1024);

  std::vector<std::future<BnbOutcome>> futs;
  futs.reserve(branches.size());
  for (auto& [key, e] : branches) {
    EdgeId edge = e;
    futs.push_back(std::async(std::launch::async, [&h, part, stop_at, edge]() {
      return run_single(h, part, stop_at, {edge});
    }));
  }
  // Skip branch: the chosen vertex stays uncovered. Equivalent to searching the
  // hypergraph without that vertex's edges; emulate by forbidding them.
  BnbOutcome skip_out;
  {
    Bnb b(h, part);
    b.stop_at = stop_at;
    Undo us;
    b.skip(pick, us);
    b.rec();
    skip_out.edges = b.best;
    skip_out.nodes = b.nodes;
    skip_out.reached_stop = b.hit_stop;
    skip_out.optimal = b.clean || static_cast<int>(b.best.size()) >= b.global_ub;
  }

  BnbOutcome merged = skip_out;
  bool all_optimal = skip_out.optimal;
  std::uint64_t total_nodes = skip_out.nodes;
  for (auto& f : futs) {
    BnbOutcome o = f.get();
    total_nodes += o.nodes;
    all_optimal = all_optimal && o.optimal;
    if (o.edges.size() > merged.edges.size()) merged = o;
  }
  merged.nodes = total_nodes;
  merged.optimal = all_optimal ||
                   (stop_at >= 0 && static_cast<int>(merged.edges.size()) >= stop_at);
  std::sort(merged.edges.begin(), merged.edges.end());
  return merged;
}

Matching to_matching(const KPartiteHypergraph& h, const std::vector<EdgeId>& edges) {
  Matching m(h);
  for (EdgeId e : edges) m.add(e);
  return m;
}

}  // namespace

MatchingSearchResult max_matching_exact(const KPartiteHypergraph& h, const SearchBudget& budget) {
  auto out = run_search(h, budget, -1);
  MatchingSearchResult r{to_matching(h, out.edges), out.optimal, out.nodes};
  return r;
}

PmAnswer has_perfect_matching(const KPartiteHypergraph& h, const SearchBudget& budget) {
  PmAnswer ans;
  if (!h.classes_equal()) {
    ans.status = PmStatus::no;
    return ans;
  }
  const int n = h.class_size(0);
  if (n == 0) {
    ans.status = PmStatus::yes;
    ans.witness = Matching(h);
    return ans;
  }
  auto out = run_search(h, budget, n);
  ans.nodes = out.nodes;
  if (static_cast<int>(out.edges.size()) == n) {
    ans.status = PmStatus::yes;
    ans.witness = to_matching(h, out.edges);
  } else if (out.optimal) {
    ans.status = PmStatus::no;
  } else {
    ans.status = PmStatus::unknown;
  }
  return ans;
}

Matching greedy_matching(const KPartiteHypergraph& h, std::uint64_t seed) {
  std::vector<EdgeId> order(h.edge_count());
  std::iota(order.begin(), order.end(), 0);
  auto g = rng::engine(seed);
  rng::shuffle(order, g);
  Matching m(h);
  for (EdgeId e : order)
    if (m.can_add(e)) m.add(e);
  return m;
}

std::optional<Matching> augment_local(const KPartiteHypergraph& h, const Matching& m, int depth) {
  if (depth < 1 || depth > 3) throw std::invalid_argument("depth must be 1, 2 or 3");
  if (!m.verify(h)) throw std::invalid_argument("matching does not fit the hypergraph");
  const int k = h.uniformity();
  const EdgeId ne = static_cast<EdgeId>(h.edge_count());

  std::vector<std::vector<std::uint8_t>> pool(k);
  for (int c = 0; c < k; ++c) {
    pool[c].assign(h.class_size(c), 0);
    for (int i = 0; i < h.class_size(c); ++i)
      if (!m.covers({c, i})) pool[c][i] = 1;
  }

  // Direct extension first.
  for (EdgeId e = 0; e < ne; ++e) {
    auto t = h.edge(e);
    bool free = true;
    for (int c = 0; c < k; ++c)
      if (!pool[c][t[c]]) {
        free = false;
        break;
      }
    if (free) {
      Matching out = m;
      out.add(e);
      return out;
    }
  }

  const auto& medges = m.edge_ids();
  const int msz = static_cast<int>(medges.size());
  std::vector<EdgeId> candidates;
  for (int r = 1; r <= depth && r <= msz; ++r) {
    std::vector<int> comb(r);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      // Release the chosen sub-matching into the pool.
      for (int j : comb) {
        auto t = h.edge(medges[j]);
        for (int c = 0; c < k; ++c) pool[c][t[c]] = 1;
      }
      candidates.clear();
      for (EdgeId e = 0; e < ne; ++e) {
        auto t = h.edge(e);
        bool inside = true;
        for (int c = 0; c < k; ++c)
          if (!pool[c][t[c]]) {
            inside = false;
            break;
          }
        if (inside) candidates.push_back(e);
      }
      if (static_cast<int>(candidates.size()) > r) {
        auto found = max_matching_on_edges(h, candidates, r + 1, 500'000);
        if (static_cast<int>(found.edges.size()) >= r + 1) {
          Matching out = m;
          for (int j : comb) out.remove(medges[j]);
          for (EdgeId e : found.edges) out.add(e);
          return out;
        }
      }
      for (int j : comb) {
        auto t = h.edge(medges[j]);
        for (int c = 0; c < k; ++c) pool[c][t[c]] = 0;
      }
      // Next r-combination.
      int pos = r - 1;
      while (pos >= 0 && comb[pos] == msz - r + pos) --pos;
      if (pos < 0) break;
      ++comb[pos];
      for (int q = pos + 1; q < r; ++q) comb[q] = comb[q - 1] + 1;
    }
  }
  return std::nullopt;
}

Matching augment_to_fixpoint(const KPartiteHypergraph& h, Matching m, int depth) {
  while (auto better = augment_local(h, m, depth)) m = std::move(*better);
  return m;
}

bool is_intersecting_family(const KPartiteHypergraph& h) {
  const EdgeId ne = static_cast<EdgeId>(h.edge_count());
  const int k = h.uniformity();
  for (EdgeId a = 0; a < ne; ++a) {
    auto ta = h.edge(a);
    for (EdgeId b = a + 1; b < ne; ++b) {
      auto tb = h.edge(b);
      bool share = false;
      for (int c = 0; c < k; ++c)
        if (ta[c] == tb[c]) {
          share = true;
          break;
        }
      if (!share) return false;
    }
  }
  return true;
}

EdgeListMatchingResult max_matching_on_edges(const KPartiteHypergraph& h,
                                             std::span<const EdgeId> candidates, int stop_at,
                                             std::uint64_t node_cap) {
  EdgeListSearch s(h, candidates, stop_at, node_cap);
  s.rec(0);
  return {s.best, s.exact};
}

// --- balanced cover search -----------------------------------------------------

namespace {

struct CoverSearch {
  const KPartiteHypergraph& h;
  int k;
  std::vector<int> budget_left;
  std::vector<std::vector<std::uint8_t>> chosen;
  std::vector<int> chosen_count;
  std::vector<int> hit_count;  // per edge: chosen vertices it contains
  int unhit;
  std::uint64_t nodes = 0, limit;
  bool clean = true;
  std::optional<std::vector<VertexRef>> found;
  std::vector<std::size_t> offset;
  std::vector<std::uint8_t> mark;

  CoverSearch(const KPartiteHypergraph& hg, std::span<const int> profile, std::uint64_t lim)
      : h(hg), k(hg.uniformity()), limit(lim) {
    budget_left.assign(profile.begin(), profile.end());
    chosen.resize(k);
    for (int c = 0; c < k; ++c) chosen[c].assign(h.class_size(c), 0);
    chosen_count.assign(k, 0);
    hit_count.assign(h.edge_count(), 0);
    unhit = static_cast<int>(h.edge_count());
    offset.assign(k + 1, 0);
    for (int c = 0; c < k; ++c) offset[c + 1] = offset[c] + h.class_size(c);
    mark.assign(offset.back(), 0);
  }

  void choose(VertexRef v) {
    chosen[v.cls][v.idx] = 1;
    ++chosen_count[v.cls];
    --budget_left[v.cls];
    for (EdgeId e : h.incident(v))
      if (hit_count[e]++ == 0) --unhit;
  }

  void unchoose(VertexRef v) {
    chosen[v.cls][v.idx] = 0;
    --chosen_count[v.cls];
    ++budget_left[v.cls];
    for (EdgeId e : h.incident(v))
      if (--hit_count[e] == 0) ++unhit;
  }

  int greedy_disjoint_unhit(int stop_above) {
    // Pairwise disjoint unhit edges each need their own cover vertex.
    int count = 0;
    std::vector<int> used;
    const EdgeId ne = static_cast<EdgeId>(h.edge_count());
    for (EdgeId e = 0; e < ne && count <= stop_above; ++e) {
      if (hit_count[e] > 0) continue;
      auto t = h.edge(e);
      bool ok = true;
      for (int c = 0; c < k; ++c)
        if (mark[offset[c] + t[c]]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (int c = 0; c < k; ++c) {
        mark[offset[c] + t[c]] = 1;
        used.push_back(static_cast<int>(offset[c]) + t[c]);
      }
      ++count;
    }
    for (int fv : used) mark[fv] = 0;
    return count;
  }

  bool rec() {
    if (!clean) return false;
    if (nodes >= limit) {
      clean = false;
      return false;
    }
    if (unhit == 0) {
      std::vector<VertexRef> w;
      for (int c = 0; c < k; ++c) {
        for (int i = 0; i < h.class_size(c); ++i)
          if (chosen[c][i]) w.push_back({c, i});
        // Pad with unused vertices to reach the exact profile.
        int need = budget_left[c];
        for (int i = 0; i < h.class_size(c) && need > 0; ++i)
          if (!chosen[c][i]) {
            w.push_back({c, i});
            --need;
          }
      }
      found = std::move(w);
      return true;
    }
    int total_budget = std::accumulate(budget_left.begin(), budget_left.end(), 0);
    if (total_budget == 0) return false;
    if (greedy_disjoint_unhit(total_budget) > total_budget) return false;

    // Branch over the vertices of the first unhit edge. Each edge has one
    // vertex per class, so every unhit edge offers the same class choices.
    const EdgeId ne = static_cast<EdgeId>(h.edge_count());
    EdgeId branch_edge = -1;
    for (EdgeId e = 0; e < ne; ++e)
      if (hit_count[e] == 0) {
        branch_edge = e;
        break;
      }
    if (branch_edge < 0) return false;
    auto t = h.edge(branch_edge);
    for (int c = 0; c < k; ++c) {
      if (budget_left[c] == 0) continue;
      VertexRef v{c, t[c]};
      ++nodes;
      choose(v);
      if (rec()) return true;
      unchoose(v);
      if (!clean) return false;
    }
    return false;
  }
};

}  // namespace

CoverSearchResult balanced_cover_check(const KPartiteHypergraph& h, std::span<const int> profile,
                                       const SearchBudget& budget) {
  if (profile.size() != static_cast<std::size_t>(h.uniformity()))
    throw std::invalid_argument("profile needs one entry per class");
  for (int c = 0; c < h.uniformity(); ++c)
    if (profile[c] < 0 || profile[c] > h.class_size(c))
      throw std::invalid_argument("profile entry out of range");
  CoverSearch s(h, profile, budget.node_limit);
  bool ok = s.rec();
  CoverSearchResult out;
  out.nodes = s.nodes;
  if (ok) {
    out.status = CoverSearchResult::Status::found;
    out.witness = CoverWitness{std::move(*s.found)};
  } else if (s.clean) {
    out.status = CoverSearchResult::Status::none;
  } else {
    out.status = CoverSearchResult::Status::exhausted;
  }
  return out;
}

bool cover_witness_valid(const KPartiteHypergraph& h, const CoverWitness& w,
                         std::span<const int> profile) {
  std::vector<std::vector<std::uint8_t>> in(h.uniformity());
  for (int c = 0; c < h.uniformity(); ++c) in[c].assign(h.class_size(c), 0);
  std::vector<int> count(h.uniformity(), 0);
  for (const auto& v : w.vertices) {
    if (v.cls < 0 || v.cls >= h.uniformity() || v.idx < 0 || v.idx >= h.class_size(v.cls))
      return false;
    if (in[v.cls][v.idx]) return false;
    in[v.cls][v.idx] = 1;
    ++count[v.cls];
  }
  for (int c = 0; c < h.uniformity(); ++c)
    if (count[c] != profile[c]) return false;
  const EdgeId ne = static_cast<EdgeId>(h.edge_count());
  for (EdgeId e = 0; e < ne; ++e) {
    auto t = h.edge(e);
    bool hit = false;
    for (int c = 0; c < h.uniformity(); ++c)
      if (in[c][t[c]]) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

// --- exhaustive threshold sweep at toy sizes ------------------------------------

namespace {

// Triples over classes of size 2 are indexed by bits (a<<2)|(b<<1)|c.
int mask_delta1_n2(unsigned mask) {
  int best = 4;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 2; ++i) {
      int deg = 0;
      for (unsigned t = 0; t < 8; ++t) {
        int coord = c == 0 ? (t >> 2) & 1 : c == 1 ? (t >> 1) & 1 : t & 1;
        if (coord == i && (mask >> t) & 1) ++deg;
      }
      best = std::min(best, deg);
    }
  return best;
}

bool mask_has_pm_n2(unsigned mask) {
  for (unsigned t = 0; t < 8; ++t)
    if (((mask >> t) & 1) && ((mask >> (7 - t)) & 1)) return true;
  return false;
}

std::vector<std::array<int, 8>> symmetry_maps_n2() {
  // Class permutations combined with per-class vertex swaps.
  std::vector<std::array<int, 8>> maps;
  std::array<int, 3> perm{0, 1, 2};
  std::sort(perm.begin(), perm.end());
  do {
    for (int flips = 0; flips < 8; ++flips) {
      std::array<int, 8> map{};
      for (unsigned t = 0; t < 8; ++t) {
        int coord[3] = {static_cast<int>((t >> 2) & 1), static_cast<int>((t >> 1) & 1),
                        static_cast<int>(t & 1)};
        int img[3];
        for (int c = 0; c < 3; ++c) {
          int v = coord[c] ^ ((flips >> c) & 1);
          img[perm[c]] = v;
        }
        map[t] = (img[0] << 2) | (img[1] << 1) | img[2];
      }
      maps.push_back(map);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return maps;
}

unsigned remap_mask(unsigned mask, const std::array<int, 8>& map) {
  unsigned out = 0;
  for (unsigned t = 0; t < 8; ++t)
    if ((mask >> t) & 1) out |= 1u << map[t];
  return out;
}

}  // namespace

BruteForceThresholdReport brute_force_threshold(int k, int n, bool use_symmetry) {
  if (k != 3) throw std::invalid_argument("sweep implemented for k = 3 only");
  BruteForceThresholdReport rep;
  if (n == 1) {
    // Two hypergraphs: with and without the single possible edge.
    rep.graphs_examined = 2;
    rep.max_delta_no_pm = 0;  // the empty graph
    rep.value = 1;
    return rep;
  }
  if (n != 2)
    throw std::invalid_argument("sweep supports n <= 2 (2^(n^3) graphs otherwise)");
  auto maps = use_symmetry ? symmetry_maps_n2() : std::vector<std::array<int, 8>>{};
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (use_symmetry) {
      bool canonical = true;
      for (const auto& map : maps)
        if (remap_mask(mask, map) < mask) {
          canonical = false;
          break;
        }
      if (!canonical) continue;
    }
    ++rep.graphs_examined;
    if (!mask_has_pm_n2(mask))
      rep.max_delta_no_pm = std::max(rep.max_delta_no_pm, mask_delta1_n2(mask));
  }
  rep.value = rep.max_delta_no_pm + 1;
  return rep;
}

// --- degree bound after removals -------------------------------------------------

namespace {

long long ipow_ll(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int matching_number(const KPartiteHypergraph& h) {
  auto r = max_matching_exact(h);
  if (!r.optimal) throw std::runtime_error("matching oracle budget exhausted");
  return r.matching.size();
}

int matching_number_avoiding(const KPartiteHypergraph& h, std::span<const VertexRef> removed) {
  std::vector<EdgeId> keep;
  const EdgeId ne = static_cast<EdgeId>(h.edge_count());
  for (EdgeId e = 0; e < ne; ++e) {
    auto t = h.edge(e);
    bool touches = false;
    for (const auto& v : removed)
      if (t[v.cls] == v.idx) {
        touches = true;
        break;
      }
    if (!touches) keep.push_back(e);
  }
  auto r = max_matching_on_edges(h, keep, -1, 50'000'000);
  if (!r.exact) throw std::runtime_error("matching oracle budget exhausted");
  return static_cast<int>(r.edges.size());
}

}  // namespace

bool check_degree_bound_after_removal(const KPartiteHypergraph& h, VertexRef v, int m) {
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  if (!h.classes_equal()) throw std::invalid_argument("classes must have equal size");
  const int k = h.uniformity();
  const long long n = h.class_size(0);
  if (v.cls < 0 || v.cls >= k || v.idx < 0 || v.idx >= n)
    throw std::invalid_argument("vertex out of range");
  if (m > n) return true;  // no matching of that size can exist
  if (matching_number(h) != m) return true;
  std::array<VertexRef, 1> rem{v};
  if (matching_number_avoiding(h, rem) < m) return true;
  const long long bound = ipow_ll(n, k - 1) - ipow_ll(n - m, k - 1);
  return h.vertex_degree(v) <= bound;
}

bool check_degree_bound_after_removal(const KPartiteHypergraph& h, const LegalSet& t, int m) {
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  if (!h.classes_equal()) throw std::invalid_argument("classes must have equal size");
  const int k = h.uniformity();
  if (t.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("legal set must have one vertex per class");
  const long long n = h.class_size(0);
  if (m > n) return true;
  if (matching_number(h) != m) return true;
  if (matching_number_avoiding(h, t.vertices()) < m - k + 1) return true;
  const long long bound = ipow_ll(n, k - 1) - ipow_ll(n - m, k - 1);
  for (const auto& v : t.vertices())
    if (h.vertex_degree(v) <= bound) return true;
  return false;
}

}  // namespace kpm
