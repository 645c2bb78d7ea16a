#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kpm/hypergraph.hpp"

namespace kpm {

/// A balanced set with k-1 vertices per class absorbs a transversal T when the
/// set spans a perfect matching both on its own and together with T.
bool is_absorbing(const KPartiteHypergraph& h, const BalancedSet& a, const BalancedSet& t);

/// Number of absorbing sets for T. A positive cap stops counting early once
/// reached, which keeps the probe cheap when only "at least cap" matters.
long long count_absorbing(const KPartiteHypergraph& h, const BalancedSet& t, long long cap = 0);

struct AbsorptionConfig {
  double gamma = 0.1;       // density parameter steering family size
  std::uint64_t seed = 0;
  int retry_limit = 5;      // extra sampling rounds when coverage comes out 0
  bool strict = false;      // textbook member budget; usually 0 at small n
  double oversample = 4.0;  // inflate the selection probability (ignored when strict)
  std::size_t max_members = 0;        // 0: floor(gamma^k * n), at least 1 unless strict
  std::size_t coverage_sample_cap = 0;  // 0: check every candidate transversal

  double member_budget(int k, int n) const;   // target family size before flooring
  double sampling_delta(int k, int n) const;  // pairwise-intersection normalizer
  double sampling_p(int k, int n) const;      // per-set selection probability
};

class AbsorbingFamily {
 public:
  AbsorbingFamily() = default;
  AbsorbingFamily(std::vector<BalancedSet> members, std::vector<std::vector<EdgeId>> local_pms);

  std::size_t size() const { return members_.size(); }
  const std::vector<BalancedSet>& members() const { return members_; }
  /// Per-member perfect matching of the k-1 vertices per class.
  const std::vector<std::vector<EdgeId>>& member_matchings() const { return local_pms_; }
  /// Union of the member matchings.
  Matching base_matching(const KPartiteHypergraph& h) const;
  std::vector<VertexRef> vertices() const;
  bool contains_vertex(VertexRef v) const;

 private:
  std::vector<BalancedSet> members_;               // sorted
  std::vector<std::vector<EdgeId>> local_pms_;     // parallel to members_
};

struct FamilyResult {
  AbsorbingFamily family;
  long long coverage_g = 0;  // min absorbing members over outside transversals, -1 if none apply
  int retries = 0;
  std::uint64_t scanned = 0;  // candidate sets drawn from the selection process
};

/// Draw a family of pairwise disjoint absorbing candidates: independent
/// selection of balanced sets, keep the ones spanning a perfect matching,
/// drop every set touching another, cap the count. Rounds repeat with derived
/// seeds while the coverage guarantee is zero.
FamilyResult sample_absorbing_family(const KPartiteHypergraph& h, const AbsorptionConfig& cfg);

struct AbsorbResult {
  bool ok = false;
  Matching matching;     // covers family vertices plus the absorbed leftover
  std::string failure;   // names the transversal that found no member
};

/// Spend family members on the leftover vertices: the leftover is split into
/// transversals (one vertex per class, in index order) and each transversal is
/// handed to the least unused member that absorbs it.
AbsorbResult absorb(const KPartiteHypergraph& h, const AbsorbingFamily& fam,
                    std::span<const VertexRef> leftover);

}  // namespace kpm
