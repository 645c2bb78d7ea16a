#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

// Deterministic random primitives. Standard distributions are not pinned down
// across library implementations, so everything here draws raw engine words.
namespace kpm::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Independent stream for a substep of a seeded computation.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream * 0xA0761D6478BD642Full + 0x9E3779B97F4A7C15ull));
}

inline std::mt19937_64 engine(std::uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }

/// Unbiased draw from [0, n) by rejection.
inline std::uint64_t below(std::mt19937_64& g, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

/// 53-bit uniform double in [0, 1).
inline double unit(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& g, double p) { return unit(g) < p; }

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& g) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(g, i)]);
}

/// Gap to the next success of a Bernoulli(p) process (0 = very next trial).
/// Returns -1 when the gap overflows any practical index range.
inline long long geometric_gap(std::mt19937_64& g, double p) {
  if (p >= 1.0) return 0;
  if (p <= 0.0) return -1;
  const double u = unit(g);
  const double gap = std::floor(std::log1p(-u) / std::log1p(-p));
  if (!(gap >= 0) || gap > 4.0e18) return -1;
  return static_cast<long long>(gap);
}

}  // namespace kpm::rng
