#ifndef TWFOCK_TESTS_SUPPORT_HPP
#define TWFOCK_TESTS_SUPPORT_HPP

// Hand-rolled generators for the property tests.  Every generator draws from
// a seeded std::mt19937 so failures reproduce.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "twfock/partitions.hpp"
#include "twfock/series.hpp"

namespace twfock {

inline void PrintTo(const Series& s, std::ostream* os) { *os << to_json(s); }

}  // namespace twfock

namespace twfock::testing {

inline constexpr int kTrials = 40;

inline int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational small_rational(std::mt19937& rng) {
  int num = 0;
  while (num == 0) num = uniform(rng, -6, 6);
  Rational r(num, uniform(rng, 1, 5));
  r.canonicalize();
  return r;
}

// Random series supported in the cone |t_i| <= qb-degree, where truncated
// products are exact on the profile.
inline Series random_cone_series(std::mt19937& rng, const TruncationProfile& p, int terms,
                                 bool with_constant = false) {
  Series s(p);
  for (int i = 0; i < terms; ++i) {
    ExponentKey k;
    k.q = uniform(rng, 0, p.q_max);
    for (std::size_t v = 0; v < p.t_vars.size(); ++v) {
      const int r = std::min(k.q, p.t_vars[v].band);
      k.t[v] = uniform(rng, -r, r);
    }
    k.z = uniform(rng, 0, p.z_max);
    s.add_term(k, small_rational(rng));
  }
  if (with_constant) {
    while (s.coeff(ExponentKey{}) == 0) s.add_term(ExponentKey{}, small_rational(rng));
  }
  return s;
}

// A random subset of allowed parts with total weight at most max_weight.
inline std::vector<int> random_parts(std::mt19937& rng, PartitionKind kind, int max_weight) {
  std::vector<int> parts;
  int weight = 0;
  for (int p = 1; p <= max_weight; ++p) {
    if (!part_allowed(kind, p) || weight + p > max_weight) continue;
    if (uniform(rng, 0, 2) == 0) {
      parts.push_back(p);
      weight += p;
    }
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

// Number of subsets of allowed parts summing to each n <= max_weight, by
// brute force over bitmasks of the allowed parts.
inline std::vector<std::uint64_t> brute_force_counts(PartitionKind kind, int max_weight) {
  std::vector<int> allowed;
  for (int p = 1; p <= max_weight; ++p)
    if (part_allowed(kind, p)) allowed.push_back(p);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_weight) + 1, 0);
  const std::uint64_t subsets = std::uint64_t{1} << allowed.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    int w = 0;
    for (std::size_t i = 0; i < allowed.size() && w <= max_weight; ++i)
      if (mask >> i & 1) w += allowed[i];
    if (w <= max_weight) ++counts[static_cast<std::size_t>(w)];
  }
  return counts;
}

}  // namespace twfock::testing

#endif  // TWFOCK_TESTS_SUPPORT_HPP
