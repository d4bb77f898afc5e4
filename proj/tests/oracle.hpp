// Independent brute-force oracles for the enumeration engine: every pattern
// sum is recomputed from scratch (no Gray code, no compensation) in long
// double, and weights are applied through their own index arithmetic.
#ifndef KHINLAB_TESTS_ORACLE_HPP
#define KHINLAB_TESTS_ORACLE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "khinlab/weight.hpp"

namespace oracle {

inline std::uint32_t weight_index(std::uint64_t mask, int k) {
  std::uint32_t idx = 0;
  for (int i = 0; i < k; ++i)
    if ((mask >> i) & 1u) idx |= std::uint32_t{1} << (k - 1 - i);
  return idx;
}

// E |w xi|^p by plain long-double summation over all patterns and atoms.
inline long double abs_moment(const std::vector<double>& x, double p,
                              const khinlab::WeightSpec* w = nullptr) {
  const int n = static_cast<int>(x.size());
  long double total = 0.0L;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long double s = 0.0L;
    for (int i = 0; i < n; ++i) s += ((mask >> i) & 1u) ? -x[i] : x[i];
    if (!w) {
      total += std::pow(std::fabs(static_cast<double>(s)), static_cast<long double>(p));
      continue;
    }
    const double base = w->table()[weight_index(mask, w->depth())].value;
    for (const auto& atom : w->atoms()) {
      const long double v = std::fabs(base * atom.value.value * static_cast<double>(s));
      total += static_cast<long double>(atom.prob.value) * std::pow(v, static_cast<long double>(p));
    }
  }
  return total / std::pow(2.0L, n);
}

// P(|w xi| > t) (strict) or >= t, plain comparisons.
inline long double tail(const std::vector<double>& x, double t, bool strict,
                        const khinlab::WeightSpec* w = nullptr) {
  const int n = static_cast<int>(x.size());
  long double total = 0.0L;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long double s = 0.0L;
    for (int i = 0; i < n; ++i) s += ((mask >> i) & 1u) ? -x[i] : x[i];
    if (!w) {
      const long double v = std::fabs(static_cast<double>(s));
      if (strict ? v > t : v >= t) total += 1.0L;
      continue;
    }
    const double base = w->table()[weight_index(mask, w->depth())].value;
    for (const auto& atom : w->atoms()) {
      const long double v = std::fabs(base * atom.value.value * static_cast<double>(s));
      if (strict ? v > t : v >= t) total += static_cast<long double>(atom.prob.value);
    }
  }
  return total / std::pow(2.0L, n);
}

// Distribution of xi (unweighted), exact key merging on the long double sum.
inline std::map<long double, long double> distribution(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::map<long double, long double> dist;
  const long double prob = std::pow(2.0L, -n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long double s = 0.0L;
    for (int i = 0; i < n; ++i) s += ((mask >> i) & 1u) ? -x[i] : x[i];
    dist[s] += prob;
  }
  return dist;
}

} // namespace oracle

#endif
