#ifndef KHINLAB_RADEMACHER_HPP
#define KHINLAB_RADEMACHER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "khinlab/coefficients.hpp"
#include "khinlab/weight.hpp"

namespace khinlab {

// Cap on the enumeration dimension; 2^26 patterns keeps exact calls at
// seconds scale. Overridable per call and via the CLI (--nmax, KHINLAB_NMAX).
inline constexpr int kDefaultNMax = 26;

enum class MomentMethod { exact, monte_carlo };

struct MomentReport {
  double p = 0.0;
  double absolute_moment = 0.0; // E |w xi|^p
  double norm = 0.0;            // absolute_moment^(1/p)
  double second_norm = 0.0;     // ||xi||_2 of the unweighted sum
  MomentMethod method = MomentMethod::exact;
  double standard_error = 0.0;  // 0 for exact
  std::uint64_t sample_count = 0;
};

struct DistributionEntry {
  double value;
  double prob;
  std::string exact_prob; // reduced "num/den" in exact mode, else empty
};

struct Distribution {
  std::vector<DistributionEntry> entries; // ascending by value
  bool exact = false;
};

struct ProbabilityResult {
  double value = 0.0;
  bool exact = false;          // integer-grid arithmetic end to end
  std::string exact_fraction;  // reduced "num/den" when exact
};

// All operations below enumerate the 2^n sign patterns with a reflected Gray
// code and an incrementally updated pattern sum (compensated in float mode,
// exact on the integer grid). They are pure and safe for concurrent calls on
// shared inputs.
//
// Float-mode value policy: a pattern sum S counts as zero when
// |S| <= 1e-12 * max|x_i|; a weighted value ties with a tail level t when
// |v - t| <= 1e-12 * (1 + max(|v|, t)); distribution values coalesce when
// within 1e-12 * (1 + |v|). Exact mode decides all three on the integer grid.

Distribution exact_distribution(const CoefficientVector& x, const WeightSpec* w = nullptr,
                                int n_max = kDefaultNMax);

// p > 0. absolute_moment accumulates with compensated summation.
MomentReport exact_moment(const CoefficientVector& x, double p, const WeightSpec* w = nullptr,
                          int n_max = kDefaultNMax);

// P(|w xi| > t) when strict, else P(|w xi| >= t); t >= 0.
ProbabilityResult exact_tail(const CoefficientVector& x, const Decimal& t, bool strict,
                             const WeightSpec* w = nullptr, int n_max = kDefaultNMax);
ProbabilityResult exact_tail(const CoefficientVector& x, double t, bool strict,
                             const WeightSpec* w = nullptr, int n_max = kDefaultNMax);

// P(xi = 0), unweighted.
ProbabilityResult prob_zero(const CoefficientVector& x, int n_max = kDefaultNMax);

} // namespace khinlab

#endif
