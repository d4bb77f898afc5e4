#ifndef KHINLAB_COEFFICIENTS_HPP
#define KHINLAB_COEFFICIENTS_HPP

#include <span>
#include <string>
#include <vector>

#include "khinlab/decimal.hpp"

namespace khinlab {

// Finitely supported real coefficient sequence (x_n) of the Rademacher sum
// xi = sum r_n x_n. Coefficients ingested from decimal strings with at most
// 15 significant digits are additionally carried on a shared power-of-ten
// integer grid; the enumerator then decides zero hits and ties exactly.
class CoefficientVector {
public:
  static CoefficientVector from_strings(std::span<const std::string> texts);
  static CoefficientVector from_decimals(std::vector<Decimal> decimals);
  static CoefficientVector from_doubles(std::span<const double> values);

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<Decimal>& decimals() const { return decimals_; }

  bool exact() const { return exact_; }
  const std::vector<int128>& scaled() const { return scaled_; }
  int exp10() const { return exp10_; }

  double sum_squares() const { return sum_squares_; }
  double norm2() const;
  double max_abs() const { return max_abs_; }
  bool all_zero() const;

  // -1 / 0 / +1 for sum x_n^2 vs 1; exact on the integer grid when possible,
  // otherwise by a 1e-12 relative tolerance around 1.
  int compare_sum_squares_to_one() const;

private:
  CoefficientVector() = default;
  void finalize();

  std::vector<double> values_;
  std::vector<Decimal> decimals_;
  std::vector<int128> scaled_;
  int exp10_ = 0;
  bool exact_ = false;
  double sum_squares_ = 0.0;
  double max_abs_ = 0.0;
};

} // namespace khinlab

#endif
