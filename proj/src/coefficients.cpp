#include "khinlab/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "khinlab/errors.hpp"
#include "khinlab/kahan.hpp"

namespace khinlab {

void CoefficientVector::finalize() {
  if (decimals_.empty()) fail(ErrorKind::bad_argument, "coefficient vector must be nonempty");
  values_.reserve(decimals_.size());
  NeumaierSum sq;
  for (const auto& d : decimals_) {
    if (!std::isfinite(d.value)) fail(ErrorKind::bad_argument, "coefficients must be finite");
    values_.push_back(d.value);
    sq.add(d.value * d.value);
    max_abs_ = std::max(max_abs_, std::fabs(d.value));
  }
  sum_squares_ = sq.value();
  exact_ = common_scale(decimals_, scaled_, exp10_);
}

CoefficientVector CoefficientVector::from_strings(std::span<const std::string> texts) {
  CoefficientVector v;
  v.decimals_.reserve(texts.size());
  for (const auto& t : texts) v.decimals_.push_back(parse_decimal(t));
  v.finalize();
  return v;
}

CoefficientVector CoefficientVector::from_decimals(std::vector<Decimal> decimals) {
  CoefficientVector v;
  v.decimals_ = std::move(decimals);
  v.finalize();
  return v;
}

CoefficientVector CoefficientVector::from_doubles(std::span<const double> values) {
  CoefficientVector v;
  v.decimals_.reserve(values.size());
  for (double x : values) v.decimals_.push_back(decimal_from_double(x));
  v.finalize();
  return v;
}

double CoefficientVector::norm2() const {
  // Scaled so that tiny coefficients do not underflow to a zero norm.
  if (max_abs_ == 0.0) return 0.0;
  NeumaierSum sq;
  for (double v : values_) {
    const double r = v / max_abs_;
    sq.add(r * r);
  }
  return max_abs_ * std::sqrt(sq.value());
}

bool CoefficientVector::all_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

int CoefficientVector::compare_sum_squares_to_one() const {
  if (exact_) {
    int128 total = 0;
    bool ok = true;
    for (int128 s : scaled_) {
      auto sq = checked_mul(s, s);
      if (!sq || __builtin_add_overflow(total, *sq, &total)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (auto one = checked_pow10(1, 2 * exp10_)) {
        if (total < *one) return -1;
        if (total > *one) return 1;
        return 0;
      }
    }
  }
  if (std::fabs(sum_squares_ - 1.0) <= 1e-12) return 0;
  return sum_squares_ < 1.0 ? -1 : 1;
}

} // namespace khinlab
