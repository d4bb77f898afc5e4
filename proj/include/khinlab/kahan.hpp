#ifndef KHINLAB_KAHAN_HPP
#define KHINLAB_KAHAN_HPP

#include <cmath>

namespace khinlab {

// Kahan-Neumaier compensated accumulator. Running error stays O(eps) in the
// number of terms instead of O(n * eps), which matters for 2^n-term moment
// sums and for the incrementally updated pattern sums in the enumerator.
class NeumaierSum {
public:
  NeumaierSum() = default;
  explicit NeumaierSum(double x) : sum_(x) {}

  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  // Merge another partial sum; merge order must be fixed by the caller when
  // bit-identical results are required.
  void merge(const NeumaierSum& other) {
    add(other.comp_);
    add(other.sum_);
  }

  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

} // namespace khinlab

#endif
