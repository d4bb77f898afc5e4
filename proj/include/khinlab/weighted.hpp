#ifndef KHINLAB_WEIGHTED_HPP
#define KHINLAB_WEIGHTED_HPP

#include <string>
#include <utility>

#include "khinlab/weight.hpp"

namespace khinlab {

enum class ThresholdMode { classic, refined };

std::string to_string(ThresholdMode mode);
ThresholdMode threshold_mode_from_string(const std::string& name);

// Smallest admissible P(w != 0) for the mode: 2/3 for classic, 1 - beta(0)
// for refined.
double mode_s_threshold(ThresholdMode mode);

// Full trace of the constructive constants behind the two-sided bound
// L ||x||_2 <= ||w xi||_p <= C2 ||x||_2:
//
//   b      tail budget, midpoint of (1 - s) and the mode's largest budget
//   a      tail level solving the mode's threshold equation at b
//   tau    (s + 1 - b) / 2, the mass of the event {w >= delta0}
//   delta0 weight quantile at tau
//   t      delta0^-1 (b - 1 + tau)^(-1/p)
//   L      a / t, the multiplicative lower factor
//   C1     t / a, so that the lower bound reads C1^-1 ||x||_2 <= ||w xi||_p
//   C2     ||w||_q * k_{r,2} with 1/r = 1/p - 1/q
struct ConstantsReport {
  ThresholdMode mode = ThresholdMode::classic;
  double p = 0.0, q = 0.0, r = 0.0;
  double s = 0.0, b = 0.0, a = 0.0, tau = 0.0;
  double delta0 = 0.0, t = 0.0;
  double L = 0.0, C1 = 0.0;
  double k_r2 = 0.0, w_q = 0.0, C2 = 0.0;
};

// Requires 0 < p < q and s above the mode threshold (Error(s_below_threshold)
// otherwise, with the threshold in the message).
ConstantsReport extract_constants(const WeightSpec& w, double p, double q, ThresholdMode mode);

// (lo, hi) with lo <= ||w xi||_{p1} / ||w xi||_{p2} <= hi for every nonzero
// coefficient vector: lo = L(p1)/C2(p2), hi = C2(p1)/L(p2).
std::pair<double, double> comparability_factors(const WeightSpec& w, double p1, double p2,
                                                double q, ThresholdMode mode);

} // namespace khinlab

#endif
