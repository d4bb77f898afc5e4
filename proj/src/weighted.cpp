#include "khinlab/weighted.hpp"

#include <cmath>

#include "khinlab/constants.hpp"
#include "khinlab/errors.hpp"

namespace khinlab {

std::string to_string(ThresholdMode mode) {
  return mode == ThresholdMode::classic ? "classic" : "refined";
}

ThresholdMode threshold_mode_from_string(const std::string& name) {
  if (name == "classic") return ThresholdMode::classic;
  if (name == "refined") return ThresholdMode::refined;
  fail(ErrorKind::bad_argument, "unknown mode '" + name + "' (classic|refined)");
}

namespace {

double refined_beta0() {
  static const double value = l0_tail_threshold_refined(0.0);
  return value;
}

// Solve beta(a) = b on [0, 1) by bisection; beta is nonincreasing with
// beta(0) >= b > 0 guaranteed by the caller. Returns the bracket end with
// beta(a) >= b so the threshold argument stays valid.
double solve_refined_level(double b) {
  double lo = 0.0, hi = 1.0 - 1e-12;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (l0_tail_threshold_refined(mid) >= b)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

} // namespace

double mode_s_threshold(ThresholdMode mode) {
  return mode == ThresholdMode::classic ? 2.0 / 3.0 : 1.0 - refined_beta0();
}

ConstantsReport extract_constants(const WeightSpec& w, double p, double q, ThresholdMode mode) {
  if (!(p > 0.0)) fail(ErrorKind::bad_argument, "p must be positive");
  if (!(q > p)) fail(ErrorKind::bad_argument, "q must exceed p");

  WeightStats stats = weight_stats(w, q);
  const double threshold = mode_s_threshold(mode);
  if (!(stats.s > threshold))
    fail(ErrorKind::s_below_threshold,
         "P(w != 0) = " + std::to_string(stats.s) + " is not above the " + to_string(mode) +
             " threshold " + std::to_string(threshold));

  ConstantsReport rep;
  rep.mode = mode;
  rep.p = p;
  rep.q = q;
  rep.s = stats.s;
  rep.w_q = stats.norm_q;

  const double b_max = mode == ThresholdMode::classic ? 1.0 / 3.0 : refined_beta0();
  rep.b = 0.5 * ((1.0 - rep.s) + b_max);
  rep.a = mode == ThresholdMode::classic ? std::sqrt(1.0 - std::sqrt(3.0 * rep.b))
                                         : solve_refined_level(rep.b);
  rep.tau = 0.5 * (rep.s + 1.0 - rep.b);
  rep.delta0 = delta0(w, rep.tau);
  rep.t = std::pow(rep.b - 1.0 + rep.tau, -1.0 / p) / rep.delta0;
  rep.L = rep.a / rep.t;
  rep.C1 = rep.t / rep.a;

  rep.r = p * q / (q - p);
  rep.k_r2 = khintchine_upper_constant(rep.r);
  rep.C2 = rep.w_q * rep.k_r2;
  return rep;
}

std::pair<double, double> comparability_factors(const WeightSpec& w, double p1, double p2,
                                                double q, ThresholdMode mode) {
  ConstantsReport r1 = extract_constants(w, p1, q, mode);
  ConstantsReport r2 = extract_constants(w, p2, q, mode);
  return {r1.L / r2.C2, r1.C2 / r2.L};
}

} // namespace khinlab
