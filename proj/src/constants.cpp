#include "khinlab/constants.hpp"

#include <algorithm>
#include <cmath>

#include "khinlab/errors.hpp"

namespace khinlab {

namespace {

// Lanczos coefficients for g = 607/128, N = 15 (Godfrey's table; the set used
// by the usual double-precision lgamma implementations).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

double lanczos_series(double z) {
  // z >= 0.5; series argument is z - 1.
  double sum = kLanczos[0];
  for (int i = 1; i < 15; ++i) sum += kLanczos[i] / (z - 1.0 + i);
  return sum;
}

double gamma_positive(double z) {
  // z >= 0.5. Direct product while the power term is representable, log form
  // for large arguments.
  const double t = z - 0.5 + kLanczosG;
  const double series = lanczos_series(z);
  const double sqrt_2pi = 2.5066282746310005024157652848110;
  if (z <= 130.0) return sqrt_2pi * series * std::pow(t, z - 0.5) * std::exp(-t);
  const double log_gamma = 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(series);
  return std::exp(log_gamma);
}

} // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) fail(ErrorKind::bad_argument, "gamma_fn requires a positive argument");
  if (x > 171.0) fail(ErrorKind::bad_argument, "gamma_fn overflows beyond x = 171");
  if (x >= 0.5) return gamma_positive(x);
  // Reflection onto [0.5, 1): Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
  return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
}

double haagerup_Bq(double q) {
  if (!(q >= 2.0)) fail(ErrorKind::bad_argument, "haagerup_Bq requires q >= 2");
  if (q == 2.0) return 1.0; // Gamma(3/2)/sqrt(pi) = 1/2 exactly
  const double sqrt_pi = 1.7724538509055160272981674833411;
  return std::sqrt(2.0) * std::pow(gamma_fn((q + 1.0) / 2.0) / sqrt_pi, 1.0 / q);
}

double khintchine_upper_constant(double r) {
  if (!(r > 0.0)) fail(ErrorKind::bad_argument, "exponent r must be positive");
  if (r <= 2.0) return 1.0;
  return haagerup_Bq(r);
}

PZBound pz_lower_bound(double lambda, double norm2, double normq, double q) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    fail(ErrorKind::bad_argument, "lambda must lie in [0, 1]");
  if (!(q > 2.0)) fail(ErrorKind::bad_argument, "Paley-Zygmund requires q > 2");
  if (!(norm2 > 0.0) || !(normq > 0.0))
    fail(ErrorKind::bad_argument, "norms must be positive");
  if (normq < norm2 * (1.0 - 1e-12))
    fail(ErrorKind::bad_argument, "||xi||_q < ||xi||_2 violates Lyapunov monotonicity");
  const double ratio = (norm2 / normq) * (norm2 / normq);
  const double base = (1.0 - lambda * lambda) * ratio;
  double bound = base <= 0.0 ? 0.0 : std::pow(base, q / (q - 2.0));
  bound = std::clamp(bound, 0.0, 1.0);
  return {lambda, q, bound};
}

double l0_tail_threshold_classic(double a) {
  if (!(a > 0.0 && a < 1.0)) fail(ErrorKind::bad_argument, "a must lie in (0, 1)");
  const double c = 1.0 - a * a;
  return c * c / 3.0;
}

namespace {

double beta_objective(double a, double q) {
  const double bq = haagerup_Bq(q);
  const double base = (1.0 - a * a) / (bq * bq);
  if (base <= 0.0) return 0.0;
  return std::pow(base, q / (q - 2.0));
}

constexpr double kBetaLogLo = -12.0;
constexpr double kBetaLogHi = 4.0;

double beta_search(double a) {
  // Golden-section maximization on u = log(q - 2). The objective is smooth
  // and unimodal on the interval; for a = 0 the maximum sits at the lower
  // boundary, which the shrinking bracket reaches as well.
  const double phi = 0.6180339887498948482;
  double lo = kBetaLogLo, hi = kBetaLogHi;
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = beta_objective(a, 2.0 + std::exp(c));
  double fd = beta_objective(a, 2.0 + std::exp(d));
  double best = std::max(fc, fd);
  for (int iter = 0; iter < 200; ++iter) {
    if (std::exp(hi) - std::exp(lo) <= 1e-8) break;
    if (fc < fd) {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = beta_objective(a, 2.0 + std::exp(d));
    } else {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = beta_objective(a, 2.0 + std::exp(c));
    }
    best = std::max(best, std::max(fc, fd));
  }
  best = std::max(best, beta_objective(a, 2.0 + std::exp(lo)));
  best = std::max(best, beta_objective(a, 2.0 + std::exp(hi)));
  return best;
}

} // namespace

double l0_tail_threshold_refined(double a) {
  if (!(a >= 0.0 && a < 1.0)) fail(ErrorKind::bad_argument, "a must lie in [0, 1)");
  return beta_search(a);
}

double l0_tail_threshold_refined_grid(double a, int points) {
  if (!(a >= 0.0 && a < 1.0)) fail(ErrorKind::bad_argument, "a must lie in [0, 1)");
  if (points < 2) fail(ErrorKind::bad_argument, "grid needs at least 2 points");
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const double u = kBetaLogLo + (kBetaLogHi - kBetaLogLo) * i / (points - 1);
    best = std::max(best, beta_objective(a, 2.0 + std::exp(u)));
  }
  return best;
}

ZeroMassThreshold zero_mass_threshold() {
  ZeroMassThreshold z;
  z.limit = 2.0 * std::exp(-2.0 + kEulerGamma);
  z.exact = 1.0 - z.limit;
  const double q = 2.0 + 1e-4;
  const double bq = haagerup_Bq(q);
  z.numeric_limit_check = std::pow(bq, -2.0 * q / (q - 2.0));
  return z;
}

} // namespace khinlab
