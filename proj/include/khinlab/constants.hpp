#ifndef KHINLAB_CONSTANTS_HPP
#define KHINLAB_CONSTANTS_HPP

namespace khinlab {

inline constexpr double kEulerGamma = 0.5772156649015328606;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Gamma function on (0, 171], Lanczos approximation (g = 607/128, 15 terms).
// Relative error below 1e-13 across [0.5, 50].
double gamma_fn(double x);

// Best constant in ||xi||_q <= B_q ||xi||_2 for Rademacher sums, q >= 2:
// B_q = sqrt(2) * (Gamma((q+1)/2) / sqrt(pi))^(1/q); B_2 = 1.
double haagerup_Bq(double q);

// Upper constant k_{r,2}: 1 for r <= 2 (norm monotonicity), B_r above.
double khintchine_upper_constant(double r);

struct PZBound {
  double lambda; // in [0, 1]
  double q;      // > 2
  double bound;  // in [0, 1]
};

// Paley-Zygmund lower bound on P(xi > lambda ||xi||_2):
// [(1 - lambda^2) ||xi||_2^2 / ||xi||_q^2]^(q/(q-2)), clamped to [0, 1].
// Requires normq >= norm2 (Lyapunov) up to a 1e-12 relative tolerance.
PZBound pz_lower_bound(double lambda, double norm2, double normq, double q);

// Tail threshold (1 - a^2)^2 / 3 from the fourth-moment route, a in (0, 1).
double l0_tail_threshold_classic(double a);

// Refined threshold beta(a) = sup_{q > 2} [(1 - a^2) B_q^{-2}]^(q/(q-2)),
// a in [0, 1). Golden-section search on u = log(q - 2) over [-12, 4],
// refined until the bracket is below 1e-8 in q. beta is nonincreasing and
// beta(0) approaches 2 e^(gamma - 2).
double l0_tail_threshold_refined(double a);

// Diagnostic cross-check of the search: plain maximum over an `points`-sized
// log-spaced grid on the same interval.
double l0_tail_threshold_refined_grid(double a, int points);

struct ZeroMassThreshold {
  double exact;               // 1 - 2 e^(gamma - 2) ~ 0.517916
  double limit;               // 2 e^(gamma - 2)     ~ 0.482084
  double numeric_limit_check; // B_q^(-2q/(q-2)) at q = 2 + 1e-4, via gamma_fn
};

ZeroMassThreshold zero_mass_threshold();

} // namespace khinlab

#endif
