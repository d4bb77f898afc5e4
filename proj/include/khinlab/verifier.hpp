#ifndef KHINLAB_VERIFIER_HPP
#define KHINLAB_VERIFIER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "khinlab/rademacher.hpp"
#include "khinlab/weighted.hpp"

namespace khinlab {

struct CheckResult {
  bool pass = false;
  double observed = 0.0;
  double bound = 0.0;
  std::string detail;
};

// E xi^4 <= 3 (E xi^2)^2, both sides by exact enumeration; n <= 16.
CheckResult check_fourth_moment(const CoefficientVector& x);

// Contrapositive tail check: when sum x^2 > 1, the exact P(|xi| > a) must
// reach the mode's threshold at a; vacuous pass when sum x^2 <= 1.
CheckResult check_l0_proposition(const CoefficientVector& x, double a, ThresholdMode mode);

// Exact P(xi = 0) against the zero-mass bound 1 - 2 e^(gamma - 2); x must not
// be identically zero.
CheckResult check_zero_mass_bound(const CoefficientVector& x);

// Paley-Zygmund on a finite nonnegative distribution given as (value, prob)
// atoms: P(xi > lambda ||xi||_2) >= bound - 1e-12.
CheckResult check_paley_zygmund(const std::vector<std::pair<double, double>>& dist, double lambda,
                                double q);

struct SandwichResult {
  bool pass = false;
  double lower = 0.0;  // L ||x||_2
  double middle = 0.0; // ||w xi||_p
  double upper = 0.0;  // C2 ||x||_2
  ConstantsReport constants;
};

// Two-sided bound with additive slack 1e-10 ||x||_2; all-zero x passes
// trivially. Requires n + weight depth <= n_max.
SandwichResult check_sandwich(const WeightSpec& w, const CoefficientVector& x, double p, double q,
                              ThresholdMode mode, int n_max = kDefaultNMax);

// The sharpness construction: w = 1_{r1 + r2 != 0} with s = 1/2.
// The printed pair (w, xi = r1 + r2) gives w xi = xi and satisfies the
// two-sided bound; the intended pair xi = r1 - r2 kills every moment while
// ||x||_2 = sqrt(2), so no lower constant can exist. Both are reported, and
// both extraction modes must reject the weight.
struct CounterexampleReport {
  double s = 0.0;
  double coeff_norm2 = 0.0;        // sqrt(2)
  double literal_norm_p1 = 0.0;    // ||w xi||_1 for xi = r1 + r2 (= 1)
  double corrected_norm_p1 = 0.0;  // ||w xi||_1 for xi = r1 - r2 (= 0)
  double corrected_norm_p2 = 0.0;  // ||w xi||_2 for xi = r1 - r2 (= 0)
  Distribution corrected_dist;     // exactly {(0, 1)}
  bool exact = false;              // integer-grid enumeration throughout
  double classic_threshold = 0.0;  // 2/3
  double refined_threshold = 0.0;  // 1 - beta(0)
  bool classic_rejected = false;
  bool refined_rejected = false;
};

CounterexampleReport counterexample_demo();

// Seeded case stream; identical seed, identical cases. Case i derives its own
// seed with derive_seed(seed, i), which the failure records echo.
struct CaseGenerator {
  std::uint64_t seed = 0;
  int n_min = 1;
  int n_max = 16;
};

struct SuiteFailure {
  std::uint64_t case_index = 0;
  std::uint64_t case_seed = 0;
  std::string inputs;
  double expected_bound = 0.0;
  double observed = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t case_count = 0;
  std::uint64_t pass_count = 0;
  std::vector<SuiteFailure> failures;
  double wall_time_seconds = 0.0;
};

inline constexpr const char* kSuiteNames[] = {
    "fourth-moment", "l0", "zero-mass", "paley-zygmund", "sandwich", "khintchine-upper",
};

// Runs `cases` seeded cases of the named suite. Throws Error(unknown_suite)
// for anything outside kSuiteNames.
SuiteReport run_suite(const CaseGenerator& gen, std::string_view suite, std::uint64_t cases);

} // namespace khinlab

#endif
