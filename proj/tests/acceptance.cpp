// Acceptance suite: runs every criterion end to end and prints one PASS/FAIL
// line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "khinlab/constants.hpp"
#include "khinlab/montecarlo.hpp"
#include "khinlab/rademacher.hpp"
#include "khinlab/rng.hpp"
#include "khinlab/verifier.hpp"
#include "khinlab/weighted.hpp"

using namespace khinlab;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::ostream&)> run;
};

CoefficientVector seeded_nonzero_vector(std::uint64_t seed, int max_n) {
  Xoshiro256StarStar rng(seed);
  const int n = 1 + static_cast<int>(rng.next_below(max_n));
  std::vector<double> x(n, 0.0);
  if (seed % 2 == 0) {
    bool nonzero = false;
    for (auto& v : x) {
      v = static_cast<double>(rng.next_below(11)) - 5.0;
      nonzero |= v != 0.0;
    }
    if (!nonzero) x[0] = 1.0;
  } else {
    double ss = 0.0;
    while (ss == 0.0) {
      for (auto& v : x) {
        const double u1 = std::max(rng.next_unit(), 0x1.0p-53);
        const double u2 = rng.next_unit();
        v = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
        ss += v * v;
      }
    }
  }
  return CoefficientVector::from_doubles(x);
}

bool criterion_fourth_moment(std::ostream& os) {
  CaseGenerator gen;
  gen.seed = 1;
  const SuiteReport rep = run_suite(gen, "fourth-moment", 200);
  os << rep.pass_count << "/200 in " << rep.wall_time_seconds << " s";
  return rep.failures.empty() && rep.wall_time_seconds < 5.0;
}

bool criterion_haagerup(std::ostream& os) {
  const bool b2 = haagerup_Bq(2.0) == 1.0;
  const bool b4 = std::fabs(haagerup_Bq(4.0) - std::pow(3.0, 0.25)) <= 1e-12;
  CaseGenerator gen;
  gen.seed = 2;
  const SuiteReport rep = run_suite(gen, "khintchine-upper", 200);
  os << "B2 exact: " << (b2 ? "yes" : "no") << ", |B4 - 3^(1/4)| <= 1e-12: "
     << (b4 ? "yes" : "no") << ", suite " << rep.pass_count << "/200";
  return b2 && b4 && rep.failures.empty();
}

bool criterion_euler_limit(std::ostream& os) {
  const ZeroMassThreshold z = zero_mass_threshold();
  const double limit_ref = 2.0 * std::exp(-2.0 + kEulerGamma);
  const bool near = std::fabs(z.numeric_limit_check - limit_ref) <= 1e-3;
  const bool reported = std::fabs(z.exact - (1.0 - limit_ref)) <= 1e-15;
  const bool three_digits = std::floor(z.exact * 1000.0) == 517.0;
  os << "check at q=2+1e-4: " << z.numeric_limit_check << " vs " << limit_ref
     << ", threshold " << z.exact;
  return near && reported && three_digits;
}

bool criterion_zero_mass(std::ostream& os) {
  int pass = 0;
  const int cases = 500;
  for (int i = 0; i < cases; ++i) {
    const CoefficientVector x = seeded_nonzero_vector(derive_seed(4, i), 16);
    const double p0 = prob_zero(x).value;
    if (p0 <= 0.5178742 + 1e-7) ++pass;
  }
  const ProbabilityResult pair = prob_zero(CoefficientVector::from_doubles(std::vector<double>{1.0, 1.0}));
  const bool half = pair.value == 0.5 && pair.exact;
  os << pass << "/" << cases << " below the bound, P(xi=0) for (1,1) = " << pair.value;
  return pass == cases && half;
}

bool criterion_l0(std::ostream& os) {
  CaseGenerator gen;
  gen.seed = 5;
  const SuiteReport rep = run_suite(gen, "l0", 1000);
  os << rep.pass_count << "/1000 in " << rep.wall_time_seconds << " s";
  return rep.failures.empty() && rep.wall_time_seconds < 60.0;
}

bool criterion_paley_zygmund(std::ostream& os) {
  CaseGenerator gen;
  gen.seed = 6;
  const SuiteReport rep = run_suite(gen, "paley-zygmund", 500);
  os << rep.pass_count << "/500";
  return rep.failures.empty();
}

bool criterion_sandwich(std::ostream& os) {
  CaseGenerator gen;
  gen.seed = 7;
  const SuiteReport rep = run_suite(gen, "sandwich", 500);

  const WeightSpec w = WeightSpec::independent({{parse_decimal("1"), parse_decimal("0.8")},
                                                {parse_decimal("0"), parse_decimal("0.2")}});
  const ConstantsReport worked = extract_constants(w, 1.0, 4.0, ThresholdMode::classic);
  // 30 and a/30 from 30-digit arithmetic.
  const bool t_ok = std::fabs(worked.t - 30.0) <= 30.0 * 5e-13;
  const bool l_ok = std::fabs(worked.L - 0.0108306565410968775) <= 0.0108306565410968775 * 5e-13;
  os << rep.pass_count << "/500 per mode, worked case t = " << worked.t << ", L = " << worked.L;
  return rep.failures.empty() && t_ok && l_ok;
}

bool criterion_counterexample(std::ostream& os) {
  const CounterexampleReport rep = counterexample_demo();
  const bool zero_exact = rep.corrected_norm_p1 == 0.0 && rep.corrected_norm_p2 == 0.0 && rep.exact;
  const bool norm = rep.coeff_norm2 == std::sqrt(2.0);
  const bool thresholds = std::fabs(rep.classic_threshold - 2.0 / 3.0) <= 1e-15 &&
                          std::fabs(rep.refined_threshold - 0.5179161196927559) <= 1e-6;
  os << "||w xi||_1 = " << rep.corrected_norm_p1 << " (exact), ||x||_2 = " << rep.coeff_norm2
     << ", rejected: classic " << rep.classic_rejected << " at " << rep.classic_threshold
     << ", refined " << rep.refined_rejected << " at " << rep.refined_threshold;
  return zero_exact && norm && thresholds && rep.classic_rejected && rep.refined_rejected;
}

bool criterion_monte_carlo(std::ostream& os) {
  int within = 0;
  const int cases = 50;
  McConfig cfg;
  cfg.sample_count = 1'000'000;
  for (int i = 0; i < cases; ++i) {
    const std::uint64_t cs = derive_seed(9, i);
    const CoefficientVector x = seeded_nonzero_vector(cs, 16);
    cfg.seed = cs;
    if (i % 2 == 0) {
      const double p = (i % 4 == 0) ? 2.0 : 1.0;
      const double exact = exact_moment(x, p).absolute_moment;
      const MomentReport mc = mc_moment(x, p, nullptr, cfg);
      if (std::fabs(mc.absolute_moment - exact) <= 5.0 * mc.standard_error + 1e-15) ++within;
    } else {
      const double t = 0.7 * x.norm2();
      const double exact = exact_tail(x, t, true).value;
      const McTail mc = mc_tail(x, t, true, nullptr, cfg);
      if (std::fabs(mc.estimate - exact) <= 5.0 * mc.standard_error + 1e-15) ++within;
    }
  }
  // Determinism: the first three cases replayed bit-identically.
  bool identical = true;
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t cs = derive_seed(9, i);
    const CoefficientVector x = seeded_nonzero_vector(cs, 16);
    cfg.seed = cs;
    const MomentReport a = mc_moment(x, 2.0, nullptr, cfg);
    const MomentReport b = mc_moment(x, 2.0, nullptr, cfg);
    identical = identical && a.absolute_moment == b.absolute_moment &&
                a.standard_error == b.standard_error;
  }
  os << within << "/" << cases << " within 5 sigma, replay bit-identical: "
     << (identical ? "yes" : "no");
  return within >= 49 && identical;
}

bool criterion_refined_envelope(std::ostream& os) {
  const double limit_ref = 2.0 * std::exp(-2.0 + kEulerGamma);
  const double beta0 = l0_tail_threshold_refined(0.0);
  const bool at_zero = std::fabs(beta0 - limit_ref) <= 1e-6;
  bool dominates = true, scan_agrees = true;
  for (int i = 0; i < 100; ++i) {
    const double a = 0.99 * i / 99.0;
    const double beta = l0_tail_threshold_refined(a);
    const double classic = (1.0 - a * a) * (1.0 - a * a) / 3.0;
    dominates = dominates && beta >= classic - 1e-12;
    const double grid = l0_tail_threshold_refined_grid(a, 10000);
    scan_agrees = scan_agrees && std::fabs(beta - grid) <= 1e-6;
  }
  os << "beta(0) = " << beta0 << " vs " << limit_ref << ", dominates classic: "
     << (dominates ? "yes" : "no") << ", grid scan agrees: " << (scan_agrees ? "yes" : "no");
  return at_zero && dominates && scan_agrees;
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"fourth-moment suite (200 cases, exact)", criterion_fourth_moment},
      {"Haagerup constants and upper-bound suite", criterion_haagerup},
      {"Euler-constant limit and zero-mass threshold", criterion_euler_limit},
      {"zero-mass suite (500 cases, exact)", criterion_zero_mass},
      {"L0 proposition suite (1000 supercritical cases)", criterion_l0},
      {"Paley-Zygmund brute force (500 distributions)", criterion_paley_zygmund},
      {"weighted sandwich (500 cases per mode + worked case)", criterion_sandwich},
      {"sharpness counterexample (exact zero, both modes reject)", criterion_counterexample},
      {"Monte Carlo consistency (50 cases, 1e6 samples)", criterion_monte_carlo},
      {"refined-vs-classic envelope (100-point grid)", criterion_refined_envelope},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    if (!ok) ++failures;
    std::printf("criterion %2zu [%s]: %s (%s)\n", i + 1, ok ? "PASS" : "FAIL",
                criteria[i].name.c_str(), detail.str().c_str());
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
