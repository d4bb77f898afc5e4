#include "khinlab/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "khinlab/constants.hpp"
#include "khinlab/errors.hpp"
#include "khinlab/kahan.hpp"
#include "khinlab/rng.hpp"

namespace khinlab {

namespace {

void require_small(const CoefficientVector& x) {
  if (x.size() > 16)
    fail(ErrorKind::dimension_too_large, "property checks are limited to n <= 16");
}

std::string describe_vector(const CoefficientVector& x) {
  std::ostringstream os;
  os << "n=" << x.size() << " x=[";
  for (int i = 0; i < x.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x.values()[i]);
    os << (i ? "," : "") << buf;
  }
  os << "]";
  return os.str();
}

} // namespace

CheckResult check_fourth_moment(const CoefficientVector& x) {
  require_small(x);
  const double m2 = exact_moment(x, 2.0).absolute_moment;
  const double m4 = exact_moment(x, 4.0).absolute_moment;
  CheckResult r;
  r.observed = m4;
  r.bound = 3.0 * m2 * m2;
  r.pass = m4 <= r.bound * (1.0 + 1e-12);
  return r;
}

CheckResult check_l0_proposition(const CoefficientVector& x, double a, ThresholdMode mode) {
  if (!(a > 0.0 && a < 1.0)) fail(ErrorKind::bad_argument, "a must lie in (0, 1)");
  require_small(x);
  CheckResult r;
  if (x.compare_sum_squares_to_one() <= 0) {
    r.pass = true;
    r.detail = "vacuous: sum of squares <= 1";
    r.observed = x.sum_squares();
    r.bound = 1.0;
    return r;
  }
  const double tail = exact_tail(x, a, /*strict=*/true).value;
  const double threshold =
      mode == ThresholdMode::classic ? l0_tail_threshold_classic(a) : l0_tail_threshold_refined(a);
  r.observed = tail;
  r.bound = threshold;
  r.pass = tail >= threshold - 1e-10;
  return r;
}

CheckResult check_zero_mass_bound(const CoefficientVector& x) {
  require_small(x);
  if (x.all_zero())
    fail(ErrorKind::bad_argument, "zero-mass bound requires a nonzero coefficient vector");
  CheckResult r;
  r.observed = prob_zero(x).value;
  r.bound = zero_mass_threshold().exact;
  r.pass = r.observed <= r.bound + 1e-7;
  return r;
}

CheckResult check_paley_zygmund(const std::vector<std::pair<double, double>>& dist, double lambda,
                                double q) {
  if (dist.empty()) fail(ErrorKind::bad_argument, "distribution must be nonempty");
  NeumaierSum total;
  bool positive = false;
  for (const auto& [v, p] : dist) {
    if (!std::isfinite(v) || v < 0.0) fail(ErrorKind::bad_argument, "values must be >= 0");
    if (!(p > 0.0)) fail(ErrorKind::bad_argument, "probabilities must be positive");
    total.add(p);
    if (v > 0.0) positive = true;
  }
  if (std::fabs(total.value() - 1.0) > 1e-9)
    fail(ErrorKind::bad_argument, "probabilities must sum to 1");
  if (!positive) fail(ErrorKind::bad_argument, "variable must be positive with positive mass");

  NeumaierSum m2, mq;
  for (const auto& [v, p] : dist) {
    m2.add(p * v * v);
    mq.add(p * std::pow(v, q));
  }
  const double norm2 = std::sqrt(m2.value());
  const double normq = std::pow(mq.value(), 1.0 / q);
  const PZBound pz = pz_lower_bound(lambda, norm2, normq, q);

  NeumaierSum hit;
  const double level = lambda * norm2;
  for (const auto& [v, p] : dist)
    if (v > level) hit.add(p);

  CheckResult r;
  r.observed = hit.value();
  r.bound = pz.bound;
  r.pass = r.observed >= r.bound - 1e-12;
  return r;
}

SandwichResult check_sandwich(const WeightSpec& w, const CoefficientVector& x, double p, double q,
                              ThresholdMode mode, int n_max) {
  if (x.size() + w.depth() > n_max)
    fail(ErrorKind::dimension_too_large, "n + weight depth exceeds the enumeration cap");
  SandwichResult r;
  r.constants = extract_constants(w, p, q, mode);
  if (x.all_zero()) {
    r.pass = true;
    return r;
  }
  const double norm2 = x.norm2();
  r.lower = r.constants.L * norm2;
  r.upper = r.constants.C2 * norm2;
  r.middle = exact_moment(x, p, &w).norm;
  const double slack = 1e-10 * norm2;
  r.pass = r.lower <= r.middle + slack && r.middle <= r.upper + slack;
  return r;
}

CounterexampleReport counterexample_demo() {
  CounterexampleReport rep;
  // w = 1 on the equal-sign patterns (++ and --), i.e. 1_{r1 + r2 != 0}.
  std::vector<Decimal> table = {parse_decimal("1"), parse_decimal("0"), parse_decimal("0"),
                                parse_decimal("1")};
  const WeightSpec w = WeightSpec::sign_function(2, std::move(table));

  const std::string plus[] = {"1", "1"};
  const std::string minus[] = {"1", "-1"};
  const CoefficientVector literal = CoefficientVector::from_strings(plus);
  const CoefficientVector corrected = CoefficientVector::from_strings(minus);

  const WeightStats stats = weight_stats(w, 4.0);
  rep.s = stats.s;
  rep.coeff_norm2 = corrected.norm2();
  rep.literal_norm_p1 = exact_moment(literal, 1.0, &w).norm;
  rep.corrected_norm_p1 = exact_moment(corrected, 1.0, &w).norm;
  rep.corrected_norm_p2 = exact_moment(corrected, 2.0, &w).norm;
  rep.corrected_dist = exact_distribution(corrected, &w);
  rep.exact = rep.corrected_dist.exact;
  rep.classic_threshold = mode_s_threshold(ThresholdMode::classic);
  rep.refined_threshold = mode_s_threshold(ThresholdMode::refined);
  for (ThresholdMode mode : {ThresholdMode::classic, ThresholdMode::refined}) {
    bool rejected = false;
    try {
      extract_constants(w, 1.0, 4.0, mode);
    } catch (const Error& e) {
      rejected = e.kind() == ErrorKind::s_below_threshold;
    }
    (mode == ThresholdMode::classic ? rep.classic_rejected : rep.refined_rejected) = rejected;
  }
  return rep;
}

namespace {

double gaussian(Xoshiro256StarStar& rng) {
  double u1 = rng.next_unit();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// Coefficient laws: 0 = uniform sphere with log-uniform radius, 1 = integer
// grid, 2 = sparse. Integer-grid vectors exercise the exact integer mode.
CoefficientVector random_vector(Xoshiro256StarStar& rng, int n_min, int n_max, int law) {
  const int n = n_min + static_cast<int>(rng.next_below(n_max - n_min + 1));
  std::vector<double> x(n, 0.0);
  switch (law % 3) {
    case 0: {
      double ss = 0.0;
      while (ss == 0.0) {
        for (auto& v : x) {
          v = gaussian(rng);
          ss += v * v;
        }
      }
      const double radius = std::exp(rng.next_in(-1.4, 1.4));
      for (auto& v : x) v *= radius / std::sqrt(ss);
      break;
    }
    case 1: {
      bool nonzero = false;
      for (auto& v : x) {
        v = static_cast<double>(rng.next_below(11)) - 5.0;
        nonzero |= v != 0.0;
      }
      if (!nonzero) x[rng.next_below(n)] = 1.0 + static_cast<double>(rng.next_below(5));
      break;
    }
    default: {
      const int nz = 1 + static_cast<int>(rng.next_below(std::min(n, 3)));
      for (int i = 0; i < nz; ++i)
        x[rng.next_below(n)] = rng.next_in(-2.0, 2.0);
      if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; }))
        x[0] = 1.0;
      break;
    }
  }
  return CoefficientVector::from_doubles(x);
}

// Unit-sphere direction rescaled so that sum x^2 lands in (1, 4].
CoefficientVector random_supercritical_vector(Xoshiro256StarStar& rng, int n_min, int n_max) {
  const int n = n_min + static_cast<int>(rng.next_below(n_max - n_min + 1));
  std::vector<double> x(n, 0.0);
  double ss = 0.0;
  while (ss == 0.0) {
    for (auto& v : x) {
      v = gaussian(rng);
      ss += v * v;
    }
  }
  const double target = rng.next_in(1.001, 4.0);
  const double scale = std::sqrt(target / ss);
  for (auto& v : x) v *= scale;
  return CoefficientVector::from_doubles(x);
}

// Independent-atom weight with P(w != 0) close to s_target (exact for the
// two-atom form, within rounding for more atoms).
WeightSpec random_independent_weight(Xoshiro256StarStar& rng, double s_lo, double s_hi) {
  const double s = rng.next_in(s_lo, s_hi);
  std::vector<WeightAtom> atoms;
  const int positive = 1 + static_cast<int>(rng.next_below(3));
  std::vector<double> split(positive);
  double split_sum = 0.0;
  for (auto& v : split) {
    v = 0.05 + rng.next_unit();
    split_sum += v;
  }
  double assigned = 0.0;
  for (int i = 0; i < positive; ++i) {
    const double prob = i + 1 == positive ? s - assigned : s * split[i] / split_sum;
    assigned += prob;
    atoms.push_back({decimal_from_double(0.1 + 2.9 * rng.next_unit()), decimal_from_double(prob)});
  }
  atoms.push_back({parse_decimal("0"), decimal_from_double(1.0 - s)});
  return WeightSpec::independent(std::move(atoms));
}

// Sign-function weight; the table keeps s_table in {1, 3/4} so an optional
// aux layer controls the final nonzero mass.
WeightSpec random_sign_weight(Xoshiro256StarStar& rng, int n, double s_lo, double s_hi) {
  const int k = std::min(n, 1 + static_cast<int>(rng.next_below(2)));
  const bool drop_entry = k == 2 && rng.next_below(2) == 0;
  std::vector<Decimal> table;
  const std::size_t drop_at = drop_entry ? rng.next_below(4) : ~std::size_t{0};
  for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
    if (i == drop_at)
      table.push_back(parse_decimal("0"));
    else
      table.push_back(decimal_from_double(0.2 + 2.0 * rng.next_unit()));
  }
  const double s_table = drop_entry ? 0.75 : 1.0;
  std::vector<WeightAtom> aux;
  if (rng.next_below(2) == 0) {
    // Aux zero mass chosen so s_table * s_aux stays in [s_lo, s_hi].
    const double s_aux = std::min(1.0, rng.next_in(s_lo, s_hi) / s_table);
    if (s_aux < 1.0) {
      aux.push_back({decimal_from_double(0.5 + rng.next_unit()), decimal_from_double(s_aux)});
      aux.push_back({parse_decimal("0"), decimal_from_double(1.0 - s_aux)});
    }
  }
  return WeightSpec::sign_function(k, std::move(table), std::move(aux));
}

std::vector<std::pair<double, double>> random_positive_distribution(Xoshiro256StarStar& rng) {
  const int n_atoms = 1 + static_cast<int>(rng.next_below(8));
  std::vector<std::pair<double, double>> dist(n_atoms);
  double total = 0.0;
  for (auto& [v, p] : dist) {
    v = rng.next_below(4) == 0 ? 0.0 : rng.next_in(0.0, 3.0);
    p = -std::log(std::max(rng.next_unit(), 0x1.0p-53));
    total += p;
  }
  for (auto& [v, p] : dist) p /= total;
  bool positive = std::any_of(dist.begin(), dist.end(), [](auto& a) { return a.first > 0.0; });
  if (!positive) dist[0].first = 1.0;
  return dist;
}

struct CaseOutcome {
  bool pass = true;
  std::string inputs;
  double expected = 0.0;
  double observed = 0.0;
};

void note_failure(CaseOutcome& out, const std::string& inputs, const CheckResult& r) {
  if (out.pass && !r.pass) {
    out.pass = false;
    out.inputs = inputs + (r.detail.empty() ? "" : " (" + r.detail + ")");
    out.expected = r.bound;
    out.observed = r.observed;
  }
}

CaseOutcome run_fourth_moment_case(const CaseGenerator& gen, std::uint64_t case_seed) {
  Xoshiro256StarStar rng(case_seed);
  const int law = static_cast<int>(case_seed % 3);
  const CoefficientVector x = random_vector(rng, gen.n_min, gen.n_max, law);
  CaseOutcome out;
  note_failure(out, describe_vector(x), check_fourth_moment(x));
  return out;
}

CaseOutcome run_l0_case(const CaseGenerator& gen, std::uint64_t case_seed) {
  Xoshiro256StarStar rng(case_seed);
  const CoefficientVector x = random_supercritical_vector(rng, gen.n_min, gen.n_max);
  CaseOutcome out;
  for (int i = 1; i <= 9 && out.pass; ++i) {
    const double a = i / 10.0;
    // One exact tail serves both thresholds.
    const double tail = exact_tail(x, a, /*strict=*/true).value;
    for (ThresholdMode mode : {ThresholdMode::classic, ThresholdMode::refined}) {
      const double threshold = mode == ThresholdMode::classic ? l0_tail_threshold_classic(a)
                                                              : l0_tail_threshold_refined(a);
      if (out.pass && tail < threshold - 1e-10) {
        out.pass = false;
        std::ostringstream tag;
        tag << describe_vector(x) << " a=" << a << " mode=" << to_string(mode);
        out.inputs = tag.str();
        out.expected = threshold;
        out.observed = tail;
      }
    }
  }
  return out;
}

CaseOutcome run_zero_mass_case(const CaseGenerator& gen, std::uint64_t case_seed) {
  Xoshiro256StarStar rng(case_seed);
  const int law = static_cast<int>(case_seed % 3);
  CoefficientVector x = random_vector(rng, gen.n_min, gen.n_max, law);
  if (x.all_zero()) x = CoefficientVector::from_strings(std::vector<std::string>{"1"});
  CaseOutcome out;
  note_failure(out, describe_vector(x), check_zero_mass_bound(x));
  return out;
}

CaseOutcome run_paley_zygmund_case(const CaseGenerator&, std::uint64_t case_seed) {
  Xoshiro256StarStar rng(case_seed);
  const auto dist = random_positive_distribution(rng);
  CaseOutcome out;
  for (int li = 0; li <= 10 && out.pass; ++li) {
    for (double q : {2.5, 3.0, 4.0}) {
      const double lambda = li / 10.0;
      std::ostringstream tag;
      tag << "atoms=" << dist.size() << " lambda=" << lambda << " q=" << q;
      note_failure(out, tag.str(), check_paley_zygmund(dist, lambda, q));
    }
  }
  return out;
}

CaseOutcome run_sandwich_case(const CaseGenerator& gen, std::uint64_t case_seed) {
  Xoshiro256StarStar rng(case_seed);
  const int n_cap = std::min(gen.n_max, 12);
  const CoefficientVector x = random_vector(rng, gen.n_min, n_cap, static_cast<int>(case_seed % 3));
  const double p_grid[] = {0.5, 1.0, 1.5, 2.0, 3.0};
  const double gap_grid[] = {0.5, 1.0, 2.0, 4.0};
  const double p = p_grid[rng.next_below(5)];
  const double q = p + gap_grid[rng.next_below(4)];

  CaseOutcome out;
  for (ThresholdMode mode : {ThresholdMode::classic, ThresholdMode::refined}) {
    const double s_lo = mode == ThresholdMode::classic ? 0.70 : 0.53;
    const WeightSpec w = rng.next_below(3) == 0
                             ? random_sign_weight(rng, x.size(), s_lo, 0.98)
                             : random_independent_weight(rng, s_lo, 0.98);
    const SandwichResult r = check_sandwich(w, x, p, q, mode);
    if (out.pass && !r.pass) {
      out.pass = false;
      std::ostringstream tag;
      tag << describe_vector(x) << " p=" << p << " q=" << q << " mode=" << to_string(mode)
          << " s=" << r.constants.s;
      out.inputs = tag.str();
      out.expected = r.upper;
      out.observed = r.middle;
    }
  }
  return out;
}

CaseOutcome run_khintchine_upper_case(const CaseGenerator& gen, std::uint64_t case_seed) {
  Xoshiro256StarStar rng(case_seed);
  const int law = static_cast<int>(case_seed % 3);
  const CoefficientVector x = random_vector(rng, gen.n_min, gen.n_max, law);
  CaseOutcome out;
  for (double q : {2.5, 3.0, 4.0, 6.0}) {
    if (!out.pass) break;
    const double norm_q = exact_moment(x, q).norm;
    const double bound = haagerup_Bq(q) * x.norm2();
    if (norm_q > bound * (1.0 + 1e-10)) {
      out.pass = false;
      std::ostringstream tag;
      tag << describe_vector(x) << " q=" << q;
      out.inputs = tag.str();
      out.expected = bound;
      out.observed = norm_q;
    }
  }
  return out;
}

} // namespace

SuiteReport run_suite(const CaseGenerator& gen, std::string_view suite, std::uint64_t cases) {
  CaseOutcome (*runner)(const CaseGenerator&, std::uint64_t) = nullptr;
  if (suite == "fourth-moment")
    runner = run_fourth_moment_case;
  else if (suite == "l0")
    runner = run_l0_case;
  else if (suite == "zero-mass")
    runner = run_zero_mass_case;
  else if (suite == "paley-zygmund")
    runner = run_paley_zygmund_case;
  else if (suite == "sandwich")
    runner = run_sandwich_case;
  else if (suite == "khintchine-upper")
    runner = run_khintchine_upper_case;
  else
    fail(ErrorKind::unknown_suite, "unknown suite '" + std::string(suite) + "'");

  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = std::string(suite);
  report.seed = gen.seed;
  report.case_count = cases;
  for (std::uint64_t i = 0; i < cases; ++i) {
    const std::uint64_t case_seed = derive_seed(gen.seed, i);
    const CaseOutcome out = runner(gen, case_seed);
    if (out.pass) {
      ++report.pass_count;
    } else {
      report.failures.push_back({i, case_seed, out.inputs, out.expected, out.observed});
    }
  }
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

} // namespace khinlab
