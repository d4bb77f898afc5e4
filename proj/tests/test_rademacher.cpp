#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "khinlab/errors.hpp"
#include "khinlab/kahan.hpp"
#include "khinlab/rademacher.hpp"
#include "khinlab/rng.hpp"
#include "oracle.hpp"

using namespace khinlab;

namespace {

CoefficientVector coeffs(std::vector<std::string> texts) {
  return CoefficientVector::from_strings(texts);
}

CoefficientVector random_coeffs(Xoshiro256StarStar& rng, int n) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.next_in(-2.0, 2.0);
  return CoefficientVector::from_doubles(x);
}

} // namespace

TEST_CASE("distribution of two fair signs") {
  Distribution d = exact_distribution(coeffs({"1", "1"}));
  REQUIRE(d.entries.size() == 3);
  CHECK(d.exact);
  CHECK(d.entries[0].value == -2.0);
  CHECK(d.entries[0].prob == 0.25);
  CHECK(d.entries[1].value == 0.0);
  CHECK(d.entries[1].prob == 0.5);
  CHECK(d.entries[1].exact_prob == "1/2");
  CHECK(d.entries[2].value == 2.0);
  CHECK(d.entries[2].prob == 0.25);
}

TEST_CASE("distribution of (0.6, 0.8)") {
  Distribution d = exact_distribution(coeffs({"0.6", "0.8"}));
  REQUIRE(d.entries.size() == 4);
  CHECK(d.exact);
  const double expect[] = {-1.4, -0.2, 0.2, 1.4};
  for (int i = 0; i < 4; ++i) {
    CHECK(d.entries[i].value == doctest::Approx(expect[i]).epsilon(1e-15));
    CHECK(d.entries[i].prob == 0.25);
  }
}

TEST_CASE("weighted distribution collapses for the sharpness pair") {
  std::vector<Decimal> table = {parse_decimal("1"), parse_decimal("0"), parse_decimal("0"),
                                parse_decimal("1")};
  WeightSpec w = WeightSpec::sign_function(2, std::move(table));
  Distribution d = exact_distribution(coeffs({"1", "-1"}), &w);
  REQUIRE(d.entries.size() == 1);
  CHECK(d.exact);
  CHECK(d.entries[0].value == 0.0);
  CHECK(d.entries[0].prob == 1.0);
  CHECK(d.entries[0].exact_prob == "1/1");
}

TEST_CASE("distribution probabilities sum to 1") {
  Xoshiro256StarStar rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    CoefficientVector x = random_coeffs(rng, 1 + static_cast<int>(rng.next_below(10)));
    Distribution d = exact_distribution(x);
    NeumaierSum total;
    for (const auto& e : d.entries) {
      CHECK(e.prob >= 0.0);
      total.add(e.prob);
    }
    CHECK(total.value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::is_sorted(d.entries.begin(), d.entries.end(),
                         [](const auto& a, const auto& b) { return a.value < b.value; }));
  }
}

TEST_CASE("nearby values coalesce in float mode") {
  // 2^-41 needs 17 significant digits, so the vector stays float-only.
  std::vector<double> x = {1.0, 1.0 + std::ldexp(1.0, -41)};
  Distribution d = exact_distribution(CoefficientVector::from_doubles(x));
  CHECK_FALSE(d.exact);
  CHECK(d.entries.size() == 3); // +-(2 + eps) and a merged near-zero group
  CHECK(d.entries[1].prob == doctest::Approx(0.5));
}

TEST_CASE("moment examples") {
  MomentReport r1 = exact_moment(coeffs({"1", "1"}), 1.0);
  CHECK(r1.absolute_moment == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r1.norm == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r1.method == MomentMethod::exact);
  CHECK(r1.standard_error == 0.0);
  CHECK(r1.sample_count == 0);

  MomentReport r2 = exact_moment(coeffs({"0.6", "0.8"}), 4.0);
  CHECK(r2.absolute_moment == doctest::Approx(1.9216).epsilon(1e-12));

  MomentReport r3 = exact_moment(coeffs({"0", "0", "0"}), 2.5);
  CHECK(r3.absolute_moment == 0.0);
  CHECK(r3.norm == 0.0);
}

TEST_CASE("moment report invariants") {
  Xoshiro256StarStar rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    CoefficientVector x = random_coeffs(rng, 1 + static_cast<int>(rng.next_below(12)));
    const double p = rng.next_in(0.3, 5.0);
    MomentReport r = exact_moment(x, p);
    CHECK(std::pow(r.norm, p) == doctest::Approx(r.absolute_moment).epsilon(1e-12));
    CHECK(r.second_norm * r.second_norm == doctest::Approx(x.sum_squares()).epsilon(1e-12));
    // Parseval
    MomentReport parseval = exact_moment(x, 2.0);
    CHECK(parseval.absolute_moment == doctest::Approx(x.sum_squares()).epsilon(1e-12));
  }
}

TEST_CASE("engine matches the naive oracle") {
  Xoshiro256StarStar rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(11));
    CoefficientVector x = random_coeffs(rng, n);
    for (double p : {1.0, 2.0, 3.0, 2.7}) {
      const double mine = exact_moment(x, p).absolute_moment;
      const double naive = static_cast<double>(oracle::abs_moment(x.values(), p));
      CHECK(mine == doctest::Approx(naive).epsilon(1e-11));
    }
    const double t = rng.next_in(0.0, 2.0);
    CHECK(exact_tail(x, t, true).value ==
          doctest::Approx(static_cast<double>(oracle::tail(x.values(), t, true))).epsilon(1e-12));
  }
}

TEST_CASE("weighted engine matches the naive oracle") {
  Xoshiro256StarStar rng(29);
  std::vector<WeightAtom> atoms = {{parse_decimal("2"), parse_decimal("0.5")},
                                   {parse_decimal("0.5"), parse_decimal("0.3")},
                                   {parse_decimal("0"), parse_decimal("0.2")}};
  WeightSpec independent = WeightSpec::independent(atoms);
  std::vector<Decimal> table = {parse_decimal("1.5"), parse_decimal("0"), parse_decimal("0.25"),
                                parse_decimal("1")};
  WeightSpec signdep = WeightSpec::sign_function(2, std::move(table), atoms);
  for (const WeightSpec* w : {&independent, &signdep}) {
    for (int trial = 0; trial < 8; ++trial) {
      const int n = 2 + static_cast<int>(rng.next_below(8));
      CoefficientVector x = random_coeffs(rng, n);
      for (double p : {1.0, 2.0, 3.5}) {
        const double mine = exact_moment(x, p, w).absolute_moment;
        const double naive = static_cast<double>(oracle::abs_moment(x.values(), p, w));
        CHECK(mine == doctest::Approx(naive).epsilon(1e-11));
      }
      const double t = rng.next_in(0.0, 3.0);
      CHECK(exact_tail(x, t, false, w).value ==
            doctest::Approx(static_cast<double>(oracle::tail(x.values(), t, false, w)))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("tail examples") {
  ProbabilityResult t1 = exact_tail(coeffs({"0.6", "0.8"}), parse_decimal("1"), true);
  CHECK(t1.value == 0.5);
  CHECK(t1.exact);
  CHECK(t1.exact_fraction == "1/2");

  CHECK(exact_tail(coeffs({"1"}), parse_decimal("2"), true).value == 0.0);
  CHECK(exact_tail(coeffs({"1", "1"}), parse_decimal("0"), true).value == 0.5);
  // Non-strict at an attained value: |xi| = 2 on both all-plus and all-minus.
  CHECK(exact_tail(coeffs({"1", "1"}), parse_decimal("2"), false).value == 0.5);
  CHECK(exact_tail(coeffs({"1", "1"}), parse_decimal("2"), true).value == 0.0);
}

TEST_CASE("zero mass examples") {
  ProbabilityResult z1 = prob_zero(coeffs({"1", "1"}));
  CHECK(z1.value == 0.5);
  CHECK(z1.exact);
  CHECK(z1.exact_fraction == "1/2");
  CHECK(prob_zero(coeffs({"1"})).value == 0.0);
  CHECK(prob_zero(coeffs({"1", "2", "3"})).value == 0.25);
}

TEST_CASE("float-mode zero classification uses the relative tolerance") {
  // The two coordinates cancel to 2^-43 ~ 1.1e-13, inside 1e-12 * max|x|;
  // the 16-digit shortest representation keeps the vector float-only.
  std::vector<double> x = {1.0, -1.0 + std::ldexp(1.0, -43)};
  CoefficientVector v = CoefficientVector::from_doubles(x);
  CHECK_FALSE(v.exact());
  CHECK(prob_zero(v).value == doctest::Approx(0.5));
  CHECK(exact_tail(v, 0.0, true).value == doctest::Approx(0.5));
}

TEST_CASE("short decimals keep exact zero decisions") {
  // The same near-cancellation as a 13-digit literal stays on the integer
  // grid, where the residual 1e-13 is a genuine nonzero.
  std::vector<double> x = {1.0, -1.0 + 1e-13};
  CoefficientVector v = CoefficientVector::from_doubles(x);
  CHECK(v.exact());
  CHECK(prob_zero(v).value == 0.0);
  CHECK(exact_tail(v, 0.0, true).value == 1.0);
}

TEST_CASE("float-mode ties at the tail level follow the strict flag") {
  std::vector<double> x = {1.0, -1.0 + std::ldexp(1.0, -43), 3.0};
  CoefficientVector v = CoefficientVector::from_doubles(x);
  CHECK_FALSE(v.exact());
  // |S| takes values {5-e, 1+e, 3+e, 3-e}, each with probability 1/4; both
  // 3 +- e land within the tie tolerance of t = 3.
  CHECK(exact_tail(v, 3.0, false).value == doctest::Approx(0.75));
  CHECK(exact_tail(v, 3.0, true).value == doctest::Approx(0.25));
}

TEST_CASE("permutation and sign flips leave exact outputs bit-identical") {
  CoefficientVector a = coeffs({"1", "2", "3"});
  CoefficientVector b = coeffs({"3", "1", "2"});
  CoefficientVector c = coeffs({"-1", "2", "-3"});
  for (const auto* other : {&b, &c}) {
    Distribution da = exact_distribution(a);
    Distribution dother = exact_distribution(*other);
    REQUIRE(da.entries.size() == dother.entries.size());
    for (std::size_t i = 0; i < da.entries.size(); ++i) {
      CHECK(da.entries[i].value == dother.entries[i].value);
      CHECK(da.entries[i].exact_prob == dother.entries[i].exact_prob);
    }
    CHECK(prob_zero(a).value == prob_zero(*other).value);
    CHECK(exact_tail(a, parse_decimal("2"), true).value ==
          exact_tail(*other, parse_decimal("2"), true).value);
  }
  // Moments are float accumulations; identical terms up to ordering.
  CHECK(exact_moment(a, 3.0).absolute_moment ==
        doctest::Approx(exact_moment(c, 3.0).absolute_moment).epsilon(1e-12));
}

TEST_CASE("scaling covariance of moments") {
  Xoshiro256StarStar rng(37);
  CoefficientVector x = random_coeffs(rng, 6);
  std::vector<double> scaled_vals;
  for (double v : x.values()) scaled_vals.push_back(-2.5 * v);
  CoefficientVector y = CoefficientVector::from_doubles(scaled_vals);
  for (double p : {1.0, 2.0, 3.0}) {
    const double lhs = exact_moment(y, p).absolute_moment;
    const double rhs = std::pow(2.5, p) * exact_moment(x, p).absolute_moment;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("norm is nondecreasing in p") {
  Xoshiro256StarStar rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    CoefficientVector x = random_coeffs(rng, 1 + static_cast<int>(rng.next_below(10)));
    double prev = 0.0;
    for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0}) {
      const double norm = exact_moment(x, p).norm;
      CHECK(norm >= prev * (1.0 - 1e-12));
      prev = norm;
    }
  }
}

TEST_CASE("error paths") {
  std::vector<std::string> big(27, "1");
  CHECK_THROWS_AS(exact_moment(coeffs(big), 2.0), Error);
  CHECK_THROWS_AS(exact_moment(coeffs({"1"}), 0.0), Error);
  CHECK_THROWS_AS(exact_moment(coeffs({"1"}), -1.0), Error);
  CHECK_THROWS_AS(exact_tail(coeffs({"1"}), parse_decimal("-0.5"), true), Error);
  CHECK_THROWS_AS((void)CoefficientVector::from_strings(std::vector<std::string>{}), Error);

  // Weight depth beyond n is malformed.
  std::vector<Decimal> table = {parse_decimal("1"), parse_decimal("1"), parse_decimal("1"),
                                parse_decimal("0")};
  WeightSpec w = WeightSpec::sign_function(2, std::move(table));
  CHECK_THROWS_AS(exact_moment(coeffs({"1"}), 1.0, &w), Error);

  // n_max override is honored.
  CHECK_THROWS_AS(exact_moment(coeffs({"1", "1", "1"}), 1.0, nullptr, 2), Error);
  CHECK_NOTHROW(exact_moment(coeffs({"1", "1", "1"}), 1.0, nullptr, 3));
}

TEST_CASE("norm2 survives squaring underflow") {
  std::vector<double> tiny = {1e-200, 0.0};
  CoefficientVector v = CoefficientVector::from_doubles(tiny);
  CHECK_FALSE(v.all_zero());
  CHECK(v.norm2() == doctest::Approx(1e-200));
  CHECK(v.norm2() > 0.0);
}

TEST_CASE("exact distribution masses total exactly one") {
  // Reduced fractions from the integer grid recombine to 2^n / 2^n.
  Xoshiro256StarStar rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(10));
    std::vector<double> vals(n);
    for (auto& v : vals) v = static_cast<double>(rng.next_below(11)) - 5.0;
    CoefficientVector x = CoefficientVector::from_doubles(vals);
    REQUIRE(x.exact());
    Distribution d = exact_distribution(x);
    REQUIRE(d.exact);
    const long long common = 1ll << n;
    long long total = 0;
    for (const auto& e : d.entries) {
      const auto slash = e.exact_prob.find('/');
      REQUIRE(slash != std::string::npos);
      const long long num = std::stoll(e.exact_prob.substr(0, slash));
      const long long den = std::stoll(e.exact_prob.substr(slash + 1));
      REQUIRE(common % den == 0);
      total += num * (common / den);
    }
    CHECK(total == common);
  }
}

TEST_CASE("concurrent invocations agree bit for bit") {
  CoefficientVector x = coeffs({"0.6", "0.8", "-1.25", "2"});
  const double reference = exact_moment(x, 3.0).absolute_moment;
  std::vector<std::future<double>> futures;
  for (int i = 0; i < 8; ++i)
    futures.push_back(std::async(std::launch::async,
                                 [&x] { return exact_moment(x, 3.0).absolute_moment; }));
  for (auto& f : futures) CHECK(f.get() == reference);
}

TEST_CASE("fourth-moment closed form as an extra oracle") {
  // E xi^4 = 3 (sum x^2)^2 - 2 sum x^4.
  Xoshiro256StarStar rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    CoefficientVector x = random_coeffs(rng, 1 + static_cast<int>(rng.next_below(12)));
    NeumaierSum s2, s4;
    for (double v : x.values()) {
      s2.add(v * v);
      s4.add(v * v * v * v);
    }
    const double closed = 3.0 * s2.value() * s2.value() - 2.0 * s4.value();
    CHECK(exact_moment(x, 4.0).absolute_moment == doctest::Approx(closed).epsilon(1e-12));
  }
}
