#include <doctest.h>

#include <string>
#include <vector>

#include "khinlab/decimal.hpp"
#include "khinlab/errors.hpp"

using namespace khinlab;

TEST_CASE("decimal parsing keeps short literals exact") {
  Decimal d = parse_decimal("0.6");
  CHECK(d.exact);
  CHECK(d.mantissa == 6);
  CHECK(d.exp10 == 1);
  CHECK(d.value == doctest::Approx(0.6));
  CHECK(d.text == "0.6");

  Decimal neg = parse_decimal("-12.50");
  CHECK(neg.exact);
  CHECK(neg.mantissa == -125);
  CHECK(neg.exp10 == 1);

  Decimal sci = parse_decimal("1e3");
  CHECK(sci.exact);
  CHECK(sci.mantissa == 1);
  CHECK(sci.exp10 == -3);
  CHECK(sci.value == 1000.0);

  Decimal zero = parse_decimal("0.000");
  CHECK(zero.exact);
  CHECK(zero.mantissa == 0);
  CHECK(zero.exp10 == 0);
}

TEST_CASE("long literals fall back to float-only") {
  Decimal d = parse_decimal("0.3333333333333333");
  CHECK_FALSE(d.exact);
  CHECK(d.value == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("non-numbers are rejected") {
  CHECK_THROWS_AS(parse_decimal("abc"), Error);
  CHECK_THROWS_AS(parse_decimal("1.2.3"), Error);
  CHECK_THROWS_AS(parse_decimal(""), Error);
  CHECK_THROWS_AS(parse_decimal("1e400"), Error);
}

TEST_CASE("common scaling aligns mixed exponents") {
  std::vector<Decimal> xs = {parse_decimal("0.6"), parse_decimal("0.8"), parse_decimal("1")};
  std::vector<int128> scaled;
  int exp10 = 0;
  REQUIRE(common_scale(xs, scaled, exp10));
  CHECK(exp10 == 1);
  CHECK(scaled == std::vector<int128>{6, 8, 10});
}

TEST_CASE("i128 printing") {
  CHECK(i128_to_string(0) == "0");
  CHECK(i128_to_string(-42) == "-42");
  int128 big = int128{1000000000000000000LL} * 1000;
  CHECK(i128_to_string(big) == "1000000000000000000000");
}

TEST_CASE("round-trip from doubles") {
  Decimal d = decimal_from_double(0.25);
  CHECK(d.exact);
  CHECK(d.value == 0.25);
  // A full-precision double needs 17 digits and stays float-only.
  Decimal irr = decimal_from_double(1.0 / 3.0);
  CHECK_FALSE(irr.exact);
  CHECK(irr.value == 1.0 / 3.0);
}

TEST_CASE("decimal products stay exact") {
  auto prod = decimal_mul(parse_decimal("0.5"), parse_decimal("0.2"));
  REQUIRE(prod.has_value());
  CHECK(prod->mantissa == 1);
  CHECK(prod->exp10 == 1);
  CHECK(prod->value == doctest::Approx(0.1));
}
