#ifndef KHINLAB_DECIMAL_HPP
#define KHINLAB_DECIMAL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace khinlab {

using int128 = __int128;

std::string i128_to_string(int128 v);

// Checked 128-bit helpers; nullopt on overflow.
std::optional<int128> checked_mul(int128 a, int128 b);
std::optional<int128> checked_pow10(int128 a, int exp);

// A number ingested from a decimal string. `value` is the nearest double;
// when the literal has at most 15 significant digits (and sane exponents) it
// is also kept exactly as mantissa / 10^exp10, which makes downstream zero
// tests and tie comparisons exact.
struct Decimal {
  std::string text;     // verbatim input
  double value = 0.0;
  bool exact = false;
  int128 mantissa = 0;  // normalized: no trailing zeros
  int exp10 = 0;        // value = mantissa / 10^exp10

  bool is_zero() const { return exact ? mantissa == 0 : value == 0.0; }
  bool is_negative() const { return exact ? mantissa < 0 : value < 0.0; }
};

// Throws Error(parse_error) on non-numeric or non-finite input.
Decimal parse_decimal(std::string_view text);

// Shortest round-trip representation of v, re-ingested as a decimal.
Decimal decimal_from_double(double v);

// Exact product of two exact decimals; nullopt when either is inexact or the
// mantissa product overflows.
std::optional<Decimal> decimal_mul(const Decimal& a, const Decimal& b);

// Exact three-way comparison of |a| against b (b >= 0 expected).
// nullopt when exact comparison is impossible.
std::optional<int> decimal_abs_compare(const Decimal& a, const Decimal& b);

// Rescale exact decimals to a shared exponent: out[i] * 10^-exp10 == xs[i].
// False when any member is inexact or a scaled mantissa would overflow the
// headroom needed for 64-term signed sums.
bool common_scale(std::span<const Decimal> xs, std::vector<int128>& out, int& exp10);

} // namespace khinlab

#endif
