#include "khinlab/decimal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "khinlab/errors.hpp"

namespace khinlab {

namespace {

constexpr int128 kMantissaCap = static_cast<int128>(1000000000000000LL); // 10^15
// Scaled mantissas are kept below 2^120 / 64 so that any signed sum of up to
// 64 of them fits an int128.
const int128 kScaledCap = (static_cast<int128>(1) << 120) / 64;

} // namespace

std::string i128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::optional<int128> checked_mul(int128 a, int128 b) {
  int128 out;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

std::optional<int128> checked_pow10(int128 a, int exp) {
  if (exp < 0) return std::nullopt;
  int128 out = a;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(out, static_cast<int128>(10), &out)) return std::nullopt;
  }
  return out;
}

Decimal parse_decimal(std::string_view text) {
  Decimal d;
  d.text.assign(text.begin(), text.end());

  // The double value comes from strtod; the exact mantissa from our own scan.
  std::string buf(d.text);
  const char* begin = buf.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(begin, &end);
  // Allow surrounding whitespace, nothing else.
  const char* p = end;
  while (*p != '\0' && std::isspace(static_cast<unsigned char>(*p))) ++p;
  const char* s = begin;
  while (*s != '\0' && std::isspace(static_cast<unsigned char>(*s))) ++s;
  if (end == begin || *p != '\0')
    fail(ErrorKind::parse_error, "not a decimal number: '" + d.text + "'");
  if (!std::isfinite(v))
    fail(ErrorKind::parse_error, "number out of range: '" + d.text + "'");
  d.value = v;

  // Exact scan: [+-] digits [. digits] [eE [+-] digits]
  bool neg = false;
  if (*s == '+' || *s == '-') neg = (*s++ == '-');
  int128 mant = 0;
  int frac_digits = 0;
  int sig_digits = 0;
  bool seen_dot = false, overflow = false, hex_or_special = false;
  for (; *s != '\0'; ++s) {
    char c = *s;
    if (c == '.') {
      if (seen_dot) { hex_or_special = true; break; }
      seen_dot = true;
      continue;
    }
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c))) { hex_or_special = true; break; }
    int digit = c - '0';
    if (mant == 0 && digit == 0) {
      if (seen_dot) ++frac_digits;
      continue;
    }
    ++sig_digits;
    if (seen_dot) ++frac_digits;
    if (sig_digits > 15) { overflow = true; continue; }
    mant = mant * 10 + digit;
  }
  long explicit_exp = 0;
  if (*s == 'e' || *s == 'E') {
    char* exp_end = nullptr;
    explicit_exp = std::strtol(s + 1, &exp_end, 10);
    s = exp_end;
  }
  if (neg) mant = -mant;

  if (!hex_or_special && !overflow && std::llabs(explicit_exp) <= 30) {
    d.mantissa = mant;
    d.exp10 = frac_digits - static_cast<int>(explicit_exp);
    // Normalize away trailing zeros.
    while (d.mantissa != 0 && d.mantissa % 10 == 0) {
      d.mantissa /= 10;
      --d.exp10;
    }
    if (d.mantissa == 0) d.exp10 = 0;
    d.exact = std::abs(d.exp10) <= 45 && d.mantissa > -kMantissaCap && d.mantissa < kMantissaCap;
  }
  return d;
}

Decimal decimal_from_double(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::parse_error, "non-finite value");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return parse_decimal(std::string_view(buf, res.ptr - buf));
}

std::optional<Decimal> decimal_mul(const Decimal& a, const Decimal& b) {
  if (!a.exact || !b.exact) return std::nullopt;
  auto m = checked_mul(a.mantissa, b.mantissa);
  if (!m) return std::nullopt;
  Decimal out;
  out.mantissa = *m;
  out.exp10 = a.exp10 + b.exp10;
  out.value = a.value * b.value;
  out.exact = true;
  while (out.mantissa != 0 && out.mantissa % 10 == 0) {
    out.mantissa /= 10;
    --out.exp10;
  }
  if (out.mantissa == 0) out.exp10 = 0;
  out.text = i128_to_string(out.mantissa) + "e" + std::to_string(-out.exp10);
  return out;
}

std::optional<int> decimal_abs_compare(const Decimal& a, const Decimal& b) {
  if (!a.exact || !b.exact) return std::nullopt;
  int128 lhs = a.mantissa < 0 ? -a.mantissa : a.mantissa;
  int128 rhs = b.mantissa < 0 ? -b.mantissa : b.mantissa;
  int le = a.exp10, re = b.exp10;
  if (le < re) {
    auto scaled = checked_pow10(lhs, re - le);
    if (!scaled) return std::nullopt;
    lhs = *scaled;
  } else if (re < le) {
    auto scaled = checked_pow10(rhs, le - re);
    if (!scaled) return std::nullopt;
    rhs = *scaled;
  }
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool common_scale(std::span<const Decimal> xs, std::vector<int128>& out, int& exp10) {
  out.clear();
  int target = 0;
  for (const auto& x : xs) {
    if (!x.exact) return false;
    target = std::max(target, x.exp10);
  }
  out.reserve(xs.size());
  for (const auto& x : xs) {
    auto scaled = checked_pow10(x.mantissa, target - x.exp10);
    if (!scaled || *scaled > kScaledCap || *scaled < -kScaledCap) return false;
    out.push_back(*scaled);
  }
  exp10 = target;
  return true;
}

} // namespace khinlab
