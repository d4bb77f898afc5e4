#include "khinlab/weight.hpp"

#include <algorithm>
#include <cmath>

#include "khinlab/errors.hpp"
#include "khinlab/kahan.hpp"

namespace khinlab {

namespace {

bool probs_sum_to_one(const std::vector<WeightAtom>& atoms) {
  std::vector<Decimal> probs;
  probs.reserve(atoms.size());
  for (const auto& a : atoms) probs.push_back(a.prob);
  std::vector<int128> scaled;
  int exp10 = 0;
  if (common_scale(probs, scaled, exp10)) {
    int128 total = 0;
    for (int128 v : scaled) total += v;
    auto one = checked_pow10(1, exp10);
    if (one) return total == *one;
  }
  NeumaierSum sum;
  for (const auto& a : atoms) sum.add(a.prob.value);
  return std::fabs(sum.value() - 1.0) <= 1e-12;
}

bool all_exact(const std::vector<Decimal>& table, const std::vector<WeightAtom>& atoms) {
  return std::all_of(table.begin(), table.end(), [](const Decimal& d) { return d.exact; }) &&
         std::all_of(atoms.begin(), atoms.end(),
                     [](const WeightAtom& a) { return a.value.exact && a.prob.exact; });
}

// Signed exact order; falls back to the double values on scaling overflow.
bool exact_less(const Decimal& a, const Decimal& b) {
  bool an = a.mantissa < 0, bn = b.mantissa < 0;
  if (an != bn) return an;
  int128 lhs = an ? -a.mantissa : a.mantissa;
  int128 rhs = bn ? -b.mantissa : b.mantissa;
  int le = a.exp10, re = b.exp10;
  if (le < re) {
    auto scaled = checked_pow10(lhs, re - le);
    if (!scaled) return a.value < b.value;
    lhs = *scaled;
  } else if (re < le) {
    auto scaled = checked_pow10(rhs, le - re);
    if (!scaled) return a.value < b.value;
    rhs = *scaled;
  }
  return an ? rhs < lhs : lhs < rhs;
}

} // namespace

void WeightSpec::validate() const {
  if (depth_ < 0 || depth_ > 24)
    fail(ErrorKind::malformed_weight, "sign-function depth must be in [0, 24]");
  if (table_.size() != (std::size_t{1} << depth_))
    fail(ErrorKind::malformed_weight, "sign-function table must have 2^depth entries");
  for (const auto& v : table_) {
    if (!std::isfinite(v.value) || v.value < 0.0 || v.is_negative())
      fail(ErrorKind::malformed_weight, "weight values must be finite and nonnegative");
  }
  if (atoms_.empty()) fail(ErrorKind::malformed_weight, "weight needs at least one atom");
  bool any_positive_atom = false;
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.value.value) || a.value.value < 0.0 || a.value.is_negative())
      fail(ErrorKind::malformed_weight, "atom values must be finite and nonnegative");
    if (!(a.prob.value > 0.0))
      fail(ErrorKind::malformed_weight, "atom probabilities must be positive");
    if (!a.value.is_zero()) any_positive_atom = true;
  }
  if (!probs_sum_to_one(atoms_))
    fail(ErrorKind::malformed_weight, "atom probabilities must sum to 1");
  bool any_positive_table = std::any_of(table_.begin(), table_.end(),
                                        [](const Decimal& d) { return !d.is_zero(); });
  if (!any_positive_table || !any_positive_atom)
    fail(ErrorKind::malformed_weight, "weight must be positive with positive probability");
}

WeightSpec WeightSpec::independent(std::vector<WeightAtom> atoms) {
  WeightSpec w;
  w.depth_ = 0;
  w.table_ = {parse_decimal("1")};
  w.atoms_ = std::move(atoms);
  w.validate();
  w.exact_ = all_exact(w.table_, w.atoms_);
  return w;
}

WeightSpec WeightSpec::sign_function(int depth, std::vector<Decimal> table,
                                     std::vector<WeightAtom> aux) {
  if (depth < 1) fail(ErrorKind::malformed_weight, "sign-function depth must be >= 1");
  WeightSpec w;
  w.depth_ = depth;
  w.table_ = std::move(table);
  if (aux.empty()) aux.push_back({parse_decimal("1"), parse_decimal("1")});
  w.atoms_ = std::move(aux);
  w.validate();
  w.exact_ = all_exact(w.table_, w.atoms_);
  return w;
}

WeightSpec WeightSpec::unit() {
  return independent({{parse_decimal("1"), parse_decimal("1")}});
}

WeightSpec WeightSpec::scaled(double c) const {
  if (!(c > 0.0)) fail(ErrorKind::bad_argument, "scale factor must be positive");
  Decimal factor = decimal_from_double(c);
  WeightSpec w;
  w.depth_ = depth_;
  w.atoms_ = atoms_;
  w.table_.reserve(table_.size());
  for (const auto& v : table_) {
    auto prod = decimal_mul(v, factor);
    w.table_.push_back(prod ? *prod : decimal_from_double(v.value * c));
  }
  w.validate();
  w.exact_ = all_exact(w.table_, w.atoms_);
  return w;
}

WeightDistribution weight_distribution(const WeightSpec& w) {
  const int k = w.depth();
  const double pattern_prob = std::ldexp(1.0, -k);

  struct Raw {
    Decimal exact_value;
    double value;
    double prob;
  };
  std::vector<Raw> raw;
  raw.reserve(w.table().size() * w.atoms().size());

  bool exact = w.exact();
  for (const auto& tv : w.table()) {
    for (const auto& atom : w.atoms()) {
      Raw r;
      r.value = tv.value * atom.value.value;
      r.prob = pattern_prob * atom.prob.value;
      if (exact) {
        auto prod = decimal_mul(tv, atom.value);
        if (prod)
          r.exact_value = *prod;
        else
          exact = false;
      }
      raw.push_back(std::move(r));
    }
  }

  WeightDistribution dist;
  dist.exact = exact;
  if (exact) {
    std::sort(raw.begin(), raw.end(),
              [](const Raw& a, const Raw& b) { return exact_less(a.exact_value, b.exact_value); });
    for (const auto& r : raw) {
      if (!dist.entries.empty() &&
          dist.entries.back().exact_value.mantissa == r.exact_value.mantissa &&
          dist.entries.back().exact_value.exp10 == r.exact_value.exp10) {
        dist.entries.back().prob += r.prob;
      } else {
        dist.entries.push_back({r.exact_value.value, r.prob, r.exact_value});
      }
    }
  } else {
    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.value < b.value; });
    for (const auto& r : raw) {
      if (!dist.entries.empty() &&
          std::fabs(r.value - dist.entries.back().value) <= 1e-12 * (1.0 + std::fabs(r.value))) {
        dist.entries.back().prob += r.prob;
      } else {
        dist.entries.push_back({r.value, r.prob, {}});
      }
    }
  }
  return dist;
}

double WeightDistribution::survival(double delta) const {
  NeumaierSum sum;
  for (const auto& e : entries)
    if (e.value > delta) sum.add(e.prob);
  return sum.value();
}

double WeightDistribution::mass_at_least(double value) const {
  NeumaierSum sum;
  for (const auto& e : entries)
    if (e.value >= value) sum.add(e.prob);
  return sum.value();
}

WeightStats weight_stats(const WeightSpec& w, double q) {
  if (!(q > 0.0)) fail(ErrorKind::bad_argument, "norm exponent q must be positive");
  WeightStats stats;
  stats.dist = weight_distribution(w);
  NeumaierSum s, mq;
  for (const auto& e : stats.dist.entries) {
    bool positive = stats.dist.exact ? !e.exact_value.is_zero() : e.value > 0.0;
    if (positive) {
      s.add(e.prob);
      mq.add(e.prob * std::pow(e.value, q));
    }
  }
  stats.s = s.value();
  stats.norm_q = std::pow(mq.value(), 1.0 / q);
  return stats;
}

double delta0(const WeightSpec& w, double tau) {
  if (!(tau > 0.0) || tau > 1.0) fail(ErrorKind::bad_argument, "tau must lie in (0, 1]");
  WeightDistribution dist = weight_distribution(w);
  NeumaierSum cum;
  for (auto it = dist.entries.rbegin(); it != dist.entries.rend(); ++it) {
    cum.add(it->prob);
    bool positive = dist.exact ? !it->exact_value.is_zero() : it->value > 0.0;
    if (positive && cum.value() >= tau) return it->value;
  }
  fail(ErrorKind::no_valid_delta, "no positive weight level has mass >= tau");
}

} // namespace khinlab
