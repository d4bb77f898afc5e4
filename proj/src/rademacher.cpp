#include "khinlab/rademacher.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <type_traits>

#include "khinlab/errors.hpp"
#include "khinlab/kahan.hpp"

namespace khinlab {

namespace {

void check_dims(const CoefficientVector& x, const WeightSpec* w, int n_max) {
  if (x.size() > std::min(n_max, 30))
    fail(ErrorKind::dimension_too_large,
         "n = " + std::to_string(x.size()) + " exceeds the enumeration cap " +
             std::to_string(std::min(n_max, 30)));
  if (w && w->depth() > x.size())
    fail(ErrorKind::malformed_weight, "weight sign depth exceeds the coefficient count");
}

// Reflected Gray code over all 2^n sign patterns. The visitor gets the sign
// mask (bit i set means r_{i+1} = -1), the current weight-table index, and
// the pattern sum. Consecutive patterns differ in exactly one coordinate, so
// the sum is updated with one compensated addition per pattern.
template <class Sum, class F>
void for_each_pattern(const std::vector<Sum>& x, int weight_depth, F&& visit) {
  const int n = static_cast<int>(x.size());
  const int k = weight_depth;
  NeumaierSum sf;
  int128 si = 0;
  if constexpr (std::is_same_v<Sum, double>) {
    for (double v : x) sf.add(v);
  } else {
    for (int128 v : x) si += v;
  }
  std::uint32_t mask = 0, widx = 0;
  if constexpr (std::is_same_v<Sum, double>)
    visit(mask, widx, sf.value());
  else
    visit(mask, widx, si);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int j = std::countr_zero(i);
    mask ^= std::uint32_t{1} << j;
    const bool now_negative = (mask >> j) & 1u;
    if constexpr (std::is_same_v<Sum, double>) {
      sf.add(now_negative ? -2.0 * x[j] : 2.0 * x[j]);
    } else {
      si += now_negative ? -2 * x[j] : 2 * x[j];
    }
    if (j < k) widx ^= std::uint32_t{1} << (k - 1 - j);
    if constexpr (std::is_same_v<Sum, double>)
      visit(mask, widx, sf.value());
    else
      visit(mask, widx, si);
  }
}

// |v|^p with a by-squaring fast path for integral p.
struct AbsPower {
  explicit AbsPower(double p) : p_(p) {
    double ip = 0.0;
    integral_ = std::modf(p, &ip) == 0.0 && ip >= 1.0 && ip <= 64.0;
    ipow_ = integral_ ? static_cast<int>(ip) : 0;
  }
  double operator()(double v) const {
    v = std::fabs(v);
    if (!integral_) return std::pow(v, p_);
    double r = 1.0, b = v;
    for (int e = ipow_; e != 0; e >>= 1) {
      if (e & 1) r *= b;
      b *= b;
    }
    return r;
  }
  double p_;
  bool integral_;
  int ipow_;
};

int128 iabs(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string fraction_string(int128 num, int128 den) {
  int128 g = gcd128(num, den);
  if (g == 0) g = 1;
  return i128_to_string(num / g) + "/" + i128_to_string(den / g);
}

double ratio_to_double(int128 num, int128 den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

// Everything needed to run one enumeration fully on the integer grid.
struct ExactPlan {
  bool ok = false;
  const std::vector<int128>* coeff = nullptr;
  int coeff_exp = 0;
  std::vector<int128> table{1};
  int table_exp = 0;
  std::vector<int128> atom_val{1};
  int atom_exp = 0;
  std::vector<int128> atom_prob{1};
  int prob_exp = 0;
  int depth = 0;
  int128 max_product = 0; // bound on |table * atom * S|
  int128 prob_denominator = 0;
};

ExactPlan make_exact_plan(const CoefficientVector& x, const WeightSpec* w) {
  ExactPlan plan;
  if (!x.exact() || (w && !w->exact())) return plan;
  plan.coeff = &x.scaled();
  plan.coeff_exp = x.exp10();

  if (w) {
    plan.depth = w->depth();
    if (!common_scale(w->table(), plan.table, plan.table_exp)) return plan;
    std::vector<Decimal> vals, probs;
    for (const auto& a : w->atoms()) {
      vals.push_back(a.value);
      probs.push_back(a.prob);
    }
    if (!common_scale(vals, plan.atom_val, plan.atom_exp)) return plan;
    if (!common_scale(probs, plan.atom_prob, plan.prob_exp)) return plan;
  }

  int128 max_sum = 0;
  for (int128 v : *plan.coeff) max_sum += iabs(v);
  int128 max_table = 0, max_atom = 0;
  for (int128 v : plan.table) max_table = std::max(max_table, iabs(v));
  for (int128 v : plan.atom_val) max_atom = std::max(max_atom, iabs(v));

  auto m1 = checked_mul(max_table, max_atom);
  if (!m1) return plan;
  auto m2 = checked_mul(*m1, max_sum);
  if (!m2) return plan;
  plan.max_product = *m2;

  auto den10 = checked_pow10(1, plan.prob_exp);
  if (!den10) return plan;
  auto den = checked_mul(*den10, int128{1} << x.size());
  if (!den) return plan;
  plan.prob_denominator = *den;

  plan.ok = true;
  return plan;
}

} // namespace

MomentReport exact_moment(const CoefficientVector& x, double p, const WeightSpec* w, int n_max) {
  if (!(p > 0.0)) fail(ErrorKind::bad_argument, "moment exponent p must be positive");
  check_dims(x, w, n_max);

  const AbsPower powp(p);
  NeumaierSum acc;
  if (!w) {
    for_each_pattern(x.values(), 0,
                     [&](std::uint32_t, std::uint32_t, double s) { acc.add(powp(s)); });
  } else {
    std::vector<double> table;
    for (const auto& v : w->table()) table.push_back(v.value);
    std::vector<double> av, ap;
    for (const auto& a : w->atoms()) {
      av.push_back(a.value.value);
      ap.push_back(a.prob.value);
    }
    const std::size_t n_atoms = av.size();
    for_each_pattern(x.values(), w->depth(), [&](std::uint32_t, std::uint32_t widx, double s) {
      const double base = table[widx];
      for (std::size_t a = 0; a < n_atoms; ++a) acc.add(ap[a] * powp(base * av[a] * s));
    });
  }

  MomentReport report;
  report.p = p;
  report.absolute_moment = std::ldexp(acc.value(), -x.size());
  if (report.absolute_moment < 0.0) report.absolute_moment = 0.0;
  report.norm = report.absolute_moment == 0.0 ? 0.0 : std::pow(report.absolute_moment, 1.0 / p);
  report.second_norm = x.norm2();
  report.method = MomentMethod::exact;
  report.standard_error = 0.0;
  report.sample_count = 0;
  return report;
}

Distribution exact_distribution(const CoefficientVector& x, const WeightSpec* w, int n_max) {
  check_dims(x, w, n_max);
  const int n = x.size();
  Distribution dist;

  ExactPlan plan = make_exact_plan(x, w);
  if (plan.ok) {
    struct Cell {
      int128 value;
      int128 num;
    };
    std::vector<Cell> cells;
    cells.reserve((std::size_t{1} << n) * plan.atom_val.size());
    const std::size_t n_atoms = plan.atom_val.size();
    for_each_pattern(*plan.coeff, plan.depth, [&](std::uint32_t, std::uint32_t widx, int128 s) {
      const int128 base = plan.table[widx];
      for (std::size_t a = 0; a < n_atoms; ++a)
        cells.push_back({base * plan.atom_val[a] * s, plan.atom_prob[a]});
    });
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.value < b.value; });
    const int exp_total = plan.table_exp + plan.atom_exp + plan.coeff_exp;
    const double scale = std::pow(10.0, -exp_total);
    dist.exact = true;
    for (std::size_t i = 0; i < cells.size();) {
      int128 v = cells[i].value, num = 0;
      while (i < cells.size() && cells[i].value == v) num += cells[i++].num;
      DistributionEntry e;
      e.value = static_cast<double>(v) * scale;
      e.prob = ratio_to_double(num, plan.prob_denominator);
      e.exact_prob = fraction_string(num, plan.prob_denominator);
      dist.entries.push_back(std::move(e));
    }
    return dist;
  }

  std::vector<double> table{1.0}, av{1.0}, ap{1.0};
  int depth = 0;
  if (w) {
    table.clear();
    av.clear();
    ap.clear();
    for (const auto& v : w->table()) table.push_back(v.value);
    for (const auto& a : w->atoms()) {
      av.push_back(a.value.value);
      ap.push_back(a.prob.value);
    }
    depth = w->depth();
  }
  struct Cell {
    double value;
    double prob;
  };
  std::vector<Cell> cells;
  cells.reserve((std::size_t{1} << n) * av.size());
  const double pattern_prob = std::ldexp(1.0, -n);
  for_each_pattern(x.values(), depth, [&](std::uint32_t, std::uint32_t widx, double s) {
    const double base = table[widx];
    for (std::size_t a = 0; a < av.size(); ++a)
      cells.push_back({base * av[a] * s, pattern_prob * ap[a]});
  });
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.value < b.value; });
  dist.exact = false;
  std::size_t i = 0;
  while (i < cells.size()) {
    double v = cells[i].value;
    NeumaierSum prob;
    while (i < cells.size() && std::fabs(cells[i].value - v) <= 1e-12 * (1.0 + std::fabs(cells[i].value))) {
      prob.add(cells[i].prob);
      ++i;
    }
    dist.entries.push_back({v, prob.value(), {}});
  }
  return dist;
}

ProbabilityResult exact_tail(const CoefficientVector& x, const Decimal& t, bool strict,
                             const WeightSpec* w, int n_max) {
  if (t.value < 0.0 || t.is_negative()) fail(ErrorKind::bad_argument, "tail level t must be >= 0");
  check_dims(x, w, n_max);
  const int n = x.size();

  ExactPlan plan = make_exact_plan(x, w);
  if (plan.ok && t.exact) {
    // Compare |table * atom * S| / 10^E against t by cross-scaling once.
    const int exp_total = plan.table_exp + plan.atom_exp + plan.coeff_exp;
    const int diff = exp_total - t.exp10;
    int128 lhs_factor = 1, rhs = t.mantissa;
    bool scalable = true;
    if (diff >= 0) {
      if (auto r = checked_pow10(t.mantissa, diff))
        rhs = *r;
      else
        scalable = false;
    } else {
      if (auto f = checked_pow10(1, -diff)) {
        lhs_factor = *f;
        if (!checked_mul(plan.max_product, lhs_factor)) scalable = false;
      } else {
        scalable = false;
      }
    }
    if (scalable) {
      int128 num = 0;
      const std::size_t n_atoms = plan.atom_val.size();
      for_each_pattern(*plan.coeff, plan.depth, [&](std::uint32_t, std::uint32_t widx, int128 s) {
        const int128 base = plan.table[widx];
        for (std::size_t a = 0; a < n_atoms; ++a) {
          const int128 lhs = iabs(base * plan.atom_val[a] * s) * lhs_factor;
          const bool in = strict ? lhs > rhs : lhs >= rhs;
          if (in) num += plan.atom_prob[a];
        }
      });
      return {ratio_to_double(num, plan.prob_denominator), true,
              fraction_string(num, plan.prob_denominator)};
    }
  }

  std::vector<double> table{1.0}, av{1.0}, ap{1.0};
  int depth = 0;
  if (w) {
    table.clear();
    av.clear();
    ap.clear();
    for (const auto& v : w->table()) table.push_back(v.value);
    for (const auto& a : w->atoms()) {
      av.push_back(a.value.value);
      ap.push_back(a.prob.value);
    }
    depth = w->depth();
  }
  const double tv = t.value;
  const double zero_tol = 1e-12 * x.max_abs();
  NeumaierSum hits;
  for_each_pattern(x.values(), depth, [&](std::uint32_t, std::uint32_t widx, double s) {
    const double base = table[widx];
    for (std::size_t a = 0; a < av.size(); ++a) {
      double v = std::fabs(base * av[a] * s);
      if (base * av[a] != 0.0 && std::fabs(s) <= zero_tol) v = 0.0;
      bool in;
      if (tv == 0.0) {
        in = strict ? v != 0.0 : true;
      } else if (std::fabs(v - tv) <= 1e-12 * (1.0 + std::max(v, tv))) {
        in = !strict;
      } else {
        in = v > tv;
      }
      if (in) hits.add(ap[a]);
    }
  });
  return {std::ldexp(hits.value(), -n), false, {}};
}

ProbabilityResult exact_tail(const CoefficientVector& x, double t, bool strict, const WeightSpec* w,
                             int n_max) {
  return exact_tail(x, decimal_from_double(t), strict, w, n_max);
}

ProbabilityResult prob_zero(const CoefficientVector& x, int n_max) {
  check_dims(x, nullptr, n_max);
  const int n = x.size();
  if (x.exact()) {
    int128 zeros = 0;
    for_each_pattern(x.scaled(), 0, [&](std::uint32_t, std::uint32_t, int128 s) {
      if (s == 0) ++zeros;
    });
    const int128 den = int128{1} << n;
    return {ratio_to_double(zeros, den), true, fraction_string(zeros, den)};
  }
  const double zero_tol = 1e-12 * x.max_abs();
  std::uint64_t zeros = 0;
  for_each_pattern(x.values(), 0, [&](std::uint32_t, std::uint32_t, double s) {
    if (std::fabs(s) <= zero_tol) ++zeros;
  });
  return {std::ldexp(static_cast<double>(zeros), -n), false, {}};
}

} // namespace khinlab
