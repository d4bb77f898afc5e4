#include "khinlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "khinlab/errors.hpp"
#include "khinlab/kahan.hpp"
#include "khinlab/rng.hpp"

namespace khinlab {

namespace {

constexpr std::uint64_t kBlock = 65536;

struct SampleSetup {
  const std::vector<double>* coeff;
  std::vector<double> table{1.0};
  std::vector<double> atom_val{1.0};
  std::vector<double> atom_cdf{1.0};
  int depth = 0;
  int n = 0;
  bool has_aux = false;
};

SampleSetup make_setup(const CoefficientVector& x, const WeightSpec* w) {
  SampleSetup s;
  s.coeff = &x.values();
  s.n = x.size();
  if (w) {
    if (w->depth() > x.size())
      fail(ErrorKind::malformed_weight, "weight sign depth exceeds the coefficient count");
    s.depth = w->depth();
    s.table.clear();
    for (const auto& v : w->table()) s.table.push_back(v.value);
    s.atom_val.clear();
    s.atom_cdf.clear();
    double cum = 0.0;
    for (const auto& a : w->atoms()) {
      s.atom_val.push_back(a.value.value);
      cum += a.prob.value;
      s.atom_cdf.push_back(cum);
    }
    s.has_aux = s.atom_val.size() > 1 || s.atom_val[0] != 1.0;
  }
  return s;
}

// One draw of |w * xi|.
double draw_abs_value(const SampleSetup& s, Xoshiro256StarStar& rng) {
  const int n = s.n;
  const std::vector<double>& x = *s.coeff;
  double sum = 0.0;
  std::uint32_t widx = 0;
  std::uint64_t word = 0;
  for (int i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng.next();
    const bool negative = (word >> (i % 64)) & 1u;
    sum += negative ? -x[i] : x[i];
    if (i < s.depth && negative) widx |= std::uint32_t{1} << (s.depth - 1 - i);
  }
  double weight = s.table[widx];
  if (s.has_aux) {
    const double u = rng.next_unit();
    std::size_t a = 0;
    while (a + 1 < s.atom_cdf.size() && u >= s.atom_cdf[a]) ++a;
    weight *= s.atom_val[a];
  }
  return std::fabs(weight * sum);
}

template <class PerSample>
void run_blocks(std::uint64_t sample_count, std::uint64_t seed, NeumaierSum& sum,
                NeumaierSum& sum_sq, PerSample&& value_of) {
  const std::uint64_t blocks = (sample_count + kBlock - 1) / kBlock;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    Xoshiro256StarStar rng(derive_seed(seed, b));
    const std::uint64_t lo = b * kBlock;
    const std::uint64_t hi = std::min(sample_count, lo + kBlock);
    NeumaierSum part, part_sq;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double y = value_of(rng);
      part.add(y);
      part_sq.add(y * y);
    }
    sum.merge(part);
    sum_sq.merge(part_sq);
  }
}

double standard_error(double sum, double sum_sq, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double mean = sum / static_cast<double>(n);
  double var = (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
  if (var < 0.0) var = 0.0;
  return std::sqrt(var / static_cast<double>(n));
}

} // namespace

MomentReport mc_moment(const CoefficientVector& x, double p, const WeightSpec* w,
                       const McConfig& cfg) {
  if (!(p > 0.0)) fail(ErrorKind::bad_argument, "moment exponent p must be positive");
  if (cfg.sample_count == 0) fail(ErrorKind::bad_argument, "sample_count must be >= 1");

  const SampleSetup setup = make_setup(x, w);
  NeumaierSum sum, sum_sq;
  run_blocks(cfg.sample_count, cfg.seed, sum, sum_sq,
             [&](Xoshiro256StarStar& rng) { return std::pow(draw_abs_value(setup, rng), p); });

  MomentReport rep;
  rep.p = p;
  rep.absolute_moment = sum.value() / static_cast<double>(cfg.sample_count);
  if (rep.absolute_moment < 0.0) rep.absolute_moment = 0.0;
  rep.norm = rep.absolute_moment == 0.0 ? 0.0 : std::pow(rep.absolute_moment, 1.0 / p);
  rep.second_norm = x.norm2();
  rep.method = MomentMethod::monte_carlo;
  rep.standard_error = standard_error(sum.value(), sum_sq.value(), cfg.sample_count);
  rep.sample_count = cfg.sample_count;
  return rep;
}

McTail mc_tail(const CoefficientVector& x, double t, bool strict, const WeightSpec* w,
               const McConfig& cfg) {
  if (t < 0.0) fail(ErrorKind::bad_argument, "tail level t must be >= 0");
  if (cfg.sample_count == 0) fail(ErrorKind::bad_argument, "sample_count must be >= 1");

  const SampleSetup setup = make_setup(x, w);
  NeumaierSum sum, sum_sq;
  run_blocks(cfg.sample_count, cfg.seed, sum, sum_sq, [&](Xoshiro256StarStar& rng) {
    const double v = draw_abs_value(setup, rng);
    const bool in = strict ? v > t : v >= t;
    return in ? 1.0 : 0.0;
  });

  McTail tail;
  const double n = static_cast<double>(cfg.sample_count);
  tail.estimate = sum.value() / n;
  double phat = std::clamp(tail.estimate, 0.0, 1.0);
  tail.standard_error = std::sqrt(phat * (1.0 - phat) / n);
  tail.sample_count = cfg.sample_count;
  return tail;
}

} // namespace khinlab
