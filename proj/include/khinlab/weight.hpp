#ifndef KHINLAB_WEIGHT_HPP
#define KHINLAB_WEIGHT_HPP

#include <string>
#include <vector>

#include "khinlab/decimal.hpp"

namespace khinlab {

struct WeightAtom {
  Decimal value; // >= 0
  Decimal prob;  // > 0
};

// Discrete model of a nonnegative random weight w on the Rademacher space:
// w = table[first k signs] * (independent atom layer). A purely independent
// weight is stored with depth 0 and table {1}; a pure sign function carries
// the single aux atom (1, 1).
//
// Table order is lexicographic in the sign pattern with + before -, so for
// k = 2 the entries correspond to (++, +-, -+, --) and r_1 is the most
// significant index bit.
class WeightSpec {
public:
  static WeightSpec independent(std::vector<WeightAtom> atoms);
  static WeightSpec sign_function(int depth, std::vector<Decimal> table,
                                  std::vector<WeightAtom> aux = {});
  // Constant weight w == 1 (the unweighted case).
  static WeightSpec unit();

  int depth() const { return depth_; }
  const std::vector<Decimal>& table() const { return table_; }
  const std::vector<WeightAtom>& atoms() const { return atoms_; }
  bool sign_dependent() const { return depth_ > 0; }

  // All values and probabilities carried as exact decimals.
  bool exact() const { return exact_; }

  // Weight values scaled by c > 0 (probabilities untouched).
  WeightSpec scaled(double c) const;

private:
  WeightSpec() = default;
  void validate() const;

  int depth_ = 0;
  std::vector<Decimal> table_;    // 2^depth entries
  std::vector<WeightAtom> atoms_; // at least one
  bool exact_ = false;
};

// Marginal distribution of w (merged equal values, ascending).
struct WeightDistribution {
  struct Entry {
    double value;
    double prob;
    Decimal exact_value; // meaningful when `exact`
  };
  std::vector<Entry> entries;
  bool exact = false;

  double survival(double delta) const;      // P(w > delta)
  double mass_at_least(double value) const; // P(w >= value)
};

WeightDistribution weight_distribution(const WeightSpec& w);

struct WeightStats {
  double s;      // P(w != 0)
  double norm_q; // (E w^q)^(1/q)
  WeightDistribution dist;
};

// q > 0 required.
WeightStats weight_stats(const WeightSpec& w, double q);

// Largest atom value v > 0 with P(w >= v) >= tau; the proof's quantile
// delta_0. Throws no_valid_delta when tau exceeds P(w != 0).
double delta0(const WeightSpec& w, double tau);

} // namespace khinlab

#endif
