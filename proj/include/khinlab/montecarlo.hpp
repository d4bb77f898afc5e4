#ifndef KHINLAB_MONTECARLO_HPP
#define KHINLAB_MONTECARLO_HPP

#include <cstdint>

#include "khinlab/rademacher.hpp"

namespace khinlab {

// Seeded estimation for dimensions beyond exact reach. Sampling is organized
// in fixed 65536-sample blocks; block i draws from xoshiro256** seeded with
// derive_seed(seed, i) and partial sums merge in block order, so the result
// depends only on (inputs, seed, sample_count). batch_size is an execution
// hint (parallel chunking granularity) and never changes the output.
//
// Per sample: sign bit j of the draw words gives r_{j+1} (LSB first, set bit
// means -1); an independent atom, when present, is picked by inverse CDF on
// one further uniform. Standard errors are normal-approximation only.
struct McConfig {
  std::uint64_t sample_count = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t batch_size = 65536;
};

MomentReport mc_moment(const CoefficientVector& x, double p, const WeightSpec* w,
                       const McConfig& cfg);

struct McTail {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t sample_count = 0;
};

McTail mc_tail(const CoefficientVector& x, double t, bool strict, const WeightSpec* w,
               const McConfig& cfg);

} // namespace khinlab

#endif
