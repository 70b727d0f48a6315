#pragma once

#include <cstdint>
#include <span>

namespace mfspin {

// Fixed-shape pairwise summation; the reduction order depends only on the
// input length, so results are bit-stable across runs.
double pairwise_sum(std::span<const double> values);

// log(sum exp(values)) with max shift and pairwise reduction.
double log_sum_exp(std::span<const double> values);

double log_binomial(std::int64_t n, std::int64_t k);

double normal_cdf(double x);
double normal_quantile(double u);

// SplitMix64. Small, seedable and splittable: replicate streams are derived
// by mixing (seed ^ index) so Monte Carlo output does not depend on
// scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z);
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1).
  double open_uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace mfspin
