#include "mfspin/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfspin/error.hpp"

namespace mfspin {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

namespace {

double shifted_exp_sum(std::span<const double> values, double shift) {
  const std::size_t n = values.size();
  if (n <= 16) {
    double s = 0.0;
    for (double v : values) s += std::exp(v - shift);
    return s;
  }
  const std::size_t half = n / 2;
  return shifted_exp_sum(values.subspan(0, half), shift) +
         shifted_exp_sum(values.subspan(half), shift);
}

}  // namespace

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  return top + std::log(shifted_exp_sum(values, top));
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) fail(ErrorCode::index, "log_binomial: k outside [0, n]");
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) fail(ErrorCode::domain, "normal_quantile: u must lie in (0, 1)");
  // Bracket then Newton-bisection on the cdf.
  double lo = -40.0, hi = 40.0;
  double x = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double f = normal_cdf(x) - u;
    if (f > 0) hi = x; else lo = x;
    const double dens = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    double next = dens > 0 ? x - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

std::uint64_t Rng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

}  // namespace mfspin
