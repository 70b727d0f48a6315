#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfspin/law.hpp"
#include "mfspin/smoothfn.hpp"

namespace mfspin {

struct Perturbation {
  SmoothFunction B;
  int m_star = 1;
};

// Exact law of X_n on {0, ..., n}:
//   P[X_n = k] = exp(n F(k/n) + log C(n, k) [+ n^{1/(2 m_star)} B(k/n)]) / Z_n.
class FiniteGibbs {
 public:
  static FiniteGibbs build(const SmoothFunction& F, std::int64_t n,
                           const std::optional<Perturbation>& perturbation = std::nullopt);
  static FiniteGibbs from_log_weights(std::vector<double> log_weights, std::string description);

  std::int64_t n() const { return n_; }
  const std::vector<double>& log_weights() const { return log_weights_; }
  double log_Z() const { return log_Z_; }
  const std::string& description() const { return description_; }

  double pmf(std::int64_t k) const;
  double cdf(std::int64_t k) const;
  // E[(X/n)^r]
  double moment(int r) const;
  const std::vector<double>& pmf_table() const { return pmf_; }
  const std::vector<double>& cdf_table() const { return cdf_; }

 private:
  FiniteGibbs() = default;
  void finish();

  std::int64_t n_ = 0;
  std::vector<double> log_weights_;
  double log_Z_ = 0.0;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
  std::string description_;
};

struct Window {
  int j = -1;  // maximizer index, -1 if ad hoc
  double a = 0.5;
  double delta = 0.0;
  std::int64_t k_lo = 0;
  std::int64_t k_hi = 0;
};

// k_lo = ceil(n(a - delta)), k_hi = floor(n(a + delta)), clipped to [0, n].
Window make_window(std::int64_t n, double a, double delta, int j = -1);

double window_mass(const FiniteGibbs& G, const Window& w);
// E[|X/n - a|^l | X in window]
double conditional_moment(const FiniteGibbs& G, const Window& w, int l);
// Atoms n^{1/(2m)}(k/n - a) with conditional masses.
DiscreteLaw scaled_conditional_law(const FiniteGibbs& G, const Window& w, int m);
// log of the unnormalized window sum of exp(H_n(k/n)).
double window_partition(const FiniteGibbs& G, const Window& w);

std::vector<std::int64_t> sample(const FiniteGibbs& G, std::uint64_t seed, std::int64_t count);

// (1/n) log C(n,k) - [(1/n) log sqrt(n / (2 pi (n-k) k)) + I(k/n)]
double stirling_residual(std::int64_t n, std::int64_t k);

// Law of X_n by enumerating all 2^n spin vectors (n <= 15).
std::vector<double> brute_force_oracle(const SmoothFunction& F, int n);

// Columns: k, k_over_n, pmf, cdf.
std::string gibbs_csv(const FiniteGibbs& G);

}  // namespace mfspin
