#include "mfspin/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mfspin/error.hpp"
#include "mfspin/numeric.hpp"

namespace mfspin {

FiniteGibbs FiniteGibbs::build(const SmoothFunction& F, std::int64_t n,
                               const std::optional<Perturbation>& perturbation) {
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be at least 1");
  if (n > 10'000'000) fail(ErrorCode::invalid_argument, "n above 1e7 is not supported");
  if (perturbation && perturbation->m_star < 1)
    fail(ErrorCode::invalid_argument, "m_star must be at least 1");
  FiniteGibbs G;
  G.n_ = n;
  G.log_weights_.resize(n + 1);
  const double dn = static_cast<double>(n);
  const double tilt =
      perturbation ? std::pow(dn, 1.0 / (2.0 * perturbation->m_star)) : 0.0;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double a = static_cast<double>(k) / dn;
    double h = dn * F.eval(a, 0) + log_binomial(n, k);
    if (perturbation) h += tilt * perturbation->B.eval(a, 0);
    G.log_weights_[k] = h;
  }
  G.description_ = "n=" + std::to_string(n) + " F=" + F.label();
  if (perturbation)
    G.description_ += " B=" + perturbation->B.label() +
                      " m_star=" + std::to_string(perturbation->m_star);
  G.finish();
  return G;
}

FiniteGibbs FiniteGibbs::from_log_weights(std::vector<double> log_weights,
                                          std::string description) {
  if (log_weights.size() < 2) fail(ErrorCode::invalid_argument, "need at least two weights");
  FiniteGibbs G;
  G.n_ = static_cast<std::int64_t>(log_weights.size()) - 1;
  G.log_weights_ = std::move(log_weights);
  G.description_ = std::move(description);
  G.finish();
  return G;
}

void FiniteGibbs::finish() {
  for (double w : log_weights_)
    if (std::isnan(w) || w == INFINITY) fail(ErrorCode::domain, "invalid log weight");
  log_Z_ = log_sum_exp(log_weights_);
  pmf_.resize(log_weights_.size());
  cdf_.resize(log_weights_.size());
  for (std::size_t k = 0; k < pmf_.size(); ++k) pmf_[k] = std::exp(log_weights_[k] - log_Z_);
  // log_Z carries an absolute error of about n * eps; one more pass makes the
  // table sum to one.
  const double total = pairwise_sum(pmf_);
  for (double& p : pmf_) p /= total;
  log_Z_ += std::log(total);
  double s = 0.0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    s += pmf_[k];
    cdf_[k] = std::min(s, 1.0);
  }
}

double FiniteGibbs::pmf(std::int64_t k) const {
  if (k < 0 || k > n_) fail(ErrorCode::index, "k outside [0, n]");
  return pmf_[k];
}

double FiniteGibbs::cdf(std::int64_t k) const {
  if (k < 0 || k > n_) fail(ErrorCode::index, "k outside [0, n]");
  return cdf_[k];
}

double FiniteGibbs::moment(int r) const {
  std::vector<double> t(pmf_.size());
  const double dn = static_cast<double>(n_);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = pmf_[k] * std::pow(k / dn, r);
  return pairwise_sum(t);
}

Window make_window(std::int64_t n, double a, double delta, int j) {
  if (!(delta >= 0.0)) fail(ErrorCode::invalid_argument, "window radius must be nonnegative");
  const double dn = static_cast<double>(n);
  Window w;
  w.j = j;
  w.a = a;
  w.delta = delta;
  w.k_lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(dn * (a - delta))));
  w.k_hi = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor(dn * (a + delta))));
  return w;
}

namespace {

void check_window(const FiniteGibbs& G, const Window& w) {
  if (w.k_lo < 0 || w.k_hi > G.n()) fail(ErrorCode::index, "window outside [0, n]");
  if (w.k_lo > w.k_hi) fail(ErrorCode::empty_window, "window contains no lattice point");
}

}  // namespace

double window_mass(const FiniteGibbs& G, const Window& w) {
  check_window(G, w);
  std::span<const double> p(G.pmf_table().data() + w.k_lo, w.k_hi - w.k_lo + 1);
  return pairwise_sum(p);
}

double conditional_moment(const FiniteGibbs& G, const Window& w, int l) {
  check_window(G, w);
  const double dn = static_cast<double>(G.n());
  // Work relative to the window's largest weight so tiny masses still work.
  std::vector<double> lw(G.log_weights().begin() + w.k_lo,
                         G.log_weights().begin() + w.k_hi + 1);
  const double top = *std::max_element(lw.begin(), lw.end());
  std::vector<double> num(lw.size()), den(lw.size());
  for (std::size_t i = 0; i < lw.size(); ++i) {
    const double p = std::exp(lw[i] - top);
    den[i] = p;
    num[i] = p * std::pow(std::fabs((w.k_lo + static_cast<double>(i)) / dn - w.a), l);
  }
  return pairwise_sum(num) / pairwise_sum(den);
}

DiscreteLaw scaled_conditional_law(const FiniteGibbs& G, const Window& w, int m) {
  check_window(G, w);
  if (m < 1) fail(ErrorCode::invalid_argument, "m must be at least 1");
  const double dn = static_cast<double>(G.n());
  const double s = std::pow(dn, 1.0 / (2.0 * m));
  std::vector<double> lw(G.log_weights().begin() + w.k_lo,
                         G.log_weights().begin() + w.k_hi + 1);
  const double top = *std::max_element(lw.begin(), lw.end());
  std::vector<double> atoms(lw.size()), masses(lw.size());
  for (std::size_t i = 0; i < lw.size(); ++i) {
    atoms[i] = s * ((w.k_lo + static_cast<double>(i)) / dn - w.a);
    masses[i] = std::exp(lw[i] - top);
  }
  return make_discrete(std::move(atoms), std::move(masses));
}

double window_partition(const FiniteGibbs& G, const Window& w) {
  check_window(G, w);
  std::span<const double> lw(G.log_weights().data() + w.k_lo, w.k_hi - w.k_lo + 1);
  return log_sum_exp(lw);
}

std::vector<std::int64_t> sample(const FiniteGibbs& G, std::uint64_t seed, std::int64_t count) {
  if (count < 1) fail(ErrorCode::invalid_argument, "sample count must be positive");
  Rng rng(Rng::mix(seed));
  const auto& c = G.cdf_table();
  std::vector<std::int64_t> out(count);
  for (auto& x : out) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(c.begin(), c.end(), u);
    x = std::min<std::int64_t>(it - c.begin(), G.n());
  }
  return out;
}

double stirling_residual(std::int64_t n, std::int64_t k) {
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be positive");
  const double dn = static_cast<double>(n);
  double dk = static_cast<double>(k);
  if (dk < 0.05 * dn || dk > 0.95 * dn || k <= 0 || k >= n)
    fail(ErrorCode::domain, "k must satisfy 0.05 n <= k <= 0.95 n");
  k = std::min(k, n - k);
  dk = static_cast<double>(k);
  const double a = dk / dn;
  const double lead =
      0.5 * std::log(dn / (2.0 * std::numbers::pi * (dn - dk) * dk)) / dn + entropy(a, 0);
  return log_binomial(n, k) / dn - lead;
}

std::vector<double> brute_force_oracle(const SmoothFunction& F, int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be at least 1");
  if (n > 15) fail(ErrorCode::size, "brute force enumeration is limited to n <= 15");
  const double dn = n;
  std::vector<double> energy(n + 1);
  for (int k = 0; k <= n; ++k) energy[k] = dn * F.eval(k / dn, 0);
  const double top = *std::max_element(energy.begin(), energy.end());
  std::vector<double> law(n + 1, 0.0);
  double total = 0.0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const int k = __builtin_popcount(s);
    const double w = std::exp(energy[k] - top);
    law[k] += w;
    total += w;
  }
  for (double& p : law) p /= total;
  return law;
}

std::string gibbs_csv(const FiniteGibbs& G) {
  std::string out = "k,k_over_n,pmf,cdf\n";
  char buf[128];
  const double dn = static_cast<double>(G.n());
  for (std::int64_t k = 0; k <= G.n(); ++k) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n", static_cast<long long>(k),
                  k / dn, G.pmf(k), G.cdf(k));
    out += buf;
  }
  return out;
}

}  // namespace mfspin
