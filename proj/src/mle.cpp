#include "mfspin/mle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "mfspin/error.hpp"
#include "mfspin/gibbs.hpp"
#include "mfspin/landscape.hpp"
#include "mfspin/metrics.hpp"
#include "mfspin/numeric.hpp"

namespace mfspin {

MleEngine::MleEngine(const MleProblem& problem) : problem_(problem) {
  const std::int64_t n = problem.n;
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be at least 1");
  base_.resize(n + 1);
  fk_.resize(n + 1);
  const double dn = static_cast<double>(n);
  for (std::int64_t k = 0; k <= n; ++k) {
    const double a = k / dn;
    base_[k] = dn * problem.g.eval(a, 0) + log_binomial(n, k);
    fk_[k] = problem.f.eval(a, 0);
  }
  const auto [lo, hi] = std::minmax_element(fk_.begin(), fk_.end());
  if (*hi - *lo <= 1e-14 * std::max(1.0, std::fabs(*hi)))
    fail(ErrorCode::invalid_argument, "f is constant on the lattice; beta is not identifiable");
}

std::pair<double, double> MleEngine::moments(double beta) const {
  const double dn = static_cast<double>(problem_.n);
  std::vector<double> lw(base_.size());
  for (std::size_t k = 0; k < lw.size(); ++k) lw[k] = base_[k] + beta * dn * fk_[k];
  const double lz = log_sum_exp(lw);
  std::vector<double> m1(lw.size()), m2(lw.size());
  for (std::size_t k = 0; k < lw.size(); ++k) {
    const double p = std::exp(lw[k] - lz);
    m1[k] = p * fk_[k];
    m2[k] = p;
  }
  const double mean = pairwise_sum(m1);
  for (std::size_t k = 0; k < lw.size(); ++k) {
    const double d = fk_[k] - mean;
    m2[k] *= d * d;
  }
  return {mean, pairwise_sum(m2)};
}

double MleEngine::u(double beta) const { return moments(beta).first; }

double MleEngine::du(double beta) const {
  return static_cast<double>(problem_.n) * moments(beta).second;
}

std::pair<double, double> MleEngine::range(double b_max) const {
  return {u(-b_max), u(b_max)};
}

double MleEngine::estimate(std::int64_t k) const {
  if (k < 0 || k > problem_.n) fail(ErrorCode::index, "observed k outside [0, n]");
  const double y = fk_[k];
  double b = 50.0;
  double lo = -b, hi = b;
  double ulo = u(lo), uhi = u(hi);
  while (!(ulo < y && y < uhi) && b < 1024.0) {
    b *= 2.0;
    lo = -b;
    hi = b;
    ulo = u(lo);
    uhi = u(hi);
  }
  if (!(ulo < y && y < uhi)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "f(k/n) = %.12g is outside the attainable range (%.12g, %.12g) of u",
                  y, ulo, uhi);
    fail(ErrorCode::unbracketable, buf);
  }
  // Newton on the monotone map u, kept inside the bracket.
  double x = 0.0;
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const auto [mean, var] = moments(x);
    const double r = mean - y;
    if (std::fabs(r) < 1e-10) return x;
    if (r < 0.0) lo = x; else hi = x;
    const double slope = static_cast<double>(problem_.n) * var;
    double next = slope > 0.0 ? x - r / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || hi - lo < 1e-15 * std::max(1.0, std::fabs(x))) return next;
    x = next;
  }
  return x;
}

double u_of_beta(const MleProblem& problem, double beta) { return MleEngine(problem).u(beta); }

double estimate(const MleProblem& problem, std::int64_t k) {
  return MleEngine(problem).estimate(k);
}

MleExperiment mc_experiment(const MleProblem& problem, std::int64_t reps, std::uint64_t seed) {
  if (reps < 1) fail(ErrorCode::invalid_argument, "reps must be at least 1");
  MleExperiment ex;
  ex.n = problem.n;
  const SmoothFunction F = combine({{problem.true_beta, problem.f}, {1.0, problem.g}});
  const Landscape L = find_maximizers(build_A(F));
  ex.m_star = L.m_star;
  ex.limit = mle_limit(L, problem.f);
  const double dn = static_cast<double>(problem.n);
  ex.scale = std::pow(dn, 1.0 - 1.0 / (2.0 * ex.m_star));

  const FiniteGibbs G = FiniteGibbs::build(F, problem.n);
  const MleEngine engine(problem);
  const auto& cdf = G.cdf_table();
  std::map<std::int64_t, std::optional<double>> cache;
  for (std::int64_t r = 0; r < reps; ++r) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(r));
    const double u = rng.uniform();
    const std::int64_t k = std::min<std::int64_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(), problem.n);
    ex.observed.push_back(k);
    auto it = cache.find(k);
    if (it == cache.end()) {
      std::optional<double> b;
      try {
        b = engine.estimate(k);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::unbracketable) throw;
      }
      it = cache.emplace(k, b).first;
    }
    ex.estimates.push_back(it->second ? *it->second : std::nan(""));
    if (it->second)
      ex.rescaled.push_back((*it->second - problem.true_beta) * ex.scale);
    else
      ++ex.failures;
  }
  ex.failure_fraction = static_cast<double>(ex.failures) / static_cast<double>(reps);
  if (!ex.rescaled.empty())
    ex.d_K = d_K(empirical_law(ex.rescaled), ex.limit->as_law());
  return ex;
}

}  // namespace mfspin
