#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfspin/limitlaw.hpp"
#include "mfspin/smoothfn.hpp"

namespace mfspin {

// Hamiltonian n (beta f + g); beta is the parameter being estimated.
struct MleProblem {
  SmoothFunction f;
  SmoothFunction g;
  std::int64_t n;
  double true_beta = 0.0;
};

// Exact u(beta) = E_beta f(X/n) and its inverse.
class MleEngine {
 public:
  explicit MleEngine(const MleProblem& problem);

  const MleProblem& problem() const { return problem_; }
  double u(double beta) const;
  // d/d beta u = n Var_beta f(X/n)
  double du(double beta) const;
  // Attainable range of u over [-b_max, b_max].
  std::pair<double, double> range(double b_max) const;
  // Solves u(beta) = f(k/n) to 1e-10; unbracketable error if out of reach.
  double estimate(std::int64_t k_observed) const;

 private:
  std::pair<double, double> moments(double beta) const;

  MleProblem problem_;
  std::vector<double> base_;  // n g(k/n) + log C(n, k)
  std::vector<double> fk_;    // f(k/n)
};

double u_of_beta(const MleProblem& problem, double beta);
double estimate(const MleProblem& problem, std::int64_t k_observed);

struct MleExperiment {
  std::int64_t n = 0;
  int m_star = 1;
  double scale = 1.0;               // n^{1 - 1/(2 m_star)}
  std::vector<double> rescaled;     // (beta_hat - beta) * scale, successes only
  std::vector<std::int64_t> observed;
  std::vector<double> estimates;    // per replicate, NaN on failure
  std::int64_t failures = 0;
  double failure_fraction = 0.0;
  std::optional<MleLimit> limit;
  double d_K = 0.0;  // empirical rescaled errors vs the limit law
};

// Monte Carlo of the rescaled estimator error. Refuses with a hypothesis
// error when the limit theorem does not apply.
MleExperiment mc_experiment(const MleProblem& problem, std::int64_t reps, std::uint64_t seed);

}  // namespace mfspin
