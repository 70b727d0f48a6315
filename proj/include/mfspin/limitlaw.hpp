#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "mfspin/landscape.hpp"
#include "mfspin/law.hpp"

namespace mfspin {

// q = int exp(c x^{2m} + b x) dx, c < 0.
double normalizer(double c, int m, double b);
double log_normalizer(double c, int m, double b);

struct TiltMoments {
  double log_q;
  double mean;
};
// log q and the mean of the tilted law, without building tables.
TiltMoments tilt_moments(double c, int m, double b);

// Law with density proportional to exp(c x^{2m} + b x).
class TiltedLaw {
 public:
  TiltedLaw(double c, int m, double b);

  double c() const { return c_; }
  int m() const { return m_; }
  double b() const { return b_; }
  double q() const;
  double log_q() const { return log_q_; }
  double lo() const { return -radius_; }
  double hi() const { return radius_; }

  double pdf(double x) const;
  double cdf(double x) const;
  // E[Y; Y <= x]
  double partial_mean(double x) const;
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double quantile(double u) const;
  // Inverse-cdf sampling on a cached monotone cubic table of the quantile.
  std::vector<double> sample(std::uint64_t seed, std::int64_t count) const;
  ContinuousLaw as_law() const;

 private:
  struct Tables;
  double c_;
  int m_;
  double b_;
  double shift_;  // maximum of the exponent
  double radius_;
  double log_q_;
  double mean_;
  double variance_;
  std::shared_ptr<const Tables> tables_;

  double kernel(double x) const;  // exp(c x^{2m} + b x - shift)
};

// Law of sign * |Z|, Z ~ N(0, variance).
class HalfNormal {
 public:
  HalfNormal(int sign, double variance);
  double cdf(double x) const;
  double quantile(double u) const;
  std::vector<double> sample(std::uint64_t seed, std::int64_t count) const;
  ContinuousLaw as_law() const;

 private:
  int sign_;
  double sd_;
};

// p_j proportional to q_j e^{nu_j} over J2; pairs (j, p_j).
std::vector<std::pair<int, double>> mixture_weights(const Landscape& L,
                                                     const PerturbationSets& S);

struct MleTerm {
  int j;
  double a;
  double c;
  int m;
  double nu;
  double fprime;
  double p;  // unperturbed weight of the maximizer
};

// Limit law of the rescaled MLE error.
class MleLimit {
 public:
  MleLimit(std::vector<MleTerm> neg, std::vector<MleTerm> pos);

  const std::vector<MleTerm>& negative_terms() const { return neg_; }
  const std::vector<MleTerm>& positive_terms() const { return pos_; }
  double p_negative() const { return p_neg_; }  // P[U < 0]
  double p_positive() const { return p_pos_; }  // P[U > 0]
  double atom0() const { return atom0_; }

  double cdf(double t) const;  // P[U <= t]
  // Tilted mean sums e_-(t) for t < 0 and e_+(t) for t > 0.
  double tilt_drift(double t) const;
  ContinuousLaw as_law() const;

 private:
  std::vector<MleTerm> neg_, pos_;
  std::vector<TiltedLaw> neg_y_, pos_y_;
  double p_neg_ = 0.0, p_pos_ = 0.0, atom0_ = 0.0;
};

// Builds U for the estimated direction f at the landscape of the true model.
// Fails with a hypothesis error when some relevant maximizer has a vanishing
// f' or lies outside J_star.
MleLimit mle_limit(const Landscape& L, const SmoothFunction& f);

}  // namespace mfspin
