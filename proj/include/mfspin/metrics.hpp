#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "mfspin/law.hpp"

namespace mfspin {

using LawHandle = std::variant<DiscreteLaw, ContinuousLaw>;

// sup_t |P[X <= t] - P[Y <= t]|
double d_K(const LawHandle& p, const LawHandle& q);
// int |F_P - F_Q| dx
double d_W(const LawHandle& p, const LawHandle& q);

struct RateFit {
  double slope;
  double intercept;
  double r2;
};

// Least squares of log d against log n.
RateFit rate_fit(const std::vector<std::pair<double, double>>& points);

// Law of a standard-form Gaussian N(mean, variance) as a handle.
ContinuousLaw normal_law(double mean, double variance);

}  // namespace mfspin
