#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace mfspin {

// Finite law on the real line; atoms sorted ascending, masses sum to one.
struct DiscreteLaw {
  std::vector<double> atoms;
  std::vector<double> masses;

  double cdf(double x) const;        // P[X <= x]
  double cdf_below(double x) const;  // P[X < x]
  double mean() const;
};

// Normalizes and sorts; merges equal atoms.
DiscreteLaw make_discrete(std::vector<double> atoms, std::vector<double> masses);
DiscreteLaw empirical_law(std::vector<double> samples);

// Law with a cdf that is continuous except at listed jump points.
struct ContinuousLaw {
  std::function<double(double)> cdf;
  // Optional density; used to speed up distance integrals.
  std::function<double(double)> pdf;
  // Optional partial first moment x -> E[X; X <= x].
  std::function<double(double)> partial_mean;
  double lo = -1e300;  // cdf(lo) is 0 to within 1e-12
  double hi = 1e300;   // cdf(hi) is 1 to within 1e-12
  // Jumps: location and the left limit cdf(x-).
  std::vector<double> jumps;
  std::vector<double> left_limits;
};

}  // namespace mfspin
