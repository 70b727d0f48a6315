#include "mfspin/law.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfspin/error.hpp"
#include "mfspin/numeric.hpp"

namespace mfspin {

DiscreteLaw make_discrete(std::vector<double> atoms, std::vector<double> masses) {
  if (atoms.size() != masses.size() || atoms.empty())
    fail(ErrorCode::invalid_argument, "discrete law needs matching nonempty atoms and masses");
  std::vector<std::size_t> idx(atoms.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return atoms[i] < atoms[j]; });
  DiscreteLaw law;
  for (std::size_t i : idx) {
    if (!(masses[i] >= 0.0) || !std::isfinite(atoms[i]))
      fail(ErrorCode::invalid_argument, "discrete law needs finite atoms and nonnegative masses");
    if (!law.atoms.empty() && law.atoms.back() == atoms[i]) {
      law.masses.back() += masses[i];
    } else {
      law.atoms.push_back(atoms[i]);
      law.masses.push_back(masses[i]);
    }
  }
  const double total = pairwise_sum(law.masses);
  if (!(total > 0.0)) fail(ErrorCode::invalid_argument, "discrete law has zero total mass");
  for (double& m : law.masses) m /= total;
  return law;
}

DiscreteLaw empirical_law(std::vector<double> samples) {
  std::vector<double> w(samples.size(), 1.0);
  return make_discrete(std::move(samples), std::move(w));
}

double DiscreteLaw::cdf(double x) const {
  const auto it = std::upper_bound(atoms.begin(), atoms.end(), x);
  double s = 0.0;
  for (auto i = atoms.begin(); i != it; ++i) s += masses[i - atoms.begin()];
  return std::min(s, 1.0);
}

double DiscreteLaw::cdf_below(double x) const {
  const auto it = std::lower_bound(atoms.begin(), atoms.end(), x);
  double s = 0.0;
  for (auto i = atoms.begin(); i != it; ++i) s += masses[i - atoms.begin()];
  return std::min(s, 1.0);
}

double DiscreteLaw::mean() const {
  std::vector<double> t(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) t[i] = atoms[i] * masses[i];
  return pairwise_sum(t);
}

}  // namespace mfspin
