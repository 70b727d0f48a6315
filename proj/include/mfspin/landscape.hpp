#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfspin/smoothfn.hpp"

namespace mfspin {

struct Maximizer {
  double a = 0.0;
  int m = 1;         // regularity order is 2m
  double c = 0.0;    // A^(2m)(a) / (2m)!
  double nu = 0.0;   // -log(a(1-a)) / 2
  double value = 0.0;
};

struct Landscape {
  std::vector<Maximizer> maximizers;
  int m_star = 1;
  double delta_star = 0.0;
  std::vector<int> J_star;
  double scale = 1.0;
  std::vector<std::string> warnings;
};

struct PerturbationSets {
  std::vector<int> J1;
  std::vector<int> J2;
  std::vector<double> b;  // one entry per maximizer
};

struct LandscapeOptions {
  int grid_size = 10001;
  double edge = 1e-6;
  double tol_stationary = 1e-10;
  double tol_deriv = 1e-6;
  double tol_value = 1e-9;
};

// A = F + I
SmoothFunction build_A(const SmoothFunction& F);

struct Regularity {
  int m;
  double c;
};

// Smallest m with A^(2m)(a) clearly nonzero; all lower derivatives must be
// below tol_deriv * scale.
Regularity classify_regularity(const SmoothFunction& A, double a, double scale,
                               double tol_deriv = 1e-6);

Landscape find_maximizers(const SmoothFunction& A, const LandscapeOptions& opt = {});

PerturbationSets perturbation_sets(const Landscape& L, const std::optional<SmoothFunction>& B);

// B = 0: J1 = J, J2 = J_star, all b_j = 0.
inline PerturbationSets perturbation_sets(const Landscape& L) {
  return perturbation_sets(L, std::nullopt);
}

}  // namespace mfspin
