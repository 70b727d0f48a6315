#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfspin/landscape.hpp"
#include "mfspin/mle.hpp"
#include "mfspin/smoothfn.hpp"

namespace mfspin {

// A parameter entering F linearly: F = fixed + sum_i value_i * f_i.
struct Direction {
  std::string name;
  double value;
  SmoothFunction f;
};

struct ExpectedMaximizer {
  double a;
  int m;
};

struct ModelSpec {
  std::string name;
  SmoothFunction F = constant_function(0.0);
  std::map<std::string, double> parameters;
  std::vector<Direction> directions;
  std::optional<SmoothFunction> fixed;  // part of F not covered by directions
  std::vector<ExpectedMaximizer> expected;
};

// MLE problem for one linear parameter of a model at size n.
MleProblem mle_problem(const ModelSpec& spec, const std::string& parameter, std::int64_t n);

// beta (2a-1)^p + h (2a-1)
ModelSpec p_spin(int p, double beta, double h);
// beta (2a-1)^3 + h (2a-1)^2
ModelSpec cubic(double beta, double h);
// beta (2a-1)^4 + h (2a-1)^2
ModelSpec four_spin(double beta, double h);
ModelSpec six_spin();
// 2 h a + d g_beta(a)
ModelSpec annealed_ising(int d, double beta, double h);
ModelSpec inline_model(const std::vector<SpinTerm>& terms);

enum class PSpinRegion { R1, R2, R3 };
PSpinRegion p_spin_region(int p, double beta, double h);
const char* region_name(PSpinRegion r);

double beta_c(int d);

// Six-spin constants at t* = 0.9.
struct SixSpinConstants {
  double t_star, beta, h;
};
SixSpinConstants six_spin_constants(double t_star = 0.9);

namespace four_spin_aux {
double q(double s);
double r(double s);
double g_beta_t(double beta, double t);
double ghat_beta_t(double beta, double t);
double g(double beta);
double ghat(double beta);
}  // namespace four_spin_aux

enum class FourSpinRegion { R1, R2, R3, R4, special };
const char* region_name(FourSpinRegion r);

struct FourSpinPhase {
  double beta;
  double h;
  double boundary;  // g(beta)
  FourSpinRegion region;
  // Region implied by the maximizer structure of A, when cross-checked.
  std::optional<FourSpinRegion> landscape_region;
};

FourSpinPhase four_spin_region(double beta, double h, bool cross_check = true);
// Region read off a landscape: count of maximizers and their orders.
FourSpinRegion four_spin_region_from_landscape(const Landscape& L);

// h = g(beta) on the cubic coexistence curve.
double cubic_boundary(double beta);

}  // namespace mfspin
