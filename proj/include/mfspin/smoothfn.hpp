#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mfspin {

// Highest derivative order served by the closed-form families.
inline constexpr int kExactOrder = 24;

class FunctionImpl {
 public:
  virtual ~FunctionImpl() = default;
  // k has already been checked against max_order().
  virtual double eval(double a, int k) const = 0;
  virtual int max_order() const = 0;
  virtual std::string label() const = 0;
};

// Immutable handle to a function on [0, 1] with derivatives up to
// max_order(). Cheap to copy; safe to share between threads.
class SmoothFunction {
 public:
  explicit SmoothFunction(std::shared_ptr<const FunctionImpl> impl);

  double eval(double a, int k = 0) const;
  double operator()(double a) const { return eval(a, 0); }
  int max_order() const { return impl_->max_order(); }
  std::string label() const { return impl_->label(); }

 private:
  std::shared_ptr<const FunctionImpl> impl_;
};

struct SpinTerm {
  double coefficient;
  int power;
};

// sum_i coefficient_i * (2a - 1)^power_i
class SpinPolynomial {
 public:
  explicit SpinPolynomial(std::vector<SpinTerm> terms);

  const std::vector<SpinTerm>& terms() const { return terms_; }
  // Derivatives in the spin variable t = 2a - 1.
  double eval_t(double t, int k) const;
  double eval(double a, int k) const;
  SmoothFunction function() const;

 private:
  std::vector<SpinTerm> terms_;
};

// I(a) = -a log a + (a - 1) log(1 - a), with 0 log 0 = 0.
double entropy(double a, int k = 0);
SmoothFunction entropy_function();

// E(t) = -(1+t)/2 log(1+t) - (1-t)/2 log(1-t) on [-1, 1].
double binary_entropy(double t, int k = 0);
// E as a function handle in its own variable t (argument range [-1, 1]).
SmoothFunction binary_entropy_function();

SmoothFunction constant_function(double value);

// Linear combination; max_order is the minimum over the parts.
SmoothFunction combine(const std::vector<std::pair<double, SmoothFunction>>& parts);

// d^k/da^k F_t(2a - 1) = 2^k F_t^(k)(2a - 1).
double t_of_a_scaling(const SmoothFunction& f_t, double a, int k);
// Wraps a t-parameterized function into the a-domain.
SmoothFunction from_t(const SmoothFunction& f_t);

// Escape hatch for tests and ad-hoc models.
SmoothFunction make_function(std::string label, int max_order,
                             std::function<double(double, int)> eval);

enum class Side { unspecified, left, right };

// g_beta(a) = int_0^{min(a, 1-a)} psi(s) ds for the annealed Ising model on
// random regular graphs, with
//   psi(s) = log[(e^{-2 beta}(1-2s) + sqrt(1 + (e^{-4 beta}-1)(1-2s)^2)) / (2(1-s))].
// psi is odd about s = 1/2, so g_beta is smooth across a = 1/2; derivatives
// there are still served one side at a time.
class AnnealedG {
 public:
  explicit AnnealedG(double beta);

  double beta() const { return beta_; }
  // psi and its first three s-derivatives.
  double integrand(double s, int k = 0) const;
  // k in 0..4; at a = 1/2 with k >= 1 a side must be given.
  double value(double a, int k = 0, Side side = Side::unspecified) const;
  // Handle with max_order 4. At a = 1/2 both sides are evaluated and a kink
  // error is raised if they disagree.
  SmoothFunction function() const;

 private:
  double beta_;
  double e2_;     // e^{-2 beta}
  double kappa_;  // e^{-4 beta} - 1
};

}  // namespace mfspin
