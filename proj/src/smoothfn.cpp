#include "mfspin/smoothfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "mfspin/error.hpp"
#include "mfspin/quadrature.hpp"

namespace mfspin {

namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

class CallableImpl final : public FunctionImpl {
 public:
  CallableImpl(std::string label, int order, std::function<double(double, int)> f)
      : label_(std::move(label)), order_(order), f_(std::move(f)) {}
  double eval(double a, int k) const override { return f_(a, k); }
  int max_order() const override { return order_; }
  std::string label() const override { return label_; }

 private:
  std::string label_;
  int order_;
  std::function<double(double, int)> f_;
};

}  // namespace

SmoothFunction::SmoothFunction(std::shared_ptr<const FunctionImpl> impl)
    : impl_(std::move(impl)) {
  if (!impl_) fail(ErrorCode::invalid_argument, "null function implementation");
}

double SmoothFunction::eval(double a, int k) const {
  if (k < 0) fail(ErrorCode::invalid_argument, "negative derivative order");
  if (k > impl_->max_order())
    fail(ErrorCode::order_exceeded,
         "derivative order " + std::to_string(k) + " exceeds max order " +
             std::to_string(impl_->max_order()) + " of " + impl_->label());
  return impl_->eval(a, k);
}

SmoothFunction make_function(std::string label, int max_order,
                             std::function<double(double, int)> eval) {
  return SmoothFunction(
      std::make_shared<CallableImpl>(std::move(label), max_order, std::move(eval)));
}

// ---- polynomial in t = 2a - 1 ----

SpinPolynomial::SpinPolynomial(std::vector<SpinTerm> terms) : terms_(std::move(terms)) {
  std::set<int> seen;
  for (const auto& t : terms_) {
    if (t.power < 1) fail(ErrorCode::invalid_argument, "spin powers must be positive");
    if (!seen.insert(t.power).second)
      fail(ErrorCode::invalid_argument, "duplicate spin power " + std::to_string(t.power));
    if (!std::isfinite(t.coefficient))
      fail(ErrorCode::invalid_argument, "non-finite spin coefficient");
  }
}

double SpinPolynomial::eval_t(double t, int k) const {
  double s = 0.0;
  for (const auto& term : terms_) {
    if (k > term.power) continue;
    double falling = 1.0;
    for (int i = 0; i < k; ++i) falling *= term.power - i;
    s += term.coefficient * falling * std::pow(t, term.power - k);
  }
  return s;
}

double SpinPolynomial::eval(double a, int k) const {
  return std::ldexp(eval_t(2.0 * a - 1.0, k), k);
}

SmoothFunction SpinPolynomial::function() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    os << fmt(t.coefficient) << "*(2a-1)^" << t.power;
    first = false;
  }
  if (first) os << "0";
  auto self = *this;
  return make_function(os.str(), kExactOrder,
                       [self](double a, int k) { return self.eval(a, k); });
}

// ---- entropies ----

double binary_entropy(double t, int k) {
  if (k == 0) {
    if (!(t >= -1.0 && t <= 1.0)) fail(ErrorCode::domain, "E(t) needs t in [-1, 1]");
    if (std::fabs(t) < 1e-3) {
      // -E(t) = sum_j t^{2j} / (2j(2j-1))
      const double t2 = t * t;
      double p = t2, s = 0.0;
      for (int j = 1; j <= 6; ++j) {
        s += p / (2.0 * j * (2.0 * j - 1.0));
        p *= t2;
      }
      return -s;
    }
    double v = 0.0;
    if (t > -1.0) v -= 0.5 * (1.0 + t) * std::log1p(t);
    if (t < 1.0) v -= 0.5 * (1.0 - t) * std::log1p(-t);
    return v;
  }
  if (!(t > -1.0 && t < 1.0))
    fail(ErrorCode::domain, "derivatives of E are singular at t = +-1");
  if (k == 1) return -std::atanh(t);
  const double f = factorial(k - 2);
  const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
  return -0.5 * f * (sgn / std::pow(1.0 + t, k - 1) + 1.0 / std::pow(1.0 - t, k - 1));
}

double entropy(double a, int k) {
  if (k == 0) {
    if (!(a >= 0.0 && a <= 1.0)) fail(ErrorCode::domain, "I(a) needs a in [0, 1]");
    if (a == 0.0 || a == 1.0) return 0.0;
    return binary_entropy(2.0 * a - 1.0, 0) + std::log(2.0);
  }
  if (!(a > 0.0 && a < 1.0))
    fail(ErrorCode::domain, "derivatives of I are singular at a = 0 and a = 1");
  return std::ldexp(binary_entropy(2.0 * a - 1.0, k), k);
}

SmoothFunction entropy_function() {
  return make_function("I", kExactOrder, [](double a, int k) { return entropy(a, k); });
}

SmoothFunction binary_entropy_function() {
  return make_function("E", kExactOrder,
                       [](double t, int k) { return binary_entropy(t, k); });
}

SmoothFunction constant_function(double value) {
  return make_function(fmt(value), kExactOrder,
                       [value](double, int k) { return k == 0 ? value : 0.0; });
}

SmoothFunction combine(const std::vector<std::pair<double, SmoothFunction>>& parts) {
  if (parts.empty()) fail(ErrorCode::invalid_argument, "combine needs at least one part");
  int order = parts.front().second.max_order();
  std::string label;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    order = std::min(order, parts[i].second.max_order());
    if (i) label += " + ";
    label += fmt(parts[i].first) + "*[" + parts[i].second.label() + "]";
  }
  return make_function(label, order, [parts](double a, int k) {
    double s = 0.0;
    for (const auto& [c, f] : parts)
      if (c != 0.0) s += c * f.eval(a, k);
    return s;
  });
}

double t_of_a_scaling(const SmoothFunction& f_t, double a, int k) {
  return std::ldexp(f_t.eval(2.0 * a - 1.0, k), k);
}

SmoothFunction from_t(const SmoothFunction& f_t) {
  return make_function(f_t.label() + " at t=2a-1", f_t.max_order(),
                       [f_t](double a, int k) { return t_of_a_scaling(f_t, a, k); });
}

// ---- annealed Ising ----

AnnealedG::AnnealedG(double beta)
    : beta_(beta), e2_(std::exp(-2.0 * beta)), kappa_(std::expm1(-4.0 * beta)) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    fail(ErrorCode::invalid_argument, "annealed model needs beta > 0");
}

double AnnealedG::integrand(double s, int k) const {
  if (!(s >= 0.0 && s <= 1.0)) fail(ErrorCode::domain, "psi(s) needs s in [0, 1]");
  const double w = 1.0 - 2.0 * s;
  const double r = std::sqrt(1.0 + kappa_ * w * w);
  const double n0 = e2_ * w + r;
  const double d = 1.0 - s;
  if (k == 0) return std::log(n0) - std::log(2.0 * d);
  if (d == 0.0) fail(ErrorCode::domain, "psi derivatives are singular at s = 1");
  const double n1 = -2.0 * (e2_ + kappa_ * w / r);
  const double l1 = n1 / n0;
  if (k == 1) return l1 + 1.0 / d;
  const double r3 = r * r * r;
  const double n2 = 4.0 * kappa_ / r3;
  if (k == 2) return n2 / n0 - l1 * l1 + 1.0 / (d * d);
  if (k == 3) {
    const double n3 = 24.0 * kappa_ * kappa_ * w / (r3 * r * r);
    return n3 / n0 - 3.0 * n2 * n1 / (n0 * n0) + 2.0 * l1 * l1 * l1 + 2.0 / (d * d * d);
  }
  fail(ErrorCode::order_exceeded, "psi derivatives are available up to order 3");
}

double AnnealedG::value(double a, int k, Side side) const {
  if (!(a >= 0.0 && a <= 1.0)) fail(ErrorCode::domain, "g_beta(a) needs a in [0, 1]");
  if (k < 0 || k > 4) fail(ErrorCode::order_exceeded, "g_beta derivatives are available up to order 4");
  if (k == 0) {
    const double upper = std::min(a, 1.0 - a);
    if (upper == 0.0) return 0.0;
    return quad::integrate([this](double s) { return integrand(s, 0); }, 0.0, upper, 1e-12)
        .value;
  }
  bool left;
  if (a < 0.5) {
    left = true;
  } else if (a > 0.5) {
    left = false;
  } else {
    if (side == Side::unspecified)
      fail(ErrorCode::side_required, "derivative of g_beta at a = 1/2 needs a side");
    left = side == Side::left;
  }
  if (left) return integrand(a, k - 1);
  const double v = integrand(1.0 - a, k - 1);
  return (k % 2 == 0) ? v : -v;
}

SmoothFunction AnnealedG::function() const {
  auto self = *this;
  return make_function("g_beta(beta=" + fmt(beta_) + ")", 4, [self](double a, int k) {
    if (k >= 1 && a == 0.5) {
      const double l = self.value(a, k, Side::left);
      const double r = self.value(a, k, Side::right);
      if (std::fabs(l - r) > 1e-9 * std::max(1.0, std::fabs(l)))
        fail(ErrorCode::kink, "g_beta derivative of order " + std::to_string(k) +
                                  " differs across a = 1/2 (" + fmt(l) + " vs " + fmt(r) + ")");
      return l;
    }
    return self.value(a, k);
  });
}

}  // namespace mfspin
