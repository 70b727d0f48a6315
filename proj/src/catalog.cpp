#include "mfspin/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "mfspin/error.hpp"

namespace mfspin {

namespace {

SmoothFunction spin_power(int p) { return SpinPolynomial({{1.0, p}}).function(); }

ModelSpec linear_model(std::string name, std::vector<Direction> dirs,
                       std::optional<SmoothFunction> fixed = std::nullopt) {
  ModelSpec spec;
  spec.name = std::move(name);
  std::vector<std::pair<double, SmoothFunction>> parts;
  for (const auto& d : dirs) {
    spec.parameters[d.name] = d.value;
    parts.emplace_back(d.value, d.f);
  }
  if (fixed) parts.emplace_back(1.0, *fixed);
  spec.F = combine(parts);
  spec.directions = std::move(dirs);
  spec.fixed = std::move(fixed);
  return spec;
}

// min over [lo, hi] of fn: grid scan then golden section around the best
// interior node.
double scan_minimum(const std::function<double(double)>& fn, double lo, double hi,
                    int nodes = 2001) {
  std::vector<double> xs(nodes), vs(nodes);
  int best = 0;
  for (int i = 0; i < nodes; ++i) {
    xs[i] = lo + (hi - lo) * i / (nodes - 1);
    vs[i] = fn(xs[i]);
    if (vs[i] < vs[best]) best = i;
  }
  double result = vs[best];
  if (best > 0 && best + 1 < nodes) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = xs[best - 1], b = xs[best + 1];
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = fn(c), fd = fn(d);
    while (b - a > 1e-12) {
      if (fc < fd) {
        b = d; d = c; fd = fc; c = b - g * (b - a); fc = fn(c);
      } else {
        a = c; c = d; fc = fd; d = a + g * (b - a); fd = fn(d);
      }
    }
    result = std::min({result, fc, fd});
  }
  return result;
}

}  // namespace

MleProblem mle_problem(const ModelSpec& spec, const std::string& parameter, std::int64_t n) {
  std::vector<std::pair<double, SmoothFunction>> rest;
  const Direction* target = nullptr;
  for (const auto& d : spec.directions) {
    if (d.name == parameter)
      target = &d;
    else
      rest.emplace_back(d.value, d.f);
  }
  if (!target)
    fail(ErrorCode::unsupported,
         "parameter '" + parameter + "' of model " + spec.name + " cannot be estimated");
  if (spec.fixed) rest.emplace_back(1.0, *spec.fixed);
  SmoothFunction g = rest.empty() ? constant_function(0.0) : combine(rest);
  return MleProblem{target->f, g, n, target->value};
}

ModelSpec p_spin(int p, double beta, double h) {
  if (p < 1) fail(ErrorCode::invalid_argument, "p-spin needs p >= 1");
  if (p == 1) {
    // Both parameters multiply the same function; merge them.
    auto spec = linear_model("p-spin", {{"h", beta + h, spin_power(1)}});
    spec.parameters = {{"p", 1.0}, {"beta", beta}, {"h", h}};
    return spec;
  }
  auto spec = linear_model("p-spin", {{"beta", beta, spin_power(p)}, {"h", h, spin_power(1)}});
  spec.parameters["p"] = p;
  return spec;
}

ModelSpec cubic(double beta, double h) {
  return linear_model("cubic", {{"beta", beta, spin_power(3)}, {"h", h, spin_power(2)}});
}

ModelSpec four_spin(double beta, double h) {
  return linear_model("four-spin", {{"beta", beta, spin_power(4)}, {"h", h, spin_power(2)}});
}

SixSpinConstants six_spin_constants(double t) {
  const double e = binary_entropy(t, 0);
  const double e1 = binary_entropy(t, 1);
  SixSpinConstants k;
  k.t_star = t;
  k.beta = (1.5 * t * t + 5.0 * e - t * e1) / std::pow(t, 6);
  k.h = (-2.0 * t * t - 6.0 * e + t * e1) / std::pow(t, 5);
  return k;
}

ModelSpec six_spin() {
  const auto k = six_spin_constants();
  auto spec = linear_model("six-spin", {{"beta", k.beta, spin_power(6)},
                                        {"h", k.h, spin_power(5)},
                                        {"quadratic", 0.5, spin_power(2)}});
  spec.parameters["t_star"] = k.t_star;
  spec.expected = {{0.5, 2}, {0.5 * (1.0 + k.t_star), 1}};
  return spec;
}

ModelSpec annealed_ising(int d, double beta, double h) {
  if (d < 3) fail(ErrorCode::invalid_argument, "annealed model needs degree d >= 3");
  const AnnealedG g(beta);
  // 2 h a = h (2a - 1) + h
  const SmoothFunction two_a = combine({{1.0, spin_power(1)}, {1.0, constant_function(1.0)}});
  auto spec = linear_model("annealed", {{"h", h, two_a}},
                           combine({{static_cast<double>(d), g.function()}}));
  spec.parameters["d"] = d;
  spec.parameters["beta"] = beta;
  return spec;
}

ModelSpec inline_model(const std::vector<SpinTerm>& terms) {
  if (terms.empty()) fail(ErrorCode::invalid_argument, "inline model needs at least one term");
  (void)SpinPolynomial{terms};  // validates powers
  std::vector<Direction> dirs;
  for (const auto& t : terms)
    dirs.push_back({"t" + std::to_string(t.power), t.coefficient, spin_power(t.power)});
  return linear_model("inline", dirs);
}

double beta_c(int d) {
  if (d < 3) fail(ErrorCode::invalid_argument, "annealed model needs degree d >= 3");
  return std::atanh(1.0 / (d - 1.0));
}

PSpinRegion p_spin_region(int p, double beta, double h) {
  if (!(beta > 0.0)) fail(ErrorCode::invalid_argument, "region classification needs beta > 0");
  const Landscape L = find_maximizers(build_A(p_spin(p, beta, h).F));
  if (L.maximizers.size() > 1) return PSpinRegion::R2;
  return L.maximizers.front().m == 1 ? PSpinRegion::R1 : PSpinRegion::R3;
}

const char* region_name(PSpinRegion r) {
  switch (r) {
    case PSpinRegion::R1: return "R1";
    case PSpinRegion::R2: return "R2";
    case PSpinRegion::R3: return "R3";
  }
  return "?";
}

namespace four_spin_aux {

double q(double s) {
  if (!(std::fabs(s) < 1.0)) fail(ErrorCode::domain, "q(s) needs |s| < 1");
  if (std::fabs(s) < 0.3) {
    // (1/8) sum_{j>=1} s^{2j-2} 2j/(2j+1)
    const double s2 = s * s;
    double p = 1.0, sum = 0.0;
    for (int j = 1; j <= 40; ++j) {
      sum += p * (2.0 * j) / (2.0 * j + 1.0);
      p *= s2;
    }
    return sum / 8.0;
  }
  return 1.0 / (8.0 * s * s * (1.0 - s * s)) - std::atanh(s) / (8.0 * s * s * s);
}

double r(double s) {
  if (!(std::fabs(s) < 1.0)) fail(ErrorCode::domain, "r(s) needs |s| < 1");
  if (std::fabs(s) < 0.3) {
    // sum_{j>=2} (j-1) s^{2j-4} / (2j(2j-1))
    const double s2 = s * s;
    double p = 1.0, sum = 0.0;
    for (int j = 2; j <= 42; ++j) {
      sum += p * (j - 1.0) / (2.0 * j * (2.0 * j - 1.0));
      p *= s2;
    }
    return sum;
  }
  return ((s - 2.0) * std::log1p(-s) - (s + 2.0) * std::log1p(s)) / (4.0 * s * s * s * s);
}

double g_beta_t(double beta, double t) {
  if (!(std::fabs(t) <= 1.0)) fail(ErrorCode::domain, "g_beta(t) needs |t| <= 1");
  const double t2 = t * t;
  double head;
  if (std::fabs(t) < 0.1) {
    // -E(t)/t^2 = sum_j t^{2j-2} / (2j(2j-1))
    double p = 1.0;
    head = 0.0;
    for (int j = 1; j <= 20; ++j) {
      head += p / (2.0 * j * (2.0 * j - 1.0));
      p *= t2;
    }
  } else {
    head = -binary_entropy(t, 0) / t2;
  }
  return head - beta * t2;
}

double ghat_beta_t(double beta, double t) {
  if (!(std::fabs(t) < 1.0)) fail(ErrorCode::domain, "ghat_beta(t) needs |t| < 1");
  const double t2 = t * t;
  double head;
  if (std::fabs(t) < 0.1) {
    // atanh(t)/(2t) = (1/2) sum_j t^{2j}/(2j+1)
    double p = 1.0;
    head = 0.0;
    for (int j = 0; j <= 20; ++j) {
      head += p / (2.0 * j + 1.0);
      p *= t2;
    }
    head *= 0.5;
  } else {
    head = std::atanh(t) / (2.0 * t);
  }
  return head - 2.0 * beta * t2;
}

double g(double beta) {
  return scan_minimum([beta](double s) { return g_beta_t(beta, s); }, 0.0, 1.0);
}

double ghat(double beta) {
  return scan_minimum([beta](double s) { return ghat_beta_t(beta, s); }, 0.0, 1.0 - 1e-9);
}

}  // namespace four_spin_aux

const char* region_name(FourSpinRegion r) {
  switch (r) {
    case FourSpinRegion::R1: return "R1";
    case FourSpinRegion::R2: return "R2";
    case FourSpinRegion::R3: return "R3";
    case FourSpinRegion::R4: return "R4";
    case FourSpinRegion::special: return "special";
  }
  return "?";
}

FourSpinRegion four_spin_region_from_landscape(const Landscape& L) {
  const auto& M = L.maximizers;
  if (M.size() == 2) return FourSpinRegion::R2;
  if (M.size() >= 3) return FourSpinRegion::R3;
  switch (M.front().m) {
    case 1: return FourSpinRegion::R1;
    case 2: return FourSpinRegion::R4;
    default: return FourSpinRegion::special;
  }
}

FourSpinPhase four_spin_region(double beta, double h, bool cross_check) {
  if (!(beta > 0.0)) fail(ErrorCode::invalid_argument, "four-spin region needs beta > 0");
  constexpr double tol = 1e-9;
  FourSpinPhase ph;
  ph.beta = beta;
  ph.h = h;
  ph.boundary = four_spin_aux::g(beta);
  if (h < ph.boundary - tol) {
    ph.region = FourSpinRegion::R1;
  } else if (h > ph.boundary + tol) {
    ph.region = FourSpinRegion::R2;
  } else if (std::fabs(beta - 1.0 / 12.0) <= tol) {
    ph.region = FourSpinRegion::special;
  } else if (beta < 1.0 / 12.0) {
    ph.region = FourSpinRegion::R4;
  } else {
    ph.region = FourSpinRegion::R3;
  }
  if (cross_check)
    ph.landscape_region =
        four_spin_region_from_landscape(find_maximizers(build_A(four_spin(beta, h).F)));
  return ph;
}

double cubic_boundary(double beta) {
  if (!(beta > 0.0)) fail(ErrorCode::invalid_argument, "cubic boundary needs beta > 0");
  return scan_minimum(
      [beta](double t) {
        if (t == 0.0) return 0.5;
        return (-binary_entropy(t, 0) - beta * t * t * t) / (t * t);
      },
      0.0, 1.0);
}

}  // namespace mfspin
