#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace mfspin::quad {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

template <class F>
Estimate gk15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kronrod_nodes[i];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[i] * sum;
    if (i % 2 == 1) gauss += gauss_weights[i / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

// Globally adaptive Gauss-Kronrod: bisects the interval with the largest error
// estimate until the summed error is below abs_tol or the budget is spent.
template <class F>
Estimate integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                   int max_intervals = 4000) {
  if (a == b) return {};
  if (a > b) {
    Estimate r = integrate(f, b, a, abs_tol, max_intervals);
    return {-r.value, r.error};
  }
  struct Piece {
    double lo, hi;
    Estimate est;
    bool operator<(const Piece& o) const { return est.error < o.est.error; }
  };
  std::priority_queue<Piece> pieces;
  Piece first{a, b, gk15(f, a, b)};
  double total = first.est.value;
  double error = first.est.error;
  pieces.push(first);
  int count = 1;
  while (error > abs_tol && count < max_intervals) {
    Piece worst = pieces.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) break;
    pieces.pop();
    Piece left{worst.lo, mid, gk15(f, worst.lo, mid)};
    Piece right{mid, worst.hi, gk15(f, mid, worst.hi)};
    total += left.est.value + right.est.value - worst.est.value;
    error += left.est.error + right.est.error - worst.est.error;
    pieces.push(left);
    pieces.push(right);
    ++count;
  }
  // Re-sum to shed the drift accumulated by incremental updates.
  double sum = 0.0, err = 0.0;
  while (!pieces.empty()) {
    sum += pieces.top().est.value;
    err += pieces.top().est.error;
    pieces.pop();
  }
  return {sum, err};
}

// Integrates over consecutive breakpoints; tolerance is shared evenly.
template <class F>
Estimate integrate_pieces(const F& f, const std::vector<double>& breaks,
                          double abs_tol = 1e-12) {
  Estimate total;
  if (breaks.size() < 2) return total;
  const double tol = abs_tol / static_cast<double>(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Estimate e = integrate(f, breaks[i], breaks[i + 1], tol);
    total.value += e.value;
    total.error += e.error;
  }
  return total;
}

// Fixed 8-point Gauss-Legendre rule, used for short cells of cached tables.
template <class F>
double gauss_legendre8(const F& f, double a, double b) {
  static constexpr std::array<double, 4> x = {
      0.183434642495649804939476142360184, 0.525532409916328985817739049189246,
      0.796666477413626739591553936475830, 0.960289856497536231683560868569473};
  static constexpr std::array<double, 4> w = {
      0.362683783378361982965150449277196, 0.313706645877887287337962201986601,
      0.222381034453374470544355994426241, 0.101228536290376259152531354309962};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
  return s * h;
}

}  // namespace mfspin::quad
