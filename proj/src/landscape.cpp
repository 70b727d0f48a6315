#include "mfspin/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mfspin/error.hpp"

namespace mfspin {

namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Root of g in [lo, hi] with g(lo) > 0 >= g(hi) (a decreasing crossing).
// Newton with derivative dg, falling back to bisection whenever the step
// leaves the bracket.
template <class G, class DG>
double refine_decreasing_root(const G& g, const DG& dg, double lo, double hi) {
  double glo = g(lo);
  double ghi = g(hi);
  if (ghi == 0.0) return hi;
  if (glo == 0.0) return lo;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gx = g(x);
    if (gx == 0.0) return x;
    if (gx > 0.0) lo = x; else hi = x;
    const double d = dg(x);
    double next = (d != 0.0 && std::isfinite(d)) ? x - gx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - x);
    x = next;
    if (step < 1e-13 || hi - lo < 1e-13) break;
  }
  return x;
}

// A point of a (2m-1)-fold stationary crossing is located far less
// accurately by A' than by A^(2m-1), which has a simple root there. Search
// for that root near a0 for increasing m until an order is confirmed.
double polish(const SmoothFunction& A, double a0, int m) {
  const int k = 2 * m - 1;
  const double r = 1e-2;
  const double lo = std::max(a0 - r, 1e-9);
  const double hi = std::min(a0 + r, 1.0 - 1e-9);
  const int pts = 81;
  double best = a0;
  double best_dist = 1e300;
  double prev_x = lo;
  double prev_g = A.eval(lo, k);
  for (int i = 1; i < pts; ++i) {
    const double x = lo + (hi - lo) * i / (pts - 1);
    const double gx = A.eval(x, k);
    if (prev_g > 0.0 && gx <= 0.0) {
      const double root = refine_decreasing_root(
          [&](double t) { return A.eval(t, k); },
          [&](double t) { return A.eval(t, k + 1); }, prev_x, x);
      if (std::fabs(root - a0) < best_dist) {
        best_dist = std::fabs(root - a0);
        best = root;
      }
    }
    prev_x = x;
    prev_g = gx;
  }
  return best;
}

}  // namespace

SmoothFunction build_A(const SmoothFunction& F) {
  if (F.max_order() < 2)
    fail(ErrorCode::invalid_argument, "F needs derivatives up to order 2 at least");
  return combine({{1.0, F}, {1.0, entropy_function()}});
}

Regularity classify_regularity(const SmoothFunction& A, double a, double scale,
                               double tol_deriv) {
  const double tol = tol_deriv * scale;
  for (int k = 1; k <= A.max_order(); ++k) {
    const double d = A.eval(a, k);
    if (std::fabs(d) <= tol) continue;
    if (k % 2 == 1)
      fail(ErrorCode::classification,
           "odd derivative of order " + std::to_string(k) + " dominates at a = " + num(a) +
               " (value " + num(d) + "); not a local maximum");
    if (d > 0.0)
      fail(ErrorCode::classification, "derivative of order " + std::to_string(k) +
                                          " is positive at a = " + num(a) +
                                          "; not a local maximum");
    return {k / 2, d / factorial(k)};
  }
  fail(ErrorCode::classification, "no nonvanishing even derivative up to order " +
                                      std::to_string(A.max_order()) + " at a = " + num(a));
}

Landscape find_maximizers(const SmoothFunction& A, const LandscapeOptions& opt) {
  if (opt.grid_size < 101) fail(ErrorCode::invalid_argument, "grid_size must be at least 101");
  const int N = opt.grid_size;
  const double lo = opt.edge;
  const double hi = 1.0 - opt.edge;
  std::vector<double> xs(N), d1(N);
  double scale = 1.0;
  for (int i = 0; i < N; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (N - 1);
    scale = std::max(scale, std::fabs(A.eval(xs[i], 0)));
    d1[i] = A.eval(xs[i], 1);
  }
  scale = std::max({scale, std::fabs(A.eval(0.0, 0)), std::fabs(A.eval(1.0, 0))});

  Landscape L;
  L.scale = scale;
  const double tol_d = opt.tol_deriv * scale;

  std::vector<double> roots;
  for (int i = 0; i + 1 < N; ++i) {
    if (!(d1[i] > 0.0 && d1[i + 1] <= 0.0)) continue;
    roots.push_back(refine_decreasing_root([&](double t) { return A.eval(t, 1); },
                                           [&](double t) { return A.eval(t, 2); }, xs[i],
                                           xs[i + 1]));
  }
  if (roots.empty())
    fail(ErrorCode::no_interior_maximum, "A' has no decreasing zero crossing in (0, 1)");

  std::vector<Maximizer> cands;
  for (double a0 : roots) {
    double a = a0;
    int m = 0;
    if (A.eval(a, 2) < -tol_d) {
      m = 1;
    } else {
      // Degenerate candidate: find the order whose odd derivative has a
      // simple root here.
      for (int mm = 2; 2 * mm <= A.max_order(); ++mm) {
        const double p = polish(A, a0, mm);
        bool lower_ok = true;
        for (int k = 1; k < 2 * mm; ++k)
          if (std::fabs(A.eval(p, k)) > tol_d) lower_ok = false;
        if (!lower_ok) continue;
        if (A.eval(p, 2 * mm) < -tol_d) {
          a = p;
          m = mm;
          break;
        }
        if (A.eval(p, 2 * mm) > tol_d) break;  // a flat minimum or inflection
      }
      if (m == 0) {
        // Not a maximum of any order: typically a noise crossing of an
        // inflection. Let the classifier produce the diagnostic only if the
        // point is otherwise a candidate for the global maximum.
        a = a0;
      }
    }
    Maximizer mx;
    mx.a = a;
    mx.m = m;
    mx.value = A.eval(a, 0);
    cands.push_back(mx);
  }

  // Merge duplicates coming from noisy sign changes around a flat maximum.
  std::sort(cands.begin(), cands.end(),
            [](const Maximizer& x, const Maximizer& y) { return x.a < y.a; });
  std::vector<Maximizer> merged;
  for (const auto& c : cands) {
    if (!merged.empty() && std::fabs(c.a - merged.back().a) < 1e-6) {
      if (c.m > merged.back().m) merged.back() = c;
      continue;
    }
    merged.push_back(c);
  }

  double vmax = -1e300;
  for (const auto& c : merged) vmax = std::max(vmax, c.value);
  const double vtol = opt.tol_value * scale;
  for (const auto& c : merged) {
    if (c.value < vmax - vtol) {
      if (c.value > vmax - 1e-6 * scale)
        L.warnings.push_back("local maximum at a = " + num(c.a) +
                             " is within 1e-6 of the global value but excluded");
      continue;
    }
    Maximizer mx = c;
    const Regularity r = classify_regularity(A, mx.a, scale, opt.tol_deriv);
    if (mx.m != 0 && r.m != mx.m)
      fail(ErrorCode::classification, "inconsistent regularity at a = " + num(mx.a));
    mx.m = r.m;
    mx.c = r.c;
    mx.nu = -0.5 * std::log(mx.a * (1.0 - mx.a));
    if (std::fabs(A.eval(mx.a, 1)) > opt.tol_stationary * scale)
      fail(ErrorCode::classification,
           "stationarity check failed at a = " + num(mx.a) + ": A' = " + num(A.eval(mx.a, 1)));
    const double lead = std::fabs(A.eval(mx.a, 2 * mx.m));
    if (lead < 1e3 * tol_d)
      L.warnings.push_back("maximizer at a = " + num(mx.a) + " is close to degenerate (|A^(" +
                           std::to_string(2 * mx.m) + ")| = " + num(lead) + ")");
    L.maximizers.push_back(mx);
  }

  L.m_star = 1;
  for (const auto& mx : L.maximizers) L.m_star = std::max(L.m_star, mx.m);
  for (std::size_t j = 0; j < L.maximizers.size(); ++j)
    if (L.maximizers[j].m == L.m_star) L.J_star.push_back(static_cast<int>(j));

  // Separation radius.
  double delta = 1.0;
  const auto& M = L.maximizers;
  for (std::size_t j = 0; j < M.size(); ++j) {
    delta = std::min({delta, 0.5 * M[j].a, 0.5 * (1.0 - M[j].a)});
    if (j + 1 < M.size()) delta = std::min(delta, 0.5 * (M[j + 1].a - M[j].a));
  }
  bool ok = false;
  for (int attempt = 0; attempt <= 20 && !ok; ++attempt) {
    ok = true;
    for (const auto& mx : M) {
      const int k = 2 * mx.m;
      const double center = A.eval(mx.a, k);
      if (center > -std::fabs(mx.c) * factorial(k) / 2.0) ok = false;
      for (int i = 0; i < 1000 && ok; ++i) {
        const double x = mx.a - delta + 2.0 * delta * (i + 0.5) / 1000.0;
        if (!(A.eval(x, k) < 0.0)) ok = false;
      }
      if (!ok) break;
    }
    if (!ok) delta *= 0.5;
  }
  if (!ok) L.warnings.push_back("separation radius check did not pass after 20 halvings");
  L.delta_star = delta;
  return L;
}

PerturbationSets perturbation_sets(const Landscape& L, const std::optional<SmoothFunction>& B) {
  PerturbationSets S;
  const auto& M = L.maximizers;
  S.b.assign(M.size(), 0.0);
  if (!B) {
    for (std::size_t j = 0; j < M.size(); ++j) S.J1.push_back(static_cast<int>(j));
    S.J2 = L.J_star;
    return S;
  }
  if (B->max_order() < 1)
    fail(ErrorCode::invalid_argument, "perturbation needs a first derivative");
  double bmax = -1e300;
  std::vector<double> bv(M.size());
  for (std::size_t j = 0; j < M.size(); ++j) {
    bv[j] = B->eval(M[j].a, 0);
    bmax = std::max(bmax, bv[j]);
  }
  int mmax = 0;
  for (std::size_t j = 0; j < M.size(); ++j)
    if (bv[j] >= bmax - 1e-9) {
      S.J1.push_back(static_cast<int>(j));
      mmax = std::max(mmax, M[j].m);
    }
  for (int j : S.J1)
    if (M[j].m == mmax) S.J2.push_back(j);
  for (std::size_t j = 0; j < M.size(); ++j)
    if (M[j].m == L.m_star) S.b[j] = B->eval(M[j].a, 1);
  return S;
}

}  // namespace mfspin
