#include "mfspin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mfspin/error.hpp"
#include "mfspin/numeric.hpp"
#include "mfspin/quadrature.hpp"

namespace mfspin {

namespace {

struct Event {
  double x;
  double p_left, p_right;  // discrete cdf just below and at x
  double q_left, q_right;  // continuous cdf just below and at x
};

double cont_left(const ContinuousLaw& q, double x) {
  for (std::size_t i = 0; i < q.jumps.size(); ++i)
    if (q.jumps[i] == x) return q.left_limits[i];
  return q.cdf(x);
}

// Event points of a discrete law against a continuous one: atoms and jumps.
std::vector<Event> events(const DiscreteLaw& p, const ContinuousLaw& q) {
  std::vector<double> xs = p.atoms;
  xs.insert(xs.end(), q.jumps.begin(), q.jumps.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Event> ev;
  ev.reserve(xs.size());
  std::size_t ai = 0;
  double cum = 0.0;
  for (double x : xs) {
    Event e;
    e.x = x;
    e.p_left = std::min(cum, 1.0);
    while (ai < p.atoms.size() && p.atoms[ai] == x) cum += p.masses[ai++];
    e.p_right = std::min(cum, 1.0);
    e.q_left = cont_left(q, x);
    e.q_right = q.cdf(x);
    ev.push_back(e);
  }
  return ev;
}

double dk_discrete(const DiscreteLaw& p, const DiscreteLaw& q) {
  std::size_t i = 0, j = 0;
  double fp = 0.0, fq = 0.0, best = 0.0;
  while (i < p.atoms.size() || j < q.atoms.size()) {
    double x;
    if (j >= q.atoms.size() || (i < p.atoms.size() && p.atoms[i] <= q.atoms[j]))
      x = p.atoms[i];
    else
      x = q.atoms[j];
    while (i < p.atoms.size() && p.atoms[i] == x) fp += p.masses[i++];
    while (j < q.atoms.size() && q.atoms[j] == x) fq += q.masses[j++];
    best = std::max(best, std::fabs(fp - fq));
  }
  return best;
}

double dw_discrete(const DiscreteLaw& p, const DiscreteLaw& q) {
  std::size_t i = 0, j = 0;
  double fp = 0.0, fq = 0.0, prev = 0.0, total = 0.0;
  bool started = false;
  while (i < p.atoms.size() || j < q.atoms.size()) {
    double x;
    if (j >= q.atoms.size() || (i < p.atoms.size() && p.atoms[i] <= q.atoms[j]))
      x = p.atoms[i];
    else
      x = q.atoms[j];
    if (started) total += std::fabs(fp - fq) * (x - prev);
    started = true;
    prev = x;
    while (i < p.atoms.size() && p.atoms[i] == x) fp += p.masses[i++];
    while (j < q.atoms.size() && q.atoms[j] == x) fq += q.masses[j++];
  }
  return total;
}

double dk_mixed(const DiscreteLaw& p, const ContinuousLaw& q) {
  const auto ev = events(p, q);
  double best = 0.0;
  for (const auto& e : ev)
    best = std::max({best, std::fabs(e.p_left - e.q_left), std::fabs(e.p_right - e.q_right)});
  return best;
}

// int_u^w F_Q over a stretch without jumps.
double integral_cdf(const ContinuousLaw& q, double u, double w) {
  if (w <= u) return 0.0;
  if (q.partial_mean)
    return w * q.cdf(w) - u * q.cdf(u) - (q.partial_mean(w) - q.partial_mean(u));
  return quad::integrate(q.cdf, u, w, 1e-11).value;
}

// int_u^w |v - F_Q| with F_Q continuous and nondecreasing on (u, w).
double segment_distance(const ContinuousLaw& q, double u, double w, double v, double fu,
                        double fw) {
  if (w <= u) return 0.0;
  const double len = w - u;
  if (fw <= v) return v * len - integral_cdf(q, u, w);
  if (fu >= v) return integral_cdf(q, u, w) - v * len;
  double lo = u, hi = w;
  for (int i = 0; i < 80 && hi - lo > 1e-14 * std::max(1.0, std::fabs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (q.cdf(mid) <= v) lo = mid; else hi = mid;
  }
  const double x = 0.5 * (lo + hi);
  return (v * (x - u) - integral_cdf(q, u, x)) + (integral_cdf(q, x, w) - v * (w - x));
}

double dw_mixed(const DiscreteLaw& p, const ContinuousLaw& q) {
  const auto ev = events(p, q);
  double total = 0.0;
  const double lo = std::min(q.lo, ev.front().x);
  const double hi = std::max(q.hi, ev.back().x);
  // Left of the first event the discrete cdf vanishes.
  total += integral_cdf(q, lo, ev.front().x);
  for (std::size_t i = 0; i + 1 < ev.size(); ++i)
    total += segment_distance(q, ev[i].x, ev[i + 1].x, ev[i].p_right, ev[i].q_right,
                              ev[i + 1].q_left);
  const double last = ev.back().x;
  const double last_p = ev.back().p_right;
  if (hi > last) {
    // Past the last atom the discrete cdf is last_p (1 up to rounding).
    total += (hi - last) * last_p - integral_cdf(q, last, hi);
  }
  return total;
}

double dk_continuous(const ContinuousLaw& p, const ContinuousLaw& q) {
  const double lo = std::min(p.lo, q.lo), hi = std::max(p.hi, q.hi);
  const int n = 10000;
  std::vector<double> xs(n + 1), diff(n + 1);
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    xs[i] = lo + (hi - lo) * i / n;
    diff[i] = std::fabs(p.cdf(xs[i]) - q.cdf(xs[i]));
    best = std::max(best, diff[i]);
  }
  std::vector<double> jumps = p.jumps;
  jumps.insert(jumps.end(), q.jumps.begin(), q.jumps.end());
  for (double x : jumps) {
    best = std::max(best, std::fabs(p.cdf(x) - q.cdf(x)));
    best = std::max(best, std::fabs(cont_left(p, x) - cont_left(q, x)));
  }
  // Refine around the ten largest grid values by golden section.
  std::vector<int> idx(n + 1);
  for (int i = 0; i <= n; ++i) idx[i] = i;
  std::partial_sort(idx.begin(), idx.begin() + 10, idx.end(),
                    [&](int a, int b) { return diff[a] > diff[b]; });
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int r = 0; r < 10; ++r) {
    const int i = idx[r];
    double a = xs[std::max(0, i - 1)], b = xs[std::min(n, i + 1)];
    auto h = [&](double x) { return std::fabs(p.cdf(x) - q.cdf(x)); };
    double c = b - g * (b - a), d = a + g * (b - a);
    double hc = h(c), hd = h(d);
    for (int it = 0; it < 60; ++it) {
      if (hc > hd) {
        b = d; d = c; hd = hc; c = b - g * (b - a); hc = h(c);
      } else {
        a = c; c = d; hc = hd; d = a + g * (b - a); hd = h(d);
      }
    }
    best = std::max({best, hc, hd});
  }
  return best;
}

double dw_continuous(const ContinuousLaw& p, const ContinuousLaw& q) {
  const double lo = std::min(p.lo, q.lo), hi = std::max(p.hi, q.hi);
  std::vector<double> br;
  const int pieces = 256;
  for (int i = 0; i <= pieces; ++i) br.push_back(lo + (hi - lo) * i / pieces);
  br.insert(br.end(), p.jumps.begin(), p.jumps.end());
  br.insert(br.end(), q.jumps.begin(), q.jumps.end());
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  auto h = [&](double x) { return std::fabs(p.cdf(x) - q.cdf(x)); };
  return quad::integrate_pieces(h, br, 1e-9).value;
}

}  // namespace

double d_K(const LawHandle& p, const LawHandle& q) {
  if (auto* pd = std::get_if<DiscreteLaw>(&p)) {
    if (auto* qd = std::get_if<DiscreteLaw>(&q)) return dk_discrete(*pd, *qd);
    return dk_mixed(*pd, std::get<ContinuousLaw>(q));
  }
  if (auto* qd = std::get_if<DiscreteLaw>(&q)) return dk_mixed(*qd, std::get<ContinuousLaw>(p));
  return dk_continuous(std::get<ContinuousLaw>(p), std::get<ContinuousLaw>(q));
}

double d_W(const LawHandle& p, const LawHandle& q) {
  if (auto* pd = std::get_if<DiscreteLaw>(&p)) {
    if (auto* qd = std::get_if<DiscreteLaw>(&q)) return dw_discrete(*pd, *qd);
    return dw_mixed(*pd, std::get<ContinuousLaw>(q));
  }
  if (auto* qd = std::get_if<DiscreteLaw>(&q)) return dw_mixed(*qd, std::get<ContinuousLaw>(p));
  return dw_continuous(std::get<ContinuousLaw>(p), std::get<ContinuousLaw>(q));
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) fail(ErrorCode::invalid_argument, "rate fit needs at least 3 points");
  const double k = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [n, d] : points) {
    if (!(d > 0.0)) fail(ErrorCode::domain, "rate fit needs positive distances");
    if (!(n > 0.0)) fail(ErrorCode::domain, "rate fit needs positive sizes");
    sx += std::log(n);
    sy += std::log(d);
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [n, d] : points) {
    const double x = std::log(n) - mx, y = std::log(d) - my;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  if (sxx == 0.0) fail(ErrorCode::invalid_argument, "rate fit needs distinct sizes");
  RateFit r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return r;
}

ContinuousLaw normal_law(double mean, double variance) {
  if (!(variance > 0.0)) fail(ErrorCode::invalid_argument, "normal law needs variance > 0");
  const double sd = std::sqrt(variance);
  ContinuousLaw law;
  law.cdf = [=](double x) { return normal_cdf((x - mean) / sd); };
  law.pdf = [=](double x) {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
  };
  law.partial_mean = [=](double x) {
    const double z = (x - mean) / sd;
    return mean * normal_cdf(z) - sd * std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  };
  law.lo = mean - 9.0 * sd;
  law.hi = mean + 9.0 * sd;
  return law;
}

}  // namespace mfspin
