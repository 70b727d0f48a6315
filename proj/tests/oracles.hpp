#pragma once
// Independent reference computations for the tests. Nothing here calls into
// the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// Composite Simpson with a fixed, even panel count.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      long panels = 1000000) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  long double s = f(a) + f(b);
  for (long i = 1; i < panels; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(a + i * h);
  return static_cast<double>(s * h / 3.0L);
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Positive root of atanh(t) = s t for s > 1.
inline double curie_weiss_root(double s) {
  return bisect([s](double t) { return std::atanh(t) - s * t; }, 1e-6, 1.0 - 1e-15);
}

// Law of the number of up spins by summing exp(n F(k/n)) over all 2^n
// configurations, with F given in terms of the up fraction.
inline std::vector<double> enumerate_spins(const std::function<double(double)>& F, int n) {
  std::vector<long double> w(n + 1, 0.0L);
  long double total = 0.0L;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    int up = 0;
    for (int i = 0; i < n; ++i) up += (s >> i) & 1u;
    const long double x = std::exp(static_cast<long double>(n) * F(static_cast<double>(up) / n));
    w[up] += x;
    total += x;
  }
  std::vector<double> p(n + 1);
  for (int k = 0; k <= n; ++k) p[k] = static_cast<double>(w[k] / total);
  return p;
}

inline double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace oracle
