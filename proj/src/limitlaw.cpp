#include "mfspin/limitlaw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfspin/error.hpp"
#include "mfspin/numeric.hpp"
#include "mfspin/quadrature.hpp"

namespace mfspin {

namespace {

constexpr int kCells = 2048;
constexpr int kQuantileNodes = 4096;

struct Shape {
  double mode;
  double shift;
  double radius;
};

double exponent(double c, int m, double b, double x) {
  return c * std::pow(x, 2 * m) + b * x;
}

// Mode of c x^{2m} + b x and a truncation radius R with
// |c| R^{2m} - |b| R - shift = 40, clamped to R >= 8.
Shape shape_of(double c, int m, double b) {
  if (!(c < 0.0) || !std::isfinite(c))
    fail(ErrorCode::invalid_argument, "tilted law needs c < 0");
  if (m < 1) fail(ErrorCode::invalid_argument, "tilted law needs m >= 1");
  if (!std::isfinite(b)) fail(ErrorCode::invalid_argument, "tilt b must be finite");
  Shape s;
  const double r = std::pow(std::fabs(b) / (2.0 * m * -c), 1.0 / (2 * m - 1));
  s.mode = b >= 0.0 ? r : -r;
  s.shift = exponent(c, m, b, s.mode);
  auto excess = [&](double R) { return -c * std::pow(R, 2 * m) - std::fabs(b) * R - s.shift - 40.0; };
  double hi = std::max(1.0, std::fabs(s.mode));
  while (excess(hi) < 0.0) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) < 0.0) lo = mid; else hi = mid;
  }
  s.radius = std::max(8.0, hi);
  return s;
}

template <class K>
double integrate_around(const K& k, const Shape& s) {
  return quad::integrate_pieces(k, {-s.radius, s.mode, s.radius}, 1e-13).value;
}

}  // namespace

TiltMoments tilt_moments(double c, int m, double b) {
  const Shape s = shape_of(c, m, b);
  auto kern = [&](double x) { return std::exp(exponent(c, m, b, x) - s.shift); };
  const double z = integrate_around(kern, s);
  const double zx = integrate_around([&](double x) { return (x - s.mode) * kern(x); }, s);
  return {std::log(z) + s.shift, s.mode + zx / z};
}

double log_normalizer(double c, int m, double b) { return tilt_moments(c, m, b).log_q; }

double normalizer(double c, int m, double b) { return std::exp(log_normalizer(c, m, b)); }

struct TiltedLaw::Tables {
  std::vector<double> edges, mass, pmean;  // cumulative, unnormalized
  std::vector<double> qu, qx, qd;          // quantile spline nodes and slopes
};

double TiltedLaw::kernel(double x) const { return std::exp(exponent(c_, m_, b_, x) - shift_); }

TiltedLaw::TiltedLaw(double c, int m, double b) : c_(c), m_(m), b_(b) {
  const Shape s = shape_of(c, m, b);
  shift_ = s.shift;
  radius_ = s.radius;
  auto kern = [this](double x) { return kernel(x); };
  const double z = integrate_around(kern, s);
  log_q_ = std::log(z) + shift_;
  mean_ = s.mode + integrate_around([&](double x) { return (x - s.mode) * kern(x); }, s) / z;
  variance_ =
      integrate_around([&](double x) { return (x - mean_) * (x - mean_) * kern(x); }, s) / z;

  auto t = std::make_shared<Tables>();
  t->edges.resize(kCells + 1);
  t->mass.assign(kCells + 1, 0.0);
  t->pmean.assign(kCells + 1, 0.0);
  for (int i = 0; i <= kCells; ++i) t->edges[i] = -radius_ + 2.0 * radius_ * i / kCells;
  for (int i = 0; i < kCells; ++i) {
    const double a = t->edges[i], e = t->edges[i + 1];
    t->mass[i + 1] = t->mass[i] + quad::gauss_legendre8(kern, a, e);
    t->pmean[i + 1] =
        t->pmean[i] + quad::gauss_legendre8([&](double x) { return x * kern(x); }, a, e);
  }
  tables_ = t;

  // Quantile nodes (u_i, x_i), kept strictly increasing in u.
  for (int i = 0; i < kQuantileNodes; ++i) {
    const double x = -radius_ + 2.0 * radius_ * i / (kQuantileNodes - 1);
    const double u = cdf(x);
    if (!t->qu.empty() && u <= t->qu.back()) continue;
    t->qu.push_back(u);
    t->qx.push_back(x);
  }
  // Fritsch-Carlson slopes for x(u).
  const std::size_t n = t->qu.size();
  t->qd.assign(n, 0.0);
  std::vector<double> sec(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    sec[i] = (t->qx[i + 1] - t->qx[i]) / (t->qu[i + 1] - t->qu[i]);
  if (n >= 2) {
    t->qd[0] = sec[0];
    t->qd[n - 1] = sec[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = t->qu[i] - t->qu[i - 1], h1 = t->qu[i + 1] - t->qu[i];
      const double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
      t->qd[i] = (w1 + w2) / (w1 / sec[i - 1] + w2 / sec[i]);
    }
  }
}

double TiltedLaw::q() const { return std::exp(log_q_); }

double TiltedLaw::pdf(double x) const {
  return std::exp(exponent(c_, m_, b_, x) - log_q_);
}

double TiltedLaw::cdf(double x) const {
  if (x <= -radius_) return 0.0;
  if (x >= radius_) return 1.0;
  const auto& t = *tables_;
  const std::size_t i = std::min<std::size_t>(
      kCells - 1, static_cast<std::size_t>((x + radius_) / (2.0 * radius_) * kCells));
  const double part =
      quad::gauss_legendre8([this](double y) { return kernel(y); }, t.edges[i], x);
  return std::clamp((t.mass[i] + part) / t.mass[kCells], 0.0, 1.0);
}

double TiltedLaw::partial_mean(double x) const {
  if (x <= -radius_) return 0.0;
  const auto& t = *tables_;
  if (x >= radius_) return t.pmean[kCells] / t.mass[kCells];
  const std::size_t i = std::min<std::size_t>(
      kCells - 1, static_cast<std::size_t>((x + radius_) / (2.0 * radius_) * kCells));
  const double part =
      quad::gauss_legendre8([this](double y) { return y * kernel(y); }, t.edges[i], x);
  return (t.pmean[i] + part) / t.mass[kCells];
}

double TiltedLaw::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) fail(ErrorCode::domain, "quantile needs u in (0, 1)");
  double lo = -radius_, hi = radius_;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::fabs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < u) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> TiltedLaw::sample(std::uint64_t seed, std::int64_t count) const {
  if (count < 1) fail(ErrorCode::invalid_argument, "sample count must be positive");
  const auto& t = *tables_;
  Rng rng(Rng::mix(seed));
  std::vector<double> out(count);
  for (auto& v : out) {
    const double u = std::clamp(rng.open_uniform(), t.qu.front(), t.qu.back());
    std::size_t i = std::upper_bound(t.qu.begin(), t.qu.end(), u) - t.qu.begin();
    i = std::clamp<std::size_t>(i, 1, t.qu.size() - 1) - 1;
    const double h = t.qu[i + 1] - t.qu[i];
    const double s = (u - t.qu[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    v = h00 * t.qx[i] + h10 * h * t.qd[i] + h01 * t.qx[i + 1] + h11 * h * t.qd[i + 1];
  }
  return out;
}

ContinuousLaw TiltedLaw::as_law() const {
  ContinuousLaw law;
  const TiltedLaw self = *this;
  law.cdf = [self](double x) { return self.cdf(x); };
  law.pdf = [self](double x) { return self.pdf(x); };
  law.partial_mean = [self](double x) { return self.partial_mean(x); };
  law.lo = lo();
  law.hi = hi();
  return law;
}

HalfNormal::HalfNormal(int sign, double variance) : sign_(sign >= 0 ? 1 : -1) {
  if (!(variance > 0.0)) fail(ErrorCode::invalid_argument, "half-normal needs variance > 0");
  sd_ = std::sqrt(variance);
}

double HalfNormal::cdf(double x) const {
  if (sign_ > 0) return x < 0.0 ? 0.0 : 2.0 * normal_cdf(x / sd_) - 1.0;
  return x >= 0.0 ? 1.0 : 2.0 * normal_cdf(x / sd_);
}

double HalfNormal::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) fail(ErrorCode::domain, "quantile needs u in (0, 1)");
  if (sign_ > 0) return sd_ * normal_quantile(0.5 + 0.5 * u);
  return sd_ * normal_quantile(0.5 * u);
}

std::vector<double> HalfNormal::sample(std::uint64_t seed, std::int64_t count) const {
  if (count < 1) fail(ErrorCode::invalid_argument, "sample count must be positive");
  Rng rng(Rng::mix(seed));
  std::vector<double> out(count);
  for (auto& v : out) v = quantile(rng.open_uniform());
  return out;
}

ContinuousLaw HalfNormal::as_law() const {
  ContinuousLaw law;
  const HalfNormal self = *this;
  law.cdf = [self](double x) { return self.cdf(x); };
  law.lo = sign_ > 0 ? 0.0 : -9.0 * sd_;
  law.hi = sign_ > 0 ? 9.0 * sd_ : 0.0;
  return law;
}

std::vector<std::pair<int, double>> mixture_weights(const Landscape& L,
                                                     const PerturbationSets& S) {
  if (S.J2.empty()) fail(ErrorCode::invalid_argument, "J2 is empty");
  std::vector<double> logw;
  for (int j : S.J2) {
    const auto& mx = L.maximizers.at(j);
    logw.push_back(log_normalizer(mx.c, mx.m, S.b.at(j)) + mx.nu);
  }
  const double lz = log_sum_exp(logw);
  std::vector<std::pair<int, double>> out;
  for (std::size_t i = 0; i < S.J2.size(); ++i)
    out.emplace_back(S.J2[i], std::exp(logw[i] - lz));
  return out;
}

// ---- MLE limit ----

MleLimit::MleLimit(std::vector<MleTerm> neg, std::vector<MleTerm> pos)
    : neg_(std::move(neg)), pos_(std::move(pos)) {
  for (const auto& t : neg_) {
    neg_y_.emplace_back(t.c, t.m, 0.0);
    if (t.fprime != 0.0) p_neg_ += 0.5 * t.p;
  }
  for (const auto& t : pos_) {
    pos_y_.emplace_back(t.c, t.m, 0.0);
    if (t.fprime != 0.0) p_pos_ += 0.5 * t.p;
  }
  atom0_ = 1.0 - p_neg_ - p_pos_;
}

double MleLimit::tilt_drift(double t) const {
  if (t == 0.0) return 0.0;
  const auto& terms = t < 0.0 ? neg_ : pos_;
  std::vector<double> logw, drift;
  for (const auto& k : terms) {
    const TiltMoments mo = tilt_moments(k.c, k.m, t * k.fprime);
    logw.push_back(mo.log_q + k.nu);
    drift.push_back(k.fprime * mo.mean);
  }
  const double lz = log_sum_exp(logw);
  double e = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) e += drift[i] * std::exp(logw[i] - lz);
  return e;
}

double MleLimit::cdf(double t) const {
  if (t == 0.0) return 1.0 - p_pos_;
  const double e = tilt_drift(t);
  if (t < 0.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < neg_.size(); ++i)
      if (neg_[i].fprime != 0.0)
        s += neg_[i].p * neg_y_[i].cdf(e / std::fabs(neg_[i].fprime));
    return s;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < pos_.size(); ++i)
    if (pos_[i].fprime != 0.0)
      s += pos_[i].p * (1.0 - pos_y_[i].cdf(e / std::fabs(pos_[i].fprime)));
  return 1.0 - s;
}

ContinuousLaw MleLimit::as_law() const {
  ContinuousLaw law;
  const MleLimit self = *this;
  law.cdf = [self](double t) { return self.cdf(t); };
  double lo = -1.0;
  while (cdf(lo) > 1e-12 && lo > -1e6) lo *= 2.0;
  double hi = 1.0;
  while (cdf(hi) < 1.0 - 1e-12 && hi < 1e6) hi *= 2.0;
  law.lo = lo;
  law.hi = hi;
  if (atom0_ > 1e-15) {
    law.jumps = {0.0};
    law.left_limits = {p_neg_};
  }
  return law;
}

MleLimit mle_limit(const Landscape& L, const SmoothFunction& f) {
  const auto& M = L.maximizers;
  if (M.empty()) fail(ErrorCode::invalid_argument, "landscape has no maximizers");
  double fmin = 1e300, fmax = -1e300, fscale = 1.0;
  std::vector<double> fv(M.size()), fp(M.size());
  for (std::size_t j = 0; j < M.size(); ++j) {
    fv[j] = f.eval(M[j].a, 0);
    fp[j] = f.eval(M[j].a, 1);
    fmin = std::min(fmin, fv[j]);
    fmax = std::max(fmax, fv[j]);
    fscale = std::max(fscale, std::fabs(fv[j]));
  }
  const double vtol = 1e-9 * fscale;
  auto second_level = [&](bool lower) {
    std::vector<int> j1;
    int mm = 0;
    for (std::size_t j = 0; j < M.size(); ++j) {
      const bool in = lower ? fv[j] <= fmin + vtol : fv[j] >= fmax - vtol;
      if (in) {
        j1.push_back(static_cast<int>(j));
        mm = std::max(mm, M[j].m);
      }
    }
    std::vector<int> j2;
    for (int j : j1)
      if (M[j].m == mm) j2.push_back(j);
    return j2;
  };
  const std::vector<int> jneg = second_level(true);
  const std::vector<int> jpos = second_level(false);

  auto describe = [&](int j) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "a = %.10g (order %d, f' = %.3g)", M[j].a, 2 * M[j].m, fp[j]);
    return std::string(buf);
  };
  for (int j : jneg)
    if (M[j].m != L.m_star)
      fail(ErrorCode::hypothesis, "maximizer " + describe(j) + " is not of maximal order");
  for (int j : jpos)
    if (M[j].m != L.m_star)
      fail(ErrorCode::hypothesis, "maximizer " + describe(j) + " is not of maximal order");
  const double ftol = 1e-8 * std::max(1.0, fscale);
  auto has_slope = [&](const std::vector<int>& js) {
    for (int j : js)
      if (std::fabs(fp[j]) > ftol) return true;
    return false;
  };
  if (!has_slope(jneg) || !has_slope(jpos)) {
    std::string which;
    for (int j : (has_slope(jneg) ? jpos : jneg)) which += (which.empty() ? "" : ", ") + describe(j);
    fail(ErrorCode::hypothesis,
         "f' vanishes at every relevant maximizer on one side: " + which);
  }

  const PerturbationSets S = perturbation_sets(L);
  const auto weights = mixture_weights(L, S);
  auto weight_of = [&](int j) {
    for (const auto& [k, p] : weights)
      if (k == j) return p;
    return 0.0;
  };
  auto terms_for = [&](const std::vector<int>& js) {
    std::vector<MleTerm> out;
    for (int j : js) {
      MleTerm t;
      t.j = j;
      t.a = M[j].a;
      t.c = M[j].c;
      t.m = M[j].m;
      t.nu = M[j].nu;
      t.fprime = std::fabs(fp[j]) > ftol ? fp[j] : 0.0;
      t.p = weight_of(j);
      out.push_back(t);
    }
    return out;
  };
  return MleLimit(terms_for(jneg), terms_for(jpos));
}

}  // namespace mfspin
