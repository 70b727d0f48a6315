#include "mfspin/reports.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "mfspin/error.hpp"
#include "mfspin/gibbs.hpp"
#include "mfspin/limitlaw.hpp"

namespace mfspin {

using nlohmann::json;

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

double required(const std::map<std::string, double>& p, const std::string& key,
                const std::string& model) {
  const auto it = p.find(key);
  if (it == p.end())
    fail(ErrorCode::invalid_argument, "model " + model + " needs parameter '" + key + "'");
  return it->second;
}

void check_keys(const std::map<std::string, double>& p, const std::set<std::string>& allowed,
                const std::string& model) {
  for (const auto& [k, v] : p) {
    if (!allowed.count(k))
      fail(ErrorCode::invalid_argument, "model " + model + " has no parameter '" + k + "'");
    if (!std::isfinite(v))
      fail(ErrorCode::invalid_argument, "parameter '" + k + "' must be finite");
  }
}

int as_int(double v, const std::string& key) {
  if (v != std::floor(v) || std::fabs(v) > 1e6)
    fail(ErrorCode::invalid_argument, "parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json model_json(const ModelSpec& spec) {
  json params = json::object();
  for (const auto& [k, v] : spec.parameters) params[k] = v;
  return {{"name", spec.name}, {"parameters", params}, {"F", spec.F.label()}};
}

json header(const char* command, const ModelSpec& spec) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"model", model_json(spec)}};
}

}  // namespace

ModelSpec model_from_name(const std::string& name, const std::map<std::string, double>& p) {
  if (name == "p-spin") {
    check_keys(p, {"p", "beta", "h"}, name);
    return p_spin(as_int(param(p, "p", 2.0), "p"), param(p, "beta", 0.0), param(p, "h", 0.0));
  }
  if (name == "cubic") {
    check_keys(p, {"beta", "h"}, name);
    return cubic(param(p, "beta", 0.0), param(p, "h", 0.0));
  }
  if (name == "four-spin") {
    check_keys(p, {"beta", "h"}, name);
    return four_spin(param(p, "beta", 0.0), param(p, "h", 0.0));
  }
  if (name == "six-spin") {
    check_keys(p, {}, name);
    return six_spin();
  }
  if (name == "annealed") {
    check_keys(p, {"d", "beta", "h"}, name);
    return annealed_ising(as_int(param(p, "d", 3.0), "d"), required(p, "beta", name),
                          param(p, "h", 0.0));
  }
  fail(ErrorCode::invalid_argument, "unknown model '" + name + "'");
}

std::string analyze_json(const ModelSpec& spec) {
  const Landscape L = find_maximizers(build_A(spec.F));
  const PerturbationSets S = perturbation_sets(L);
  const auto weights = mixture_weights(L, S);
  json out = header("analyze", spec);
  out["m_star"] = L.m_star;
  out["delta_star"] = L.delta_star;
  out["scale"] = L.scale;
  json maxs = json::array();
  std::vector<int> all;
  for (std::size_t j = 0; j < L.maximizers.size(); ++j) {
    const auto& mx = L.maximizers[j];
    double w = 0.0;
    for (const auto& [k, p] : weights)
      if (k == static_cast<int>(j)) w = p;
    maxs.push_back({{"index", j}, {"a", mx.a}, {"m", mx.m}, {"order", 2 * mx.m}, {"c", mx.c},
                    {"nu", mx.nu}, {"value", mx.value}, {"weight", w}});
    all.push_back(static_cast<int>(j));
  }
  out["maximizers"] = maxs;
  out["sets"] = {{"J", all}, {"J_star", L.J_star}, {"J1", S.J1}, {"J2", S.J2}};
  out["warnings"] = L.warnings;
  return out.dump(2) + "\n";
}

TextPair dist_report(const ModelSpec& spec, std::int64_t n, double delta) {
  if (n < 1 || n > 10'000'000) fail(ErrorCode::invalid_argument, "n must be in [1, 1e7]");
  const Landscape L = find_maximizers(build_A(spec.F));
  const FiniteGibbs G = FiniteGibbs::build(spec.F, n);
  const double radius = delta > 0.0 ? delta : L.delta_star;
  json out = header("dist", spec);
  out["n"] = n;
  out["log_Z"] = G.log_Z();
  const double m1 = G.moment(1);
  out["mean"] = m1;
  out["variance"] = std::max(0.0, G.moment(2) - m1 * m1);
  out["delta"] = radius;
  json windows = json::array();
  for (std::size_t j = 0; j < L.maximizers.size(); ++j) {
    const Window w = make_window(n, L.maximizers[j].a, radius, static_cast<int>(j));
    const double mass = w.k_lo <= w.k_hi ? window_mass(G, w) : 0.0;
    windows.push_back({{"index", j}, {"a", w.a}, {"k_lo", w.k_lo}, {"k_hi", w.k_hi},
                       {"mass", mass}});
  }
  out["windows"] = windows;
  return {gibbs_csv(G), out.dump(2) + "\n"};
}

std::vector<RateRow> rate_study(const SmoothFunction& F, const std::vector<std::int64_t>& ns,
                                double slope_tol) {
  if (ns.size() < 3) fail(ErrorCode::invalid_argument, "rate study needs at least 3 sizes");
  const Landscape L = find_maximizers(build_A(F));
  std::vector<RateRow> rows;
  std::vector<TiltedLaw> limits;
  for (std::size_t j = 0; j < L.maximizers.size(); ++j) {
    const auto& mx = L.maximizers[j];
    rows.push_back({static_cast<int>(j), mx.a, mx.m, mx.c, {}, {}, -1.0 / (2.0 * mx.m), false});
    limits.emplace_back(mx.c, mx.m, 0.0);
  }
  for (std::int64_t n : ns) {
    const FiniteGibbs G = FiniteGibbs::build(F, n);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const Window w = make_window(n, rows[j].a, L.delta_star, static_cast<int>(j));
      const DiscreteLaw law = scaled_conditional_law(G, w, rows[j].m);
      rows[j].points.push_back({n, d_W(law, limits[j].as_law())});
    }
  }
  for (auto& r : rows) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : r.points) pts.emplace_back(static_cast<double>(p.n), p.d_W);
    r.fit = rate_fit(pts);
    r.pass = std::fabs(r.fit.slope - r.expected_slope) <= slope_tol;
  }
  return rows;
}

LimitCheck limit_check_report(const ModelSpec& spec, const std::vector<std::int64_t>& ns,
                              double slope_tol) {
  const auto rows = rate_study(spec.F, ns, slope_tol);
  json out = header("limit-check", spec);
  out["n_list"] = ns;
  out["slope_tolerance"] = slope_tol;
  json arr = json::array();
  std::string csv = "index,a,m,n,d_W\n";
  bool ok = true;
  for (const auto& r : rows) {
    json pts = json::array();
    for (const auto& p : r.points) {
      pts.push_back({{"n", p.n}, {"d_W", p.d_W}});
      csv += std::to_string(r.j) + "," + num(r.a) + "," + std::to_string(r.m) + "," +
             std::to_string(p.n) + "," + num(p.d_W) + "\n";
    }
    arr.push_back({{"index", r.j}, {"a", r.a}, {"m", r.m}, {"c", r.c}, {"points", pts},
                   {"slope", r.fit.slope}, {"r2", r.fit.r2},
                   {"expected_slope", r.expected_slope}, {"pass", r.pass}});
    ok = ok && r.pass;
  }
  out["maximizers"] = arr;
  out["pass"] = ok;
  return {{csv, out.dump(2) + "\n"}, ok};
}

TextPair mle_report(const ModelSpec& spec, const std::string& parameter, std::int64_t n,
                    std::int64_t reps, std::uint64_t seed) {
  if (reps < 1) fail(ErrorCode::invalid_argument, "reps must be at least 1");
  if (n < 1 || n > 10'000'000) fail(ErrorCode::invalid_argument, "n must be in [1, 1e7]");
  const MleProblem problem = mle_problem(spec, parameter, n);
  const auto t0 = std::chrono::steady_clock::now();
  const MleExperiment ex = mc_experiment(problem, reps, seed);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json out = header("mle", spec);
  out["parameter"] = parameter;
  out["true_value"] = problem.true_beta;
  out["n"] = n;
  out["reps"] = reps;
  out["seed"] = seed;
  out["m_star"] = ex.m_star;
  out["scale"] = ex.scale;
  out["failures"] = ex.failures;
  out["failure_fraction"] = ex.failure_fraction;
  out["d_K"] = ex.d_K;
  const MleLimit& U = *ex.limit;
  out["limit"] = {{"atom0", U.atom0()}, {"p_negative", U.p_negative()},
                  {"p_positive", U.p_positive()}};
  out["runtime_seconds"] = secs;
  std::string csv = "replicate,k,estimate,rescaled_error,status\n";
  for (std::size_t r = 0; r < ex.observed.size(); ++r) {
    const double b = ex.estimates[r];
    const bool okr = std::isfinite(b);
    csv += std::to_string(r) + "," + std::to_string(ex.observed[r]) + "," +
           (okr ? num(b) : "") + "," + (okr ? num((b - problem.true_beta) * ex.scale) : "") +
           "," + (okr ? "ok" : "unbracketable") + "\n";
  }
  return {csv, out.dump(2) + "\n"};
}

std::string phase_csv(const std::string& model, const std::map<std::string, double>& params,
                      const std::vector<double>& betas, const std::vector<double>& hs) {
  if (betas.empty()) fail(ErrorCode::invalid_argument, "phase needs a beta grid");
  std::string out;
  if (model == "four-spin") {
    check_keys(params, {}, model);
    if (hs.empty()) {
      out = "beta,boundary\n";
      for (double b : betas) out += num(b) + "," + num(four_spin_aux::g(b)) + "\n";
      return out;
    }
    out = "beta,h,boundary,region,landscape_region\n";
    for (double b : betas)
      for (double h : hs) {
        const FourSpinPhase ph = four_spin_region(b, h, true);
        out += num(b) + "," + num(h) + "," + num(ph.boundary) + "," + region_name(ph.region) +
               "," + region_name(*ph.landscape_region) + "\n";
      }
    return out;
  }
  if (model == "p-spin") {
    check_keys(params, {"p"}, model);
    const int p = as_int(param(params, "p", 2.0), "p");
    const std::vector<double> hgrid = hs.empty() ? std::vector<double>{0.0} : hs;
    out = "p,beta,h,region\n";
    for (double b : betas)
      for (double h : hgrid)
        out += std::to_string(p) + "," + num(b) + "," + num(h) + "," +
               region_name(p_spin_region(p, b, h)) + "\n";
    return out;
  }
  if (model == "cubic") {
    check_keys(params, {}, model);
    if (hs.empty()) {
      out = "beta,boundary\n";
      for (double b : betas) out += num(b) + "," + num(cubic_boundary(b)) + "\n";
      return out;
    }
    out = "beta,h,boundary,region\n";
    for (double b : betas) {
      const double g = cubic_boundary(b);
      for (double h : hs)
        out += num(b) + "," + num(h) + "," + num(g) + "," +
               (std::fabs(h - g) <= 1e-9 ? "coexistence" : "unique") + "\n";
    }
    return out;
  }
  if (model == "annealed") {
    check_keys(params, {"d"}, model);
    const int d = as_int(param(params, "d", 3.0), "d");
    const double bc = beta_c(d);
    const std::vector<double> hgrid = hs.empty() ? std::vector<double>{0.0} : hs;
    out = "d,beta,h,beta_c,maximizers,orders\n";
    for (double b : betas)
      for (double h : hgrid) {
        const Landscape L = find_maximizers(build_A(annealed_ising(d, b, h).F));
        std::string orders;
        for (const auto& mx : L.maximizers)
          orders += (orders.empty() ? "" : ";") + std::to_string(2 * mx.m);
        out += std::to_string(d) + "," + num(b) + "," + num(h) + "," + num(bc) + "," +
               std::to_string(L.maximizers.size()) + "," + orders + "\n";
      }
    return out;
  }
  fail(ErrorCode::unsupported, "phase diagrams are available for p-spin, four-spin, cubic "
                               "and annealed, not '" + model + "'");
}

}  // namespace mfspin
