#include <cstdlib>
#include <cstring>
#include <map>
#include <new>
#include <string>

#include "mfspin.h"
#include "mfspin/catalog.hpp"
#include "mfspin/error.hpp"
#include "mfspin/gibbs.hpp"
#include "mfspin/reports.hpp"

struct mfs_model {
  mfspin::ModelSpec spec;
};

struct mfs_landscape {
  mfspin::Landscape landscape;
};

struct mfs_gibbs {
  mfspin::FiniteGibbs gibbs;
};

namespace {

thread_local std::string last_error;

template <class Fn>
mfs_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return MFS_OK;
  } catch (const mfspin::Error& e) {
    last_error = e.what();
    return static_cast<mfs_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MFS_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MFS_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) mfspin::fail(mfspin::ErrorCode::invalid_argument, std::string("null ") + what);
}

std::map<std::string, double> params_of(const char* const* keys, const double* values,
                                        size_t count) {
  std::map<std::string, double> p;
  if (count) {
    need(keys, "parameter keys");
    need(values, "parameter values");
  }
  for (size_t i = 0; i < count; ++i) {
    need(keys[i], "parameter key");
    p[keys[i]] = values[i];
  }
  return p;
}

}  // namespace

extern "C" {

const char* mfs_last_error(void) { return last_error.c_str(); }

const char* mfs_status_name(mfs_status status) {
  if (status == MFS_OK) return "ok";
  if (status == MFS_E_INTERNAL) return "internal";
  return mfspin::error_code_name(static_cast<mfspin::ErrorCode>(status));
}

void mfs_string_free(char* s) { std::free(s); }

mfs_status mfs_model_create(const char* name, const char* const* keys, const double* values,
                            size_t count, mfs_model** out) {
  return guarded([&] {
    need(name, "model name");
    need(out, "output pointer");
    *out = new mfs_model{mfspin::model_from_name(name, params_of(keys, values, count))};
  });
}

mfs_status mfs_model_create_terms(const double* coefficients, const int* powers, size_t count,
                                  mfs_model** out) {
  return guarded([&] {
    need(out, "output pointer");
    need(coefficients, "coefficients");
    need(powers, "powers");
    std::vector<mfspin::SpinTerm> terms;
    for (size_t i = 0; i < count; ++i) terms.push_back({coefficients[i], powers[i]});
    *out = new mfs_model{mfspin::inline_model(terms)};
  });
}

void mfs_model_destroy(mfs_model* model) { delete model; }

mfs_status mfs_model_eval(const mfs_model* model, double a, int k, double* out) {
  return guarded([&] {
    need(model, "model");
    need(out, "output pointer");
    *out = model->spec.F.eval(a, k);
  });
}

mfs_status mfs_landscape_create(const mfs_model* model, mfs_landscape** out) {
  return guarded([&] {
    need(model, "model");
    need(out, "output pointer");
    *out = new mfs_landscape{mfspin::find_maximizers(mfspin::build_A(model->spec.F))};
  });
}

void mfs_landscape_destroy(mfs_landscape* landscape) { delete landscape; }

size_t mfs_landscape_count(const mfs_landscape* landscape) {
  return landscape ? landscape->landscape.maximizers.size() : 0;
}

mfs_status mfs_landscape_get(const mfs_landscape* landscape, size_t j, double* a, int* m,
                             double* c, double* nu) {
  return guarded([&] {
    need(landscape, "landscape");
    if (j >= landscape->landscape.maximizers.size())
      mfspin::fail(mfspin::ErrorCode::index, "maximizer index out of range");
    const auto& mx = landscape->landscape.maximizers[j];
    if (a) *a = mx.a;
    if (m) *m = mx.m;
    if (c) *c = mx.c;
    if (nu) *nu = mx.nu;
  });
}

int mfs_landscape_m_star(const mfs_landscape* landscape) {
  return landscape ? landscape->landscape.m_star : 0;
}

double mfs_landscape_delta_star(const mfs_landscape* landscape) {
  return landscape ? landscape->landscape.delta_star : 0.0;
}

mfs_status mfs_gibbs_create(const mfs_model* model, int64_t n, mfs_gibbs** out) {
  return guarded([&] {
    need(model, "model");
    need(out, "output pointer");
    *out = new mfs_gibbs{mfspin::FiniteGibbs::build(model->spec.F, n)};
  });
}

void mfs_gibbs_destroy(mfs_gibbs* gibbs) { delete gibbs; }

mfs_status mfs_gibbs_pmf(const mfs_gibbs* gibbs, int64_t k, double* out) {
  return guarded([&] {
    need(gibbs, "gibbs");
    need(out, "output pointer");
    *out = gibbs->gibbs.pmf(k);
  });
}

mfs_status mfs_gibbs_cdf(const mfs_gibbs* gibbs, int64_t k, double* out) {
  return guarded([&] {
    need(gibbs, "gibbs");
    need(out, "output pointer");
    *out = gibbs->gibbs.cdf(k);
  });
}

double mfs_gibbs_log_z(const mfs_gibbs* gibbs) { return gibbs ? gibbs->gibbs.log_Z() : 0.0; }

mfs_status mfs_analyze(const mfs_model* model, char** json_out) {
  return guarded([&] {
    need(model, "model");
    need(json_out, "output pointer");
    *json_out = dup(mfspin::analyze_json(model->spec));
  });
}

mfs_status mfs_dist(const mfs_model* model, int64_t n, double delta, char** csv_out,
                    char** json_out) {
  return guarded([&] {
    need(model, "model");
    const auto r = mfspin::dist_report(model->spec, n, delta);
    if (csv_out) *csv_out = dup(r.csv);
    if (json_out) *json_out = dup(r.json);
  });
}

mfs_status mfs_limit_check(const mfs_model* model, const int64_t* ns, size_t count,
                           double slope_tol, char** csv_out, char** json_out, int* slopes_ok) {
  return guarded([&] {
    need(model, "model");
    need(ns, "size list");
    const auto r = mfspin::limit_check_report(model->spec, std::vector<std::int64_t>(ns, ns + count),
                                              slope_tol);
    if (csv_out) *csv_out = dup(r.text.csv);
    if (json_out) *json_out = dup(r.text.json);
    if (slopes_ok) *slopes_ok = r.slopes_ok ? 1 : 0;
  });
}

mfs_status mfs_mle(const mfs_model* model, const char* parameter, int64_t n, int64_t reps,
                   uint64_t seed, char** csv_out, char** json_out) {
  return guarded([&] {
    need(model, "model");
    need(parameter, "parameter name");
    const auto r = mfspin::mle_report(model->spec, parameter, n, reps, seed);
    if (csv_out) *csv_out = dup(r.csv);
    if (json_out) *json_out = dup(r.json);
  });
}

mfs_status mfs_phase(const char* model_name, const char* const* keys, const double* values,
                     size_t count, const double* betas, size_t n_betas, const double* hs,
                     size_t n_hs, char** csv_out) {
  return guarded([&] {
    need(model_name, "model name");
    need(csv_out, "output pointer");
    if (n_betas) need(betas, "beta grid");
    if (n_hs) need(hs, "h grid");
    *csv_out = dup(mfspin::phase_csv(model_name, params_of(keys, values, count),
                                     std::vector<double>(betas, betas + n_betas),
                                     std::vector<double>(hs, hs + n_hs)));
  });
}

}  // extern "C"
