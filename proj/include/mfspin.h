#ifndef MFSPIN_H
#define MFSPIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MFS_API __declspec(dllexport)
#else
#define MFS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mfs_status {
  MFS_OK = 0,
  MFS_E_INVALID_ARGUMENT = 1,
  MFS_E_DOMAIN = 2,
  MFS_E_ORDER_EXCEEDED = 3,
  MFS_E_SIDE_REQUIRED = 4,
  MFS_E_KINK = 5,
  MFS_E_NO_INTERIOR_MAXIMUM = 6,
  MFS_E_CLASSIFICATION = 7,
  MFS_E_INDEX = 8,
  MFS_E_EMPTY_WINDOW = 9,
  MFS_E_SIZE = 10,
  MFS_E_HYPOTHESIS = 11,
  MFS_E_UNBRACKETABLE = 12,
  MFS_E_UNSUPPORTED = 13,
  MFS_E_IO = 14,
  MFS_E_INTERNAL = 99
} mfs_status;

typedef struct mfs_model mfs_model;
typedef struct mfs_landscape mfs_landscape;
typedef struct mfs_gibbs mfs_gibbs;

/* Message of the last failure on this thread; empty after success. */
MFS_API const char* mfs_last_error(void);
MFS_API const char* mfs_status_name(mfs_status status);
/* Strings returned through char** outputs are owned by the caller. */
MFS_API void mfs_string_free(char* s);

/* Catalog model by name: p-spin, cubic, four-spin, six-spin, annealed. */
MFS_API mfs_status mfs_model_create(const char* name, const char* const* keys,
                                    const double* values, size_t count, mfs_model** out);
/* F(a) = sum_i coefficients[i] * (2a - 1)^powers[i] */
MFS_API mfs_status mfs_model_create_terms(const double* coefficients, const int* powers,
                                          size_t count, mfs_model** out);
MFS_API void mfs_model_destroy(mfs_model* model);
/* k-th derivative of F at a. */
MFS_API mfs_status mfs_model_eval(const mfs_model* model, double a, int k, double* out);

MFS_API mfs_status mfs_landscape_create(const mfs_model* model, mfs_landscape** out);
MFS_API void mfs_landscape_destroy(mfs_landscape* landscape);
MFS_API size_t mfs_landscape_count(const mfs_landscape* landscape);
MFS_API mfs_status mfs_landscape_get(const mfs_landscape* landscape, size_t j, double* a,
                                     int* m, double* c, double* nu);
MFS_API int mfs_landscape_m_star(const mfs_landscape* landscape);
MFS_API double mfs_landscape_delta_star(const mfs_landscape* landscape);

MFS_API mfs_status mfs_gibbs_create(const mfs_model* model, int64_t n, mfs_gibbs** out);
MFS_API void mfs_gibbs_destroy(mfs_gibbs* gibbs);
MFS_API mfs_status mfs_gibbs_pmf(const mfs_gibbs* gibbs, int64_t k, double* out);
MFS_API mfs_status mfs_gibbs_cdf(const mfs_gibbs* gibbs, int64_t k, double* out);
MFS_API double mfs_gibbs_log_z(const mfs_gibbs* gibbs);

/* Reports. JSON carries a schema_version field; CSV numbers use 17 digits. */
MFS_API mfs_status mfs_analyze(const mfs_model* model, char** json_out);
/* delta <= 0 selects the separation radius of the landscape. */
MFS_API mfs_status mfs_dist(const mfs_model* model, int64_t n, double delta, char** csv_out,
                            char** json_out);
/* slopes_ok is set to 1 when every fitted slope is within slope_tol. */
MFS_API mfs_status mfs_limit_check(const mfs_model* model, const int64_t* ns, size_t count,
                                   double slope_tol, char** csv_out, char** json_out,
                                   int* slopes_ok);
MFS_API mfs_status mfs_mle(const mfs_model* model, const char* parameter, int64_t n,
                           int64_t reps, uint64_t seed, char** csv_out, char** json_out);
MFS_API mfs_status mfs_phase(const char* model_name, const char* const* keys,
                             const double* values, size_t count, const double* betas,
                             size_t n_betas, const double* hs, size_t n_hs, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif
