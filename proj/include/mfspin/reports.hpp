#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mfspin/catalog.hpp"
#include "mfspin/metrics.hpp"

namespace mfspin {

inline constexpr int kSchemaVersion = 1;

// Model from a catalog name and named parameters; unknown names are rejected.
ModelSpec model_from_name(const std::string& name, const std::map<std::string, double>& params);

std::string analyze_json(const ModelSpec& spec);

struct TextPair {
  std::string csv;
  std::string json;
};

// Exact law at size n; delta <= 0 uses the separation radius.
TextPair dist_report(const ModelSpec& spec, std::int64_t n, double delta);

struct RatePoint {
  std::int64_t n;
  double d_W;
};

struct RateRow {
  int j;
  double a;
  int m;
  double c;
  std::vector<RatePoint> points;
  RateFit fit;
  double expected_slope;
  bool pass;
};

// d_W between n^{1/(2m_j)}(X_n/n - a_j) conditioned on the j-th window and
// the tilted limit law, for every maximizer and n.
std::vector<RateRow> rate_study(const SmoothFunction& F, const std::vector<std::int64_t>& ns,
                                double slope_tol);

struct LimitCheck {
  TextPair text;
  bool slopes_ok;
};
LimitCheck limit_check_report(const ModelSpec& spec, const std::vector<std::int64_t>& ns,
                              double slope_tol);

TextPair mle_report(const ModelSpec& spec, const std::string& parameter, std::int64_t n,
                    std::int64_t reps, std::uint64_t seed);

std::string phase_csv(const std::string& model, const std::map<std::string, double>& params,
                      const std::vector<double>& betas, const std::vector<double>& hs);

}  // namespace mfspin
