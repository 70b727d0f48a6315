#include <doctest.h>

#include <cmath>

#include "mfspin/catalog.hpp"
#include "mfspin/error.hpp"
#include "mfspin/gibbs.hpp"
#include "mfspin/limitlaw.hpp"
#include "mfspin/metrics.hpp"
#include "oracles.hpp"

using namespace mfspin;

namespace {

SmoothFunction poly(std::vector<SpinTerm> terms) { return SpinPolynomial(std::move(terms)).function(); }

double total(const FiniteGibbs& G) {
  long double s = 0;
  for (double p : G.pmf_table()) s += p;
  return static_cast<double>(s);
}

}  // namespace

TEST_SUITE("gibbs") {

TEST_CASE("pure binomial") {
  const auto G = FiniteGibbs::build(constant_function(0.0), 3);
  const double expect[] = {0.125, 0.375, 0.375, 0.125};
  for (int k = 0; k <= 3; ++k) CHECK(G.pmf(k) == doctest::Approx(expect[k]).epsilon(1e-15));
  CHECK(G.cdf(1) == doctest::Approx(0.5));
  CHECK(G.moment(1) == doctest::Approx(0.5));
  const auto bf = brute_force_oracle(constant_function(0.0), 3);
  for (int k = 0; k <= 3; ++k) CHECK(bf[k] == doctest::Approx(expect[k]));
}

TEST_CASE("two spins by hand") {
  const auto G = FiniteGibbs::build(poly({{0.5, 2}}), 2);
  const double e = std::exp(1.0);
  CHECK(G.pmf(1) == doctest::Approx(2 / (2 + 2 * e)).epsilon(1e-14));

  // beta = 0.3, h = 0.1: weights e^{0.4}, 2, e^{0.8}
  const auto bf = brute_force_oracle(poly({{0.3, 2}, {0.1, 1}}), 2);
  const double w0 = std::exp(0.4), w1 = 2.0, w2 = std::exp(0.8), z = w0 + w1 + w2;
  CHECK(bf[0] == doctest::Approx(w0 / z).epsilon(1e-14));
  CHECK(bf[1] == doctest::Approx(w1 / z).epsilon(1e-14));
  CHECK(bf[2] == doctest::Approx(w2 / z).epsilon(1e-14));
}

TEST_CASE("exact law matches spin enumeration") {
  const std::vector<SmoothFunction> models = {
      poly({{0.3, 2}, {0.1, 1}}), poly({{1.0, 2}}), poly({{0.4, 3}, {0.3, 2}}),
      four_spin(0.2, 0.7).F, six_spin().F};
  for (const auto& F : models) {
    for (int n = 1; n <= 12; ++n) {
      const auto G = FiniteGibbs::build(F, n);
      const auto ref = oracle::enumerate_spins([&](double a) { return F(a); }, n);
      const auto bf = brute_force_oracle(F, n);
      for (int k = 0; k <= n; ++k) {
        CHECK(std::abs(G.pmf(k) - ref[k]) <= 1e-12);
        CHECK(std::abs(bf[k] - ref[k]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("normalization, symmetry and shift invariance") {
  for (std::int64_t n : {10, 1000, 1000000}) {
    const auto G = FiniteGibbs::build(poly({{0.7, 2}, {0.1, 1}}), n);
    CHECK(std::abs(total(G) - 1) <= 1e-12);
  }
  const auto F = poly({{0.2, 4}, {0.6, 2}});
  const auto G = FiniteGibbs::build(F, 501);
  for (int k = 0; k <= 501; ++k) CHECK(std::abs(G.pmf(k) - G.pmf(501 - k)) <= 1e-13);
  const auto H = FiniteGibbs::build(combine({{1.0, F}, {1.0, constant_function(2.0)}}), 501);
  for (int k = 0; k <= 501; ++k) CHECK(std::abs(G.pmf(k) - H.pmf(k)) <= 1e-12);
}

TEST_CASE("window mass") {
  const auto G = FiniteGibbs::build(poly({{1.0, 2}}), 2000);
  CHECK(window_mass(G, make_window(2000, 0.5, 0.5)) == doctest::Approx(1.0));
  const double t = oracle::curie_weiss_root(2.0);
  CHECK(std::abs(window_mass(G, make_window(2000, (1 + t) / 2, 0.1)) - 0.5) <= 0.02);

  const auto H = FiniteGibbs::build(poly({{0.25, 2}}), 2000);
  CHECK(window_mass(H, make_window(2000, 0.5, 0.1)) >= 1 - 1e-8);
}

TEST_CASE("window endpoints") {
  const auto w = make_window(10, 0.31, 0.02);
  CHECK(w.k_lo == 3);
  CHECK(w.k_hi == 3);
  const auto G = FiniteGibbs::build(poly({{0.2, 2}}), 10);
  CHECK(conditional_moment(G, w, 2) == doctest::Approx(0.0001).epsilon(1e-9));
  CHECK(conditional_moment(G, w, 3) == doctest::Approx(1e-6).epsilon(1e-9));
  const auto clipped = make_window(10, 0.05, 0.2);
  CHECK(clipped.k_lo == 0);
  try {
    window_mass(G, make_window(10, 0.33, 0.01));
    FAIL("expected empty_window");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_window);
  }
}

TEST_CASE("conditional moment rates") {
  for (auto [beta, slope] : {std::pair{0.25, -1.0}, std::pair{0.5, -0.5}}) {
    std::vector<std::pair<double, double>> pts;
    for (std::int64_t n : {1000, 10000, 100000}) {
      const auto G = FiniteGibbs::build(poly({{beta, 2}}), n);
      pts.emplace_back(n, conditional_moment(G, make_window(n, 0.5, 0.25), 2));
    }
    CHECK(std::abs(rate_fit(pts).slope - slope) <= 0.1);
  }
}

TEST_CASE("scaled conditional law") {
  const auto G1 = FiniteGibbs::build(constant_function(0.0), 1);
  const auto law = scaled_conditional_law(G1, make_window(1, 0.5, 0.5), 1);
  REQUIRE(law.atoms.size() == 2);
  CHECK(law.atoms[0] == doctest::Approx(-0.5));
  CHECK(law.atoms[1] == doctest::Approx(0.5));
  CHECK(law.masses[0] == doctest::Approx(0.5));

  const std::int64_t n = 10000;
  const auto G = FiniteGibbs::build(poly({{0.25, 2}}), n);
  CHECK(d_W(scaled_conditional_law(G, make_window(n, 0.5, 0.25), 1), normal_law(0, 0.5)) <=
        0.05);
  const auto C = FiniteGibbs::build(poly({{0.5, 2}}), n);
  CHECK(d_W(scaled_conditional_law(C, make_window(n, 0.5, 0.25), 2),
            TiltedLaw(-4.0 / 3.0, 2, 0).as_law()) <= 0.05);
}

TEST_CASE("sampling") {
  const auto G1 = FiniteGibbs::build(constant_function(0.0), 1);
  const auto draws = sample(G1, 7, 100000);
  double ones = 0;
  for (auto x : draws) ones += static_cast<double>(x);
  CHECK(std::abs(ones / 1e5 - 0.5) <= 0.005);
  CHECK(sample(G1, 99, 1000) == sample(G1, 99, 1000));
  CHECK(sample(G1, 99, 1000) != sample(G1, 100, 1000));

  const std::int64_t n = 500;
  const auto G = FiniteGibbs::build(poly({{1.0, 2}}), n);
  std::vector<double> xs;
  for (auto k : sample(G, 2024, 10000)) xs.push_back(static_cast<double>(k));
  std::vector<double> atoms(n + 1);
  for (std::int64_t k = 0; k <= n; ++k) atoms[k] = static_cast<double>(k);
  CHECK(d_K(empirical_law(xs), make_discrete(atoms, G.pmf_table())) <= 0.02);
}

TEST_CASE("window partition") {
  const auto G = FiniteGibbs::build(poly({{0.6, 2}}), 300);
  CHECK(window_partition(G, make_window(300, 0.5, 0.5)) == doctest::Approx(G.log_Z()));
  const auto w = make_window(300, 0.5, 0.1);
  CHECK(std::exp(window_partition(G, w) - G.log_Z()) == doctest::Approx(window_mass(G, w)));
}

TEST_CASE("concentration is geometric") {
  // With doubling sizes, geometric decay makes each successive ratio smaller
  // than the previous one.
  std::vector<double> outside;
  for (std::int64_t n : {200, 400, 800, 1600}) {
    const auto G = FiniteGibbs::build(poly({{0.25, 2}}), n);
    outside.push_back(1 - window_mass(G, make_window(n, 0.5, 0.1)));
    REQUIRE(outside.back() > 0);
  }
  double prev_ratio = 1;
  for (std::size_t i = 1; i < outside.size(); ++i) {
    const double ratio = outside[i] / outside[i - 1];
    CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
  }
}

TEST_CASE("perturbation empties the disfavored well") {
  const double t = oracle::curie_weiss_root(2.0);
  double last = 1;
  for (std::int64_t n : {1000, 10000, 100000}) {
    const auto G = FiniteGibbs::build(poly({{1.0, 2}}), n, Perturbation{poly({{1.0, 1}}), 1});
    const double low = window_mass(G, make_window(n, (1 - t) / 2, 0.01));
    CHECK(low < last);
    last = low;
  }
  CHECK(last < 0.01);
}

TEST_CASE("stirling residual") {
  CHECK(std::abs(stirling_residual(100, 50)) <= 1e-3);
  CHECK(std::abs(stirling_residual(10000, 5000)) <= 1e-7);
  for (int k = 5; k <= 95; ++k) CHECK(stirling_residual(100, k) == stirling_residual(100, 100 - k));
  CHECK_THROWS_AS(stirling_residual(100, 2), Error);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(FiniteGibbs::build(constant_function(0.0), 0), Error);
  CHECK_THROWS_AS(FiniteGibbs::build(constant_function(0.0), 10'000'001), Error);
  try {
    brute_force_oracle(constant_function(0.0), 16);
    FAIL("expected size error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::size);
  }
  const auto G = FiniteGibbs::build(constant_function(0.0), 3);
  CHECK_THROWS_AS(G.pmf(4), Error);
  CHECK_THROWS_AS(sample(G, 1, 0), Error);
}

TEST_CASE("csv export") {
  const auto csv = gibbs_csv(FiniteGibbs::build(constant_function(0.0), 3));
  CHECK(csv.rfind("k,k_over_n,pmf,cdf\n", 0) == 0);
  CHECK(csv.find("1,0.33333333333333331,0.375,0.5\n") != std::string::npos);
}

}  // TEST_SUITE
