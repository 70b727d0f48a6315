#include <doctest.h>

#include <cmath>
#include <random>

#include "mfspin/catalog.hpp"
#include "mfspin/error.hpp"
#include "mfspin/landscape.hpp"
#include "oracles.hpp"

using namespace mfspin;

namespace {

Landscape landscape(const ModelSpec& spec) { return find_maximizers(build_A(spec.F)); }

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("p-spin landscapes") {
  auto L = landscape(p_spin(2, 0.0, 0.0));
  REQUIRE(L.maximizers.size() == 1);
  CHECK(L.maximizers[0].a == doctest::Approx(0.5));
  CHECK(L.maximizers[0].m == 1);

  const auto crit = p_spin(2, 0.5, 0.0);
  L = landscape(crit);
  REQUIRE(L.maximizers.size() == 1);
  CHECK(L.maximizers[0].m == 2);
  CHECK(build_A(crit.F).eval(0.5, 4) == doctest::Approx(-32.0));

  L = landscape(p_spin(2, 1.0, 0.0));
  REQUIRE(L.maximizers.size() == 2);
  const double t = oracle::curie_weiss_root(2.0);
  CHECK(std::abs(L.maximizers[1].a - (1 + t) / 2) <= 1e-9);
  CHECK(t == doctest::Approx(0.9575).epsilon(1e-4));

  // p = 1 folds beta into the field.
  CHECK(p_spin(1, 0.3, 0.2).F(0.9) == doctest::Approx(0.5 * 0.8));
}

TEST_CASE("p-spin regions") {
  CHECK(p_spin_region(2, 0.25, 0) == PSpinRegion::R1);
  CHECK(p_spin_region(2, 0.5, 0) == PSpinRegion::R3);
  CHECK(p_spin_region(2, 1.0, 0) == PSpinRegion::R2);
  CHECK(std::string(region_name(PSpinRegion::R2)) == "R2");
}

TEST_CASE("cubic model") {
  auto L = landscape(cubic(0.4, 0.3));
  REQUIRE(L.maximizers.size() == 1);
  CHECK(L.maximizers[0].m == 1);
  CHECK(std::abs(L.maximizers[0].a - 0.5) > 1e-3);

  L = landscape(cubic(0.1, 0.0));
  REQUIRE(L.maximizers.size() == 1);

  const double beta = 0.4;
  const double h = cubic_boundary(beta);
  L = landscape(cubic(beta, h));
  REQUIRE(L.maximizers.size() == 2);
  CHECK(std::abs(L.maximizers[0].a - 0.5) <= 1e-6);
  CHECK(L.maximizers[1].a > 0.5);
  CHECK(std::abs(L.maximizers[0].value - L.maximizers[1].value) <= 1e-9);
}

TEST_CASE("four-spin auxiliary functions") {
  using namespace four_spin_aux;
  CHECK(q(1e-9) == doctest::Approx(1.0 / 12).epsilon(1e-9));
  CHECK(q(0.0) == doctest::Approx(1.0 / 12));
  CHECK(std::abs(q(0.3 - 1e-12) - q(0.3 + 1e-12)) <= 1e-10);
  CHECK_THROWS_AS(q(1.0), Error);
  for (double beta : {0.02, 0.05, 1.0 / 12}) CHECK(std::abs(g(beta) - 0.5) <= 1e-9);
  for (double beta : {0.1, 0.2, 0.5}) CHECK(ghat(beta) <= g(beta));
  CHECK(g_beta_t(0.2, 1e-8) == doctest::Approx(0.5));
  // Direct evaluation away from the series region.
  const double t = 0.6;
  const double E = -((1 + t) / 2 * std::log(1 + t) + (1 - t) / 2 * std::log(1 - t));
  CHECK(g_beta_t(0.2, t) == doctest::Approx(-E / (t * t) - 0.2 * t * t).epsilon(1e-13));
  CHECK(ghat_beta_t(0.2, t) == doctest::Approx(std::atanh(t) / (2 * t) - 0.4 * t * t).epsilon(1e-13));
}

TEST_CASE("four-spin regions") {
  auto ph = four_spin_region(0.05, 0.3);
  CHECK(ph.region == FourSpinRegion::R1);
  CHECK(ph.landscape_region == FourSpinRegion::R1);

  ph = four_spin_region(0.05, 0.5);
  CHECK(ph.region == FourSpinRegion::R4);
  CHECK(ph.landscape_region == FourSpinRegion::R4);
  const auto L = landscape(four_spin(0.05, 0.5));
  REQUIRE(L.maximizers.size() == 1);
  CHECK(L.maximizers[0].m == 2);

  ph = four_spin_region(1.0 / 12, 0.5);
  CHECK(ph.region == FourSpinRegion::special);
  CHECK(ph.landscape_region == FourSpinRegion::special);

  ph = four_spin_region(0.2, 0.7);
  CHECK(ph.region == FourSpinRegion::R2);
  CHECK(landscape(four_spin(0.2, 0.7)).maximizers.size() == 2);

  ph = four_spin_region(0.2, four_spin_aux::g(0.2));
  CHECK(ph.region == FourSpinRegion::R3);
  CHECK(ph.landscape_region == FourSpinRegion::R3);
}

TEST_CASE("four-spin grid agrees with the landscape") {
  for (int i = 1; i <= 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double beta = 0.02 * i, h = 0.3 + 0.04 * j;
      const auto ph = four_spin_region(beta, h);
      if (std::abs(h - ph.boundary) <= 1e-9) continue;
      CHECK_MESSAGE(ph.landscape_region == ph.region, "beta=" << beta << " h=" << h);
    }
  }
}

TEST_CASE("four-spin R2 wells are quadratic") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> bs(0.09, 0.5), lift(0.01, 0.4);
  for (int i = 0; i < 20; ++i) {
    const double beta = bs(rng);
    const double h = four_spin_aux::g(beta) + lift(rng);
    const auto spec = four_spin(beta, h);
    const auto A = build_A(spec.F);
    const auto L = find_maximizers(A);
    REQUIRE(L.maximizers.size() == 2);
    for (const auto& mx : L.maximizers) CHECK(A.eval(mx.a, 2) < 0);
  }
}

TEST_CASE("six-spin") {
  const auto k = six_spin_constants();
  CHECK(k.beta == doctest::Approx(0.12576721508979255).epsilon(1e-14));
  CHECK(k.h == doctest::Approx(0.038601979135189946).epsilon(1e-14));
  const auto spec = six_spin();
  const auto A = build_A(spec.F);
  // Both wells have the same height and t* = 0.9 is stationary.
  const double a = 0.5 * (1 + 0.9);
  CHECK(std::abs(A(a) - A(0.5)) <= 1e-12);
  CHECK(std::abs(A.eval(a, 1)) <= 1e-12);
  CHECK(A.eval(0.5, 4) / 16.0 == doctest::Approx(-2.0));
  const auto L = find_maximizers(A);
  REQUIRE(L.maximizers.size() == spec.expected.size());
  for (std::size_t j = 0; j < L.maximizers.size(); ++j) {
    CHECK(std::abs(L.maximizers[j].a - spec.expected[j].a) <= 1e-7);
    CHECK(L.maximizers[j].m == spec.expected[j].m);
  }
}

TEST_CASE("annealed model") {
  CHECK(std::abs(beta_c(3) - 0.5 * std::log(3.0)) <= 1e-12);
  CHECK(std::abs(beta_c(4) - 0.5 * std::log(2.0)) <= 1e-12);
  CHECK_THROWS_AS(annealed_ising(2, 0.5, 0), Error);
  const auto L = landscape(annealed_ising(3, 1.2 * beta_c(3), 0.0));
  REQUIRE(L.maximizers.size() == 2);
  CHECK(std::abs(L.maximizers[0].a + L.maximizers[1].a - 1) <= 1e-8);
  const auto sub = landscape(annealed_ising(3, 0.8 * beta_c(3), 0.0));
  REQUIRE(sub.maximizers.size() == 1);
  CHECK(sub.maximizers[0].a == doctest::Approx(0.5));
}

TEST_CASE("mle problems from models") {
  const auto P = mle_problem(p_spin(2, 0.3, 0.2), "h", 100);
  CHECK(P.true_beta == 0.2);
  CHECK(P.f(0.75) == doctest::Approx(0.5));
  CHECK(P.g(0.75) == doctest::Approx(0.3 * 0.25));
  try {
    mle_problem(annealed_ising(3, 0.5, 0.1), "beta", 100);
    FAIL("expected unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported);
  }
  const auto Q = mle_problem(annealed_ising(3, 0.5, 0.1), "h", 100);
  CHECK(Q.f(0.75) == doctest::Approx(1.5));
}

}  // TEST_SUITE
