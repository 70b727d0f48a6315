#include <doctest.h>

#include <cmath>

#include "mfspin/error.hpp"
#include "mfspin/smoothfn.hpp"
#include "oracles.hpp"

using namespace mfspin;

namespace {

void check_derivative_chain(const SmoothFunction& f, double lo, double hi, int top) {
  const double h = 1e-5;
  for (int k = 0; k < top; ++k) {
    for (int i = 0; i < 100; ++i) {
      const double x = lo + (hi - lo) * (i + 0.5) / 100.0;
      const double fd = (f.eval(x + h, k) - f.eval(x - h, k)) / (2 * h);
      const double exact = f.eval(x, k + 1);
      CHECK_MESSAGE(std::abs(fd - exact) <= 1e-5 * std::max(std::abs(exact), 1.0),
                    f.label() << " k=" << k << " x=" << x);
    }
  }
}

}  // namespace

TEST_SUITE("smoothfn") {

TEST_CASE("entropy closed forms") {
  CHECK(entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(entropy(0.5, 2) == doctest::Approx(-4.0));
  CHECK(entropy(0.0) == 0.0);
  CHECK(entropy(1.0) == 0.0);
  CHECK(entropy(0.3, 1) == doctest::Approx(std::log(0.7 / 0.3)));
  CHECK(entropy(0.5, 4) == doctest::Approx(-32.0));
}

TEST_CASE("entropy derivative at the endpoints is a domain error") {
  try {
    entropy(0.0, 1);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
  CHECK_THROWS_AS(entropy(1.0, 2), Error);
  CHECK_THROWS_AS(entropy(-0.1), Error);
}

TEST_CASE("entropy and binary entropy agree") {
  for (int i = 1; i <= 1000; ++i) {
    const double a = i / 1001.0;
    CHECK(std::abs(entropy(a) - binary_entropy(2 * a - 1) - std::log(2.0)) <= 1e-13);
  }
}

TEST_CASE("spin polynomial") {
  const SpinPolynomial p({{1.0, 2}});
  CHECK(p.eval(0.5, 2) == doctest::Approx(8.0));
  CHECK(p.eval(0.75, 0) == doctest::Approx(0.25));
  CHECK(p.eval(0.5, 3) == 0.0);
  const SpinPolynomial six({{1.0, 6}});
  const auto t6 = make_function("t^6", 6, [&six](double t, int k) { return six.eval_t(t, k); });
  CHECK(t_of_a_scaling(t6, 0.75, 1) == doctest::Approx(0.375));
  CHECK(six.eval(0.75, 1) == doctest::Approx(0.375));
  CHECK_THROWS_AS(SpinPolynomial({{1.0, 2}, {2.0, 2}}), Error);
  CHECK_THROWS_AS(SpinPolynomial({{1.0, 0}}), Error);
}

TEST_CASE("combine") {
  const auto I = entropy_function();
  const auto same = combine({{1.0, I}});
  for (double a : {0.1, 0.37, 0.5, 0.9}) CHECK(same(a) == doctest::Approx(I(a)).epsilon(1e-15));

  const auto sq = SpinPolynomial({{1.0, 2}}).function();
  const auto A = combine({{0.25, sq}, {1.0, I}});
  CHECK(A.eval(0.5, 2) == doctest::Approx(-2.0));

  const auto cube = SpinPolynomial({{1.0, 3}}).function();
  CHECK(combine({{1.0, cube}, {0.5, sq}})(1.0) == doctest::Approx(1.5));

  for (int i = 1; i < 50; ++i) {
    const double a = i / 50.0;
    for (int k = 0; k < 4; ++k) {
      const double lhs = A.eval(a, k);
      const double rhs = 0.25 * sq.eval(a, k) + I.eval(a, k);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("order limit is enforced") {
  const auto f = make_function("two", 2, [](double a, int k) { return k == 0 ? a * a : 2.0; });
  CHECK(f.eval(0.3, 2) == 2.0);
  try {
    f.eval(0.3, 3);
    FAIL("expected order_exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::order_exceeded);
  }
  CHECK(combine({{1.0, f}, {1.0, entropy_function()}}).max_order() == 2);
}

TEST_CASE("t scaling") {
  const auto E = binary_entropy_function();
  CHECK(t_of_a_scaling(E, 0.3, 0) == doctest::Approx(binary_entropy(-0.4)));
  CHECK(t_of_a_scaling(E, 0.5, 2) == doctest::Approx(-4.0));
  CHECK(t_of_a_scaling(E, 0.5, 2) == doctest::Approx(entropy(0.5, 2)));
  const auto wrapped = from_t(E);
  CHECK(wrapped.eval(0.2, 3) == doctest::Approx(8 * binary_entropy(-0.6, 3)));
}

TEST_CASE("finite differences match the next derivative") {
  check_derivative_chain(entropy_function(), 0.05, 0.95, kExactOrder - 1);
  check_derivative_chain(binary_entropy_function(), -0.9, 0.9, kExactOrder - 1);
  check_derivative_chain(SpinPolynomial({{0.7, 6}, {-0.3, 3}, {0.1, 1}}).function(), 0.0, 1.0,
                         kExactOrder - 1);
  check_derivative_chain(AnnealedG(0.5).function(), 0.02, 0.48, 3);
  check_derivative_chain(AnnealedG(0.5).function(), 0.52, 0.98, 3);
}

TEST_CASE("annealed g") {
  const AnnealedG g(0.5);
  CHECK(g.value(0.0) == 0.0);
  CHECK(g.value(0.3) == doctest::Approx(g.value(0.7)).epsilon(1e-14));
  for (int i = 0; i < 100; ++i) {
    const double a = (i + 0.5) / 100.0;
    CHECK(std::abs(g.value(a) - g.value(1 - a)) <= 1e-12);
  }

  const double beta = 0.5;
  const auto psi = [beta](double s) {
    const double w = 1 - 2 * s;
    const double num = std::exp(-2 * beta) * w + std::sqrt(1 + (std::exp(-4 * beta) - 1) * w * w);
    return std::log(num / (2 * (1 - s)));
  };
  const double ref = oracle::simpson(psi, 0.0, 0.25);
  CHECK(std::abs(g.value(0.25) - ref) <= 1e-10);

  // First derivative is the integrand below 1/2 and its reflection above.
  CHECK(g.value(0.2, 1) == doctest::Approx(psi(0.2)).epsilon(1e-13));
  CHECK(g.value(0.8, 1) == doctest::Approx(-psi(0.2)).epsilon(1e-13));
}

TEST_CASE("annealed g at one half needs a side") {
  const AnnealedG g(0.4);
  try {
    g.value(0.5, 1);
    FAIL("expected side_required");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::side_required);
  }
  const double left = g.value(0.5, 2, Side::left);
  const double right = g.value(0.5, 2, Side::right);
  CHECK(left == doctest::Approx(right).epsilon(1e-9));
  CHECK(g.function().eval(0.5, 2) == doctest::Approx(left));
}

}  // TEST_SUITE
