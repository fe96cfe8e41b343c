#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qbivar/errors.hpp"
#include "qbivar/numeric.hpp"

using namespace qbd;

TEST_CASE("integrate on smooth integrands") {
  const NumericConfig cfg;
  CHECK(integrate_checked([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, cfg) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_checked([](double x) { return std::exp(x); }, -1.0, 2.0, cfg) ==
        doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-12));
  const QuadResult r = integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, cfg);
  CHECK(r.converged);
  CHECK(r.evaluations >= 15);
  CHECK(r.value == doctest::Approx(std::numbers::pi / 4).epsilon(1e-13));
}

TEST_CASE("integrate reports failure instead of returning a silent value") {
  NumericConfig cfg;
  cfg.quad_max_depth = 1;
  cfg.quad_rel_tol = 1e-14;
  cfg.quad_abs_tol = 1e-16;
  auto wiggly = [](double x) { return std::sin(400.0 * x); };
  CHECK_FALSE(integrate(wiggly, 0.0, 3.0, cfg).converged);
  CHECK_THROWS_AS(integrate_checked(wiggly, 0.0, 3.0, cfg), ConvergenceError);
  CHECK_THROWS_AS(integrate_checked([](double) { return NAN; }, 0.0, 1.0, NumericConfig{}),
                  ConvergenceError);
}

TEST_CASE("NumericConfig validation and tightening") {
  NumericConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  const NumericConfig t = cfg.tightened(1e-3);
  CHECK(t.quad_rel_tol == doctest::Approx(1e-11));
  CHECK(t.quad_abs_tol == doctest::Approx(1e-13));
  CHECK(t.root_tol == cfg.root_tol);
  cfg.quad_rel_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.root_max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("integrate_unit reproduces the complete beta function") {
  const NumericConfig cfg;
  auto one = [](double, double) { return 1.0; };
  for (double e0 : {-0.9, -0.5, 0.0, 0.4864, 2.0}) {
    for (double e1 : {-0.95, -0.3, 0.0, 0.9946, 3.5}) {
      const double want = boost::math::beta(e0 + 1.0, e1 + 1.0);
      CHECK_MESSAGE(std::abs(integrate_unit(one, e0, e1, cfg) - want) <= 1e-9 * want,
                    "e0=" << e0 << " e1=" << e1);
    }
  }
}

TEST_CASE("integrate_power_weighted on sub-intervals") {
  const NumericConfig cfg;
  auto one = [](double, double) { return 1.0; };
  // Incomplete beta differences from Boost.
  const double a = 0.3, b = 0.6;
  const double want = boost::math::beta(a, b, 0.8) - boost::math::beta(a, b, 0.1);
  CHECK(integrate_power_weighted(one, a - 1.0, b - 1.0, 0.1, 0.8, cfg) ==
        doctest::Approx(want).epsilon(1e-10));
  // Logarithmic weights away from the singular endpoints.
  CHECK(integrate_power_weighted(one, -1.0, 0.0, 0.2, 0.7, cfg) ==
        doctest::Approx(std::log(0.7 / 0.2)).epsilon(1e-11));
  CHECK(integrate_power_weighted(one, 0.0, -1.0, 0.2, 0.9, cfg) ==
        doctest::Approx(std::log(0.8 / 0.1)).epsilon(1e-11));
  // The smooth factor receives (t, 1 - t).
  auto g = [](double t, double tb) { return t * tb; };
  CHECK(integrate_power_weighted(g, 0.0, 0.0, 0.0, 1.0, cfg) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(integrate_power_weighted(one, 1.0, 1.0, 0.4, 0.4, cfg) == 0.0);
}

TEST_CASE("integrate_power_weighted rejects divergent or malformed requests") {
  const NumericConfig cfg;
  auto one = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(integrate_power_weighted(one, -1.0, 0.0, 0.0, 0.5, cfg), DomainError);
  CHECK_THROWS_AS(integrate_power_weighted(one, 0.0, -1.2, 0.5, 1.0, cfg), DomainError);
  CHECK_THROWS_AS(integrate_power_weighted(one, 0.0, 0.0, 0.6, 0.5, cfg), DomainError);
  CHECK_THROWS_AS(integrate_power_weighted(one, 0.0, 0.0, -0.1, 0.5, cfg), DomainError);
}

TEST_CASE("find_root against bisection") {
  auto f = [](double x) { return std::cos(x) - x; };
  boost::math::tools::eps_tolerance<double> eps(52);
  const auto [lo, hi] = boost::math::tools::bisect(f, 0.0, 1.0, eps);
  const RootTolerance tol;
  const double r = find_root(f, 0.0, 1.0, f(0.0), f(1.0), tol);
  CHECK(std::abs(r - 0.5 * (lo + hi)) < 1e-12);

  auto cubic = [](double x) { return x * x * x - 2.0 * x - 5.0; };
  const double r3 = find_root(cubic, 2.0, 3.0, cubic(2.0), cubic(3.0), tol);
  CHECK(r3 == doctest::Approx(2.0945514815423265).epsilon(1e-14));
  // Bracket ends given in either order of sign.
  auto neg = [&](double x) { return -cubic(x); };
  CHECK(find_root(neg, 2.0, 3.0, neg(2.0), neg(3.0), tol) == doctest::Approx(r3).epsilon(1e-14));
}

TEST_CASE("find_root failure modes") {
  auto f = [](double x) { return x * x + 1.0; };
  CHECK_THROWS_AS(find_root(f, -1.0, 1.0, f(-1.0), f(1.0), RootTolerance{}), ConvergenceError);
  RootTolerance tight;
  tight.max_iter = 2;
  tight.xtol = 1e-300;
  auto g = [](double x) { return std::atan(x - 0.3); };
  CHECK_THROWS_AS(find_root(g, -5.0, 50.0, g(-5.0), g(50.0), tight), ConvergenceError);
  // An endpoint that is already a root is returned as is.
  CHECK(find_root(g, 0.3, 1.0, 0.0, g(1.0), RootTolerance{}) == 0.3);
}
