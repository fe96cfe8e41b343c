#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qbivar/errors.hpp"
#include "qbivar/model.hpp"

using namespace qbd;
using std::numbers::pi;

namespace {

// Q(u) - Q(0) as a direct tanh-sinh integral of the quantile density.
double quantile_oracle(const MarginalParams& p, double u) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto q = [&](double t) { return p.c * std::pow(t, p.alpha) * std::pow(1.0 - t, p.beta); };
  return p.location + ts.integrate(q, 0.0, u, 1e-14);
}

// Inverse of Q by plain bisection on the oracle quantile.
double cdf_oracle(const MarginalParams& p, double x) {
  auto g = [&](double u) { return quantile_oracle(p, u) - x; };
  boost::math::tools::eps_tolerance<double> tol(48);
  const auto [lo, hi] = boost::math::tools::bisect(g, 1e-15, 1.0 - 1e-15, tol);
  return 0.5 * (lo + hi);
}

// λ1 and λ2 for location 0 from the beta function.
double lam1(const MarginalParams& p) { return p.c * boost::math::beta(p.alpha + 1, p.beta + 2); }
double lam2(const MarginalParams& p) { return p.c * boost::math::beta(p.alpha + 2, p.beta + 2); }

const MarginalParams kCableX1{9.0819, 0.4864, 0.9946};
const MarginalParams kExp{2.0, 0.0, -1.0};

}  // namespace

TEST_CASE("quantile density examples") {
  CHECK(quantile_density({1.0, 0.0, 0.0}, 0.5) == 1.0);
  CHECK(quantile_density(kCableX1, 0.5) ==
        doctest::Approx(9.0819 * std::pow(0.5, 1.481)).epsilon(1e-14));
  CHECK(quantile_density(kExp, 0.5) == doctest::Approx(4.0));
  CHECK_THROWS_AS(quantile_density({1.0, -0.5, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(quantile_density({1.0, 0.0, -1.0}, 1.0), DomainError);
  CHECK_THROWS_AS(quantile_density({1.0, 0.0, 0.0}, 1.5), DomainError);
}

TEST_CASE("quantile examples") {
  CHECK(quantile({1.0, 0.0, -1.0}, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(quantile({1.0, 1.0, 0.0}, 0.6) == doctest::Approx(0.18).epsilon(1e-15));
  // Sine law: F(x) = (1 - cos πx)/2, so Q(u) = arccos(1 - 2u)/π.
  const MarginalParams sine{1.0 / pi, -0.5, -0.5};
  CHECK(quantile(sine, 0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (double u : {0.01, 0.3, 0.5, 0.77, 0.999}) {
    CHECK(quantile(sine, u) == doctest::Approx(std::acos(1.0 - 2.0 * u) / pi).epsilon(1e-11));
  }
  CHECK(std::isinf(quantile(kExp, 1.0)));
  CHECK(quantile(kCableX1, 0.0) == 0.0);
  CHECK_THROWS_AS(quantile(kExp, -0.1), DomainError);
}

TEST_CASE("quantile against direct integration of the density") {
  for (const MarginalParams& p :
       {kCableX1, MarginalParams{13.0499, 0.8856, -0.1844}, MarginalParams{5.9257, 0.3555, -0.6695},
        MarginalParams{1.5, -0.6, -1.4}, MarginalParams{0.7, 2.5, -1.8},
        MarginalParams{3.0, -0.486, -0.995, 1.25}}) {
    for (double u : {0.001, 0.1, 0.35, 0.5, 0.8, 0.99}) {
      const double want = quantile_oracle(p, u);
      CHECK_MESSAGE(std::abs(quantile(p, u) - want) <= 1e-10 * std::max(1.0, std::abs(want)),
                    "alpha=" << p.alpha << " beta=" << p.beta << " u=" << u);
    }
  }
}

TEST_CASE("median anchoring for an unbounded left tail") {
  // Scaled t with two degrees of freedom: Q(u) = 2c(2u - 1)/sqrt(u(1 - u)).
  const MarginalParams t2{0.75, -1.5, -1.5};
  CHECK(quantile(t2, 0.5) == 0.0);
  for (double u : {0.01, 0.2, 0.45, 0.6, 0.93}) {
    const double want = 2.0 * 0.75 * (2.0 * u - 1.0) / std::sqrt(u * (1.0 - u));
    CHECK(quantile(t2, u) == doctest::Approx(want).epsilon(1e-10));
  }
  const SupportInfo s = support(t2);
  CHECK(std::isinf(s.lower));
  CHECK(s.lower < 0);
  CHECK(std::isinf(s.upper));
  CHECK(s.anchor_level == 0.5);
  const MarginalParams shifted{0.75, -1.5, -1.5, 4.0};
  CHECK(quantile(shifted, 0.5) == 4.0);
}

TEST_CASE("support") {
  const SupportInfo bounded = support({2.0, 1.0, 0.0});
  CHECK(bounded.lower == 0.0);
  CHECK(bounded.upper == doctest::Approx(1.0));
  CHECK(std::isinf(support(kExp).upper));
  CHECK(support({1.0, 0.0, -0.9}).upper == doctest::Approx(1.0 / 0.1));
}

TEST_CASE("cdf round trip on a level grid") {
  for (const MarginalParams& p :
       {kCableX1, kExp, MarginalParams{1.5, -0.6, -1.4}, MarginalParams{0.75, -1.5, -1.5},
        MarginalParams{1.0 / pi, -0.5, -0.5}, MarginalParams{2.0, 4.0, 1.0},
        MarginalParams{29.2295, -0.3406, -0.3531}}) {
    for (int i = 1; i <= 9; ++i) {
      const double u = i / 10.0;
      const double x = quantile(p, u);
      const CdfValue v = cdf(p, x);
      CHECK(v.clamp == Clamp::none);
      CHECK_MESSAGE(std::abs(v.u - u) <= 1e-10, "alpha=" << p.alpha << " beta=" << p.beta);
      CHECK(std::abs(cdf_by_root_search(p, x).u - u) <= 1e-10);
      CHECK(std::abs(quantile(p, v.u) - x) <= 1e-12 * std::max(1.0, std::abs(x)) + 1e-12);
    }
  }
}

TEST_CASE("cdf examples and oracles") {
  CHECK(cdf({1.0, 0.0, -1.0}, 0.693147180559945).u == doctest::Approx(0.5).epsilon(1e-12));
  // Power law: F(x) = (x/b)^a with a = 1/(alpha + 1), b = c/(alpha + 1).
  const MarginalParams power{3.0, 0.5, 0.0};
  const double a = 1.0 / 1.5, b = 3.0 / 1.5;
  for (double x : {0.01, 0.5, 1.0, 1.7, 1.99}) {
    CHECK(cdf(power, x).u == doctest::Approx(std::pow(x / b, a)).epsilon(1e-12));
    CHECK(cdf_by_root_search(power, x).u == doctest::Approx(std::pow(x / b, a)).epsilon(1e-11));
  }
  const MarginalParams generic{2.2, 0.8, -1.3};
  for (double x : {0.05, 0.7, 3.0, 20.0}) {
    CHECK(std::abs(cdf(generic, x).u - cdf_oracle(generic, x)) <= 1e-10);
  }
}

TEST_CASE("cdf clamps out-of-support values with a flag") {
  const MarginalParams p{2.0, 1.0, 0.0};
  const CdfValue below = cdf(p, -1.0);
  CHECK(below.u == 0.0);
  CHECK(below.clamp == Clamp::below);
  const CdfValue above = cdf(p, 5.0);
  CHECK(above.u == 1.0);
  CHECK(above.clamp == Clamp::above);
  CHECK(cdf(p, 0.0).clamp == Clamp::none);
  CHECK_THROWS_AS(cdf(p, NAN), DomainError);
}

TEST_CASE("survival keeps precision in the upper tail") {
  CHECK(survival(kExp, 60.0) == doctest::Approx(std::exp(-30.0)).epsilon(1e-12));
  for (double x : {0.3, 2.0, 9.0}) {
    CHECK(survival(kCableX1, x) == doctest::Approx(1.0 - cdf(kCableX1, x).u).epsilon(1e-12));
  }
}

TEST_CASE("conditional survival") {
  BivariateParams bp{{1.0, 0.0, -1.0}, {1.5, 0.0, -1.0}, 0.8};
  for (double u1 : {0.0, 0.3, 1.0}) {
    for (double x2 : {0.1, 1.0, 4.0}) {
      // Exponential case: exp(-x2 / (c2 (1 + theta u1))).
      const double want = std::exp(-x2 / (1.5 * (1.0 + 0.8 * u1)));
      CHECK(conditional_survival(bp, u1, x2) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  CHECK(conditional_survival(bp, 0.0, 1.0) == doctest::Approx(survival(bp.m2, 1.0)));
  bp.theta = 0.0;
  CHECK(conditional_survival(bp, 0.7, 1.0) == doctest::Approx(survival(bp.m2, 1.0)));
  CHECK_THROWS_AS(conditional_survival(bp, 1.5, 1.0), DomainError);
}

TEST_CASE("joint survival structure") {
  const BivariateParams bp{kCableX1, {29.2295, 0.3406, 0.3531}, 0.6821};
  CHECK(joint_survival(bp, 0.0, 0.0) == 1.0);
  double prev_row = 2.0;
  for (double x1 : {0.0, 5.0, 15.0, 30.0}) {
    CHECK(joint_survival(bp, x1, 0.0) == doctest::Approx(survival(bp.m1, x1)).epsilon(1e-12));
    double prev = 2.0;
    for (double x2 : {0.0, 10.0, 25.0, 40.0}) {
      const double v = joint_survival(bp, x1, x2);
      CHECK(v <= prev);
      CHECK(v >= 0.0);
      prev = v;
    }
    CHECK(joint_survival(bp, x1, 10.0) <= prev_row);
    prev_row = joint_survival(bp, x1, 10.0);
  }
  CHECK(joint_survival(bp, 0.0, 20.0) == doctest::Approx(survival(bp.m2, 20.0)).epsilon(1e-12));
}

TEST_CASE("theta = 0 factorizes the joint survival") {
  const BivariateParams bp{{2.0, 0.3, -0.4}, {1.0, 0.0, -1.0}, 0.0};
  for (double x1 : {0.1, 1.0, 3.0}) {
    for (double x2 : {0.2, 1.5, 5.0}) {
      const double want = survival(bp.m1, x1) * survival(bp.m2, x2);
      CHECK(std::abs(joint_survival(bp, x1, x2) - want) <= 1e-12);
    }
  }
}

TEST_CASE("conditional level") {
  BivariateParams bp{{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 1.0};
  // Power case with a2 = 1: u21 = u2 / (1 + theta u1).
  CHECK(conditional_level(bp, 1.0, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
  const BivariateParams pw{{1.0, 0.0, 0.0}, {2.0, 1.0, 0.0}, 0.6821};
  for (double u1 : {0.2, 0.9}) {
    for (double u2 : {0.1, 0.7}) {
      // a2 = 1/(alpha2 + 1) = 1/2.
      const double want = u2 / std::sqrt(1.0 + 0.6821 * u1);
      CHECK(conditional_level(pw, u1, u2) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  bp.theta = 0.0;
  CHECK(conditional_level(bp, 0.4, 0.3) == doctest::Approx(0.3).epsilon(1e-15));

  const BivariateParams g{kCableX1, {5.9257, 0.3555, -0.6695}, 0.5492};
  for (double u1 : {0.05, 0.5, 0.95}) {
    for (double u2 : {0.1, 0.5, 0.9}) {
      const double x = quantile(g.m2, u2) / (1.0 + g.theta * u1);
      const double v = conditional_level(g, u1, u2);
      CHECK(std::abs(v - cdf_oracle(g.m2, x)) <= 1e-10);
      CHECK(v < u2);
    }
  }
  CHECK(conditional_level(g, 0.0, 0.4) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("product moment against the separable closed form") {
  // E(X1 X2) = λ1(X2) (λ1(X1) + theta λ2(X1)).
  for (const BivariateParams& bp :
       {BivariateParams{kCableX1, {29.2295, 0.3406, 0.3531}, 0.6821},
        BivariateParams{{13.0499, 0.8856, -0.1844}, {5.9257, 0.3555, -0.6695}, 0.5492},
        BivariateParams{{1.0, 0.0, -1.0}, {2.0, 0.0, -1.0}, 3.0},
        BivariateParams{{0.4, -0.7, -1.6}, {1.2, 1.5, 0.5}, 0.25}}) {
    const double want = lam1(bp.m2) * (lam1(bp.m1) + bp.theta * lam2(bp.m1));
    CHECK(product_moment(bp) == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("product moment as the integral of the joint survival over x-space") {
  // Uniform marginals, theta = 1: F̄ = (1 - x1)(1 - x2/(1 + x1)) on 0 <= x2 <= 1 + x1.
  using boost::math::quadrature::gauss_kronrod;
  auto inner = [](double x1) {
    auto f = [&](double x2) { return (1.0 - x1) * (1.0 - x2 / (1.0 + x1)); };
    return gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0 + x1, 5, 1e-14);
  };
  const double oracle = gauss_kronrod<double, 31>::integrate(inner, 0.0, 1.0, 5, 1e-14);
  const BivariateParams bp{{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 1.0};
  CHECK(oracle == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(product_moment(bp) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("product moment at independence and in theta") {
  BivariateParams bp{kCableX1, {29.2295, 0.3406, 0.3531}, 0.0};
  CHECK(product_moment(bp) == doctest::Approx(lam1(bp.m1) * lam1(bp.m2)).epsilon(1e-9));
  const double at0 = product_moment(bp);
  bp.theta = 1.0;
  CHECK(product_moment(bp) > at0);
  // A location shift enters through the mean of each factor.
  const BivariateParams shifted{{1.0, 0.0, 0.0, 2.0}, {1.0, 0.0, 0.0, 0.5}, 0.0};
  CHECK(product_moment(shifted) == doctest::Approx(2.5 * 1.0).epsilon(1e-10));
}

TEST_CASE("product moment preconditions") {
  CHECK_THROWS_AS(product_moment({{1.0, 0.0, -2.5}, {1.0, 0.0, 0.0}, 0.5}), DomainError);
  CHECK_THROWS_AS(product_moment({{1.0, -1.5, -1.5}, {1.0, 0.0, 0.0}, 0.5}), DomainError);
  CHECK_THROWS_AS(product_moment({{1.0, 0.0, 0.0, -1.0}, {1.0, 0.0, 0.0}, 0.5}), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(MarginalParams({0.0, 0.0, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(MarginalParams({1.0, NAN, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(BivariateParams({{}, {}, -0.1}).validate(), DomainError);
  CHECK(MarginalParams{1.0, -0.5, -1.9}.has_finite_mean());
  CHECK_FALSE(MarginalParams{1.0, -1.0, 0.0}.has_finite_mean());
  CHECK_FALSE(MarginalParams{1.0, 0.0, -2.0}.has_finite_mean());
}
