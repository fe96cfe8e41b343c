#include "qbivar/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qbivar/errors.hpp"
#include "qbivar/specfun.hpp"

namespace qbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Q feeds root searches at root_tol, so its integrals run well below the
// general quadrature tolerance.
NumericConfig quantile_cfg(const NumericConfig& cfg) {
  NumericConfig q = cfg.tightened(1e-4);
  if (q.quad_rel_tol < 1e-15) q.quad_rel_tol = 1e-15;
  if (q.quad_abs_tol < 1e-300) q.quad_abs_tol = 1e-300;
  return q;
}

// ∫ₓʸ t^alpha (1-t)^beta dt.
double kernel_integral(const MarginalParams& p, double x, double y, const NumericConfig& cfg) {
  const UnitFn one = [](double, double) { return 1.0; };
  return integrate_power_weighted(one, p.alpha, p.beta, x, y, quantile_cfg(cfg));
}

void check_level(double u, const char* who) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError(std::string(who) + ": level must lie in [0, 1]");
}

double clamp_unit(double u) { return u < 0.0 ? 0.0 : (u > 1.0 ? 1.0 : u); }

}  // namespace

void MarginalParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("MarginalParams: c must be positive");
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(location)) {
    throw DomainError("MarginalParams: alpha, beta and location must be finite");
  }
}

bool MarginalParams::has_finite_mean() const { return alpha > -1.0 && beta > -2.0; }

void BivariateParams::validate() const {
  m1.validate();
  m2.validate();
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw DomainError("BivariateParams: theta must be finite and >= 0");
  }
}

double quantile_density(const MarginalParams& p, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    const bool singular = (u == 0.0 && p.alpha < 0.0) || (u == 1.0 && p.beta < 0.0);
    if (singular || !(u >= 0.0 && u <= 1.0)) {
      throw DomainError("quantile_density: level outside the open unit interval");
    }
  }
  const double lu = p.alpha == 0.0 ? 1.0 : std::pow(u, p.alpha);
  const double lv = p.beta == 0.0 ? 1.0 : std::pow(1.0 - u, p.beta);
  return p.c * lu * lv;
}

double quantile(const MarginalParams& p, double u, const NumericConfig& cfg) {
  check_level(u, "quantile");
  const double a = p.alpha;
  const double b = p.beta;
  if (a > -1.0) {
    if (u == 0.0) return p.location;
    if (u == 1.0 && b <= -1.0) return kInf;
    if (b == 0.0) return p.location + p.c * std::pow(u, a + 1.0) / (a + 1.0);
    if (a == 0.0) {
      if (b == -1.0) return p.location - p.c * std::log1p(-u);
      return p.location - p.c * std::expm1((b + 1.0) * std::log1p(-u)) / (b + 1.0);
    }
    if (b > -1.0) return p.location + p.c * inc_beta(u, a + 1.0, b + 1.0);
    return p.location + p.c * kernel_integral(p, 0.0, u, cfg);
  }
  // Unbounded left tail: anchored at the median.
  if (u == 0.0) return -kInf;
  if (u == 1.0 && b <= -1.0) return kInf;
  if (u == 0.5) return p.location;
  if (u < 0.5) return p.location - p.c * kernel_integral(p, u, 0.5, cfg);
  return p.location + p.c * kernel_integral(p, 0.5, u, cfg);
}

SupportInfo support(const MarginalParams& p, const NumericConfig& cfg) {
  p.validate();
  const double lower = p.alpha > -1.0 ? p.location : -kInf;
  const double upper = p.beta > -1.0 ? quantile(p, 1.0, cfg) : kInf;
  return {lower, upper, p.anchor_level()};
}

CdfValue cdf_by_root_search(const MarginalParams& p, double x, const NumericConfig& cfg) {
  p.validate();
  if (std::isnan(x)) throw DomainError("cdf: x is NaN");
  const SupportInfo s = support(p, cfg);
  if (x <= s.lower) return {0.0, x < s.lower ? Clamp::below : Clamp::none};
  if (x >= s.upper) return {1.0, x > s.upper ? Clamp::above : Clamp::none};

  const RealFn f = [&](double u) { return quantile(p, u, cfg) - x; };
  double lo = 0.0;
  double f_lo = s.lower - x;
  if (!std::isfinite(f_lo)) {
    // Walk toward 0 through 2^-k until Q drops below x.
    for (int k = 1;; k *= 2) {
      lo = std::ldexp(1.0, -std::min(k, 1074));
      f_lo = f(lo);
      if (f_lo <= 0.0 || k >= 1074) break;
    }
    if (f_lo > 0.0) return {lo, Clamp::none};
  }
  double hi = 1.0;
  double f_hi = s.upper - x;
  if (!std::isfinite(f_hi)) {
    for (int k = 1; k <= 53; ++k) {
      hi = 1.0 - std::ldexp(1.0, -k);
      f_hi = f(hi);
      if (f_hi >= 0.0) break;
    }
    if (f_hi < 0.0) return {hi, Clamp::none};
  }
  RootTolerance tol;
  tol.xtol = cfg.root_tol;
  tol.ftol = cfg.root_tol * std::max(1.0, std::abs(x));
  tol.max_iter = cfg.root_max_iter;
  return {clamp_unit(find_root(f, lo, hi, f_lo, f_hi, tol)), Clamp::none};
}

namespace {

struct Levels {
  double u;
  double u_bar;
  Clamp clamp;
};

Levels from_u(CdfValue v) { return {v.u, 1.0 - v.u, v.clamp}; }

// Both F(x) and 1 - F(x), each to full relative precision on the closed paths.
Levels invert(const MarginalParams& p, double x, const NumericConfig& cfg) {
  p.validate();
  if (std::isnan(x)) throw DomainError("cdf: x is NaN");
  const double a = p.alpha;
  const double b = p.beta;
  if (!(a > -1.0 && (b == 0.0 || a == 0.0 || b > -1.0))) {
    return from_u(cdf_by_root_search(p, x, cfg));
  }
  if (x <= p.location) return {0.0, 1.0, x < p.location ? Clamp::below : Clamp::none};
  const double y = x - p.location;
  if (b == 0.0) {
    const double upper = p.c / (a + 1.0);
    if (y >= upper) return {1.0, 0.0, y > upper ? Clamp::above : Clamp::none};
    const double lu = std::log(y / upper) / (a + 1.0);
    return {std::exp(lu), -std::expm1(lu), Clamp::none};
  }
  if (a == 0.0) {
    double log_bar;
    if (b == -1.0) {
      log_bar = -y / p.c;
    } else {
      const double z = (b + 1.0) * y / p.c;
      if (z >= 1.0) return {1.0, 0.0, z > 1.0 ? Clamp::above : Clamp::none};
      log_bar = std::log1p(-z) / (b + 1.0);
    }
    return {-std::expm1(log_bar), std::exp(log_bar), Clamp::none};
  }
  const double total = p.c * beta_fn(a + 1.0, b + 1.0);
  if (y >= total) return {1.0, 0.0, y > total ? Clamp::above : Clamp::none};
  const double level = y / total;
  if (level <= 0.5) {
    const double u = inv_reg_inc_beta(level, a + 1.0, b + 1.0);
    return {u, 1.0 - u, Clamp::none};
  }
  const double u_bar = inv_reg_inc_beta((total - y) / total, b + 1.0, a + 1.0);
  return {1.0 - u_bar, u_bar, Clamp::none};
}

}  // namespace

CdfValue cdf(const MarginalParams& p, double x, const NumericConfig& cfg) {
  const Levels l = invert(p, x, cfg);
  return {l.u, l.clamp};
}

double survival(const MarginalParams& p, double x, const NumericConfig& cfg) {
  return invert(p, x, cfg).u_bar;
}

double conditional_quantile(const BivariateParams& bp, double u1, double u2,
                            const NumericConfig& cfg) {
  check_level(u1, "conditional_quantile");
  return (1.0 + bp.theta * u1) * quantile(bp.m2, u2, cfg);
}

double conditional_survival(const BivariateParams& bp, double u1, double x2,
                            const NumericConfig& cfg) {
  check_level(u1, "conditional_survival");
  return survival(bp.m2, x2 / (1.0 + bp.theta * u1), cfg);
}

double joint_survival(const BivariateParams& bp, double x1, double x2,
                      const NumericConfig& cfg) {
  bp.validate();
  const Levels l1 = invert(bp.m1, x1, cfg);
  return l1.u_bar * conditional_survival(bp, l1.u, x2, cfg);
}

double conditional_level(const BivariateParams& bp, double u1, double u2,
                         const NumericConfig& cfg) {
  check_level(u1, "conditional_level");
  check_level(u2, "conditional_level");
  const double scale = 1.0 + bp.theta * u1;
  if (scale == 1.0) return u2;
  const double x2 = quantile(bp.m2, u2, cfg);
  return cdf(bp.m2, x2 / scale, cfg).u;
}

double product_moment(const BivariateParams& bp, const NumericConfig& cfg) {
  bp.validate();
  for (const MarginalParams* m : {&bp.m1, &bp.m2}) {
    if (!m->has_finite_mean()) {
      throw DomainError("product_moment: requires alpha > -1 and beta > -2 (finite mean)");
    }
    if (m->location < 0.0) {
      throw DomainError("product_moment: requires nonnegative support");
    }
  }
  // E(X1 X2) = ∬ F̄(x1, x2) dx1 dx2 with x1 = Q1(u1) and x2 = Q21(u1, u2).
  // The second substitution covers the whole conditional support, which
  // reaches (1 + theta u1) Q2(1) rather than Q2(1). Below the lower support
  // point F̄ is 1, which contributes the location terms. The integrand
  // (1-u1)(1-u2)(1 + theta u1) q1(u1) q2(u2) separates, so the tensor
  // quadrature is the product of two one-dimensional rules.
  const MarginalParams& m1 = bp.m1;
  const MarginalParams& m2 = bp.m2;
  const double theta = bp.theta;
  const UnitFn g1 = [&](double u1, double) { return m1.c * (1.0 + theta * u1); };
  const UnitFn g2 = [&](double, double) { return m2.c; };
  const double i1 = m1.location + integrate_unit(g1, m1.alpha, m1.beta + 1.0, cfg);
  const double i2 = m2.location + integrate_unit(g2, m2.alpha, m2.beta + 1.0, cfg);
  return i1 * i2;
}

}  // namespace qbd
