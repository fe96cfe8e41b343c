#include "qbivar/fit.hpp"

#include <cmath>
#include <string>

#include "qbivar/errors.hpp"
#include "qbivar/specfun.hpp"

namespace qbd {

MarginalParams fit_marginal_from_lmoments(const LMomentVector& l) {
  const double t2 = l.l2 / l.l1;
  const double t3 = l.l3 / l.l2;
  if (!std::isfinite(t2) || !std::isfinite(t3) || !(l.l2 > 0.0) || !(l.l1 > 0.0)) {
    throw DataError("fit_marginal: L-moment ratios are undefined (need l1 > 0, l2 > 0)");
  }
  // (1 - t2) alpha - t2 beta = 3 t2 - 1
  // (1 - t3) alpha - (1 + t3) beta = 4 t3
  const double a11 = 1.0 - t2, a12 = -t2, r1 = 3.0 * t2 - 1.0;
  const double a21 = 1.0 - t3, a22 = -(1.0 + t3), r2 = 4.0 * t3;
  const double det = a11 * a22 - a12 * a21;
  if (std::abs(det) < 1e-14) throw DataError("fit_marginal: singular moment system");
  const double alpha = (r1 * a22 - a12 * r2) / det;
  const double beta = (a11 * r2 - r1 * a21) / det;
  if (!(alpha > -1.0 && beta > -2.0)) {
    throw DataError("fit_marginal: solution (alpha=" + std::to_string(alpha) + ", beta=" +
                    std::to_string(beta) + ") lies outside alpha > -1, beta > -2");
  }
  const double c = l.l1 * std::exp(log_gamma(alpha + beta + 3.0) - log_gamma(alpha + 1.0) -
                                   log_gamma(beta + 2.0));
  return {c, alpha, beta, 0.0};
}

MarginalParams fit_marginal(const std::vector<double>& data) {
  if (data.size() < 3) throw DataError("fit_marginal: need at least 3 observations");
  return fit_marginal_from_lmoments(sample_lmoments(data, 3));
}

ThetaFit fit_theta_to_moment(double target, const MarginalParams& m1, const MarginalParams& m2,
                             const NumericConfig& cfg) {
  if (!std::isfinite(target)) throw DataError("fit_theta: product moment is not finite");
  const NumericConfig pm_cfg = cfg.tightened(1e-3);
  const auto f = [&](double theta) {
    return product_moment({m1, m2, theta}, pm_cfg) - target;
  };
  ThetaFit out;
  const double f0 = f(0.0);
  if (f0 >= 0.0) {
    out.residual = f0;
    out.warnings.push_back(
        "sample product moment does not exceed the independence value; theta set to 0");
    return out;
  }
  double lo = 0.0, hi = 1.0;
  double f_lo = f0, f_hi = f(hi);
  while (f_hi < 0.0) {
    if (hi >= 1e6) throw ConvergenceError("fit_theta: no bracket below theta = 1e6");
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = f(hi);
  }
  RootTolerance tol;
  tol.xtol = cfg.root_tol;
  tol.ftol = cfg.root_tol * std::abs(target);
  tol.max_iter = cfg.root_max_iter;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.theta = find_root(f, lo, hi, f_lo, f_hi, tol);
  out.residual = f(out.theta);
  return out;
}

ThetaFit fit_theta(const PairedSample& s, const MarginalParams& m1, const MarginalParams& m2,
                   const NumericConfig& cfg) {
  s.validate();
  double sum = 0.0;
  for (std::size_t i = 0; i < s.n(); ++i) sum += s.x1[i] * s.x2[i];
  return fit_theta_to_moment(sum / static_cast<double>(s.n()), m1, m2, cfg);
}

FitResult fit_bivariate(const PairedSample& s, const NumericConfig& cfg) {
  s.validate();
  FitResult r;
  r.sample_lmoments1 = sample_lmoments(s.x1, s.n() >= 4 ? 4 : 3);
  r.sample_lmoments2 = sample_lmoments(s.x2, s.n() >= 4 ? 4 : 3);
  r.params.m1 = fit_marginal_from_lmoments(r.sample_lmoments1);
  r.params.m2 = fit_marginal_from_lmoments(r.sample_lmoments2);
  double sum = 0.0;
  for (std::size_t i = 0; i < s.n(); ++i) sum += s.x1[i] * s.x2[i];
  r.sample_product_mean = sum / static_cast<double>(s.n());

  const ThetaFit tf = fit_theta_to_moment(r.sample_product_mean, r.params.m1, r.params.m2, cfg);
  r.params.theta = tf.theta;
  r.theta_bracket_lo = tf.bracket_lo;
  r.theta_bracket_hi = tf.bracket_hi;
  r.warnings = tf.warnings;

  const auto add = [&](const char* tag, const LMomentVector& pop, const LMomentVector& smp) {
    r.residuals.emplace_back(std::string("l1_") + tag, pop.l1 - smp.l1);
    r.residuals.emplace_back(std::string("t2_") + tag, pop.t2 - smp.t2);
    r.residuals.emplace_back(std::string("t3_") + tag, pop.t3 - smp.t3);
  };
  add("x1", population_lmoments(r.params.m1), r.sample_lmoments1);
  add("x2", population_lmoments(r.params.m2), r.sample_lmoments2);
  r.residuals.emplace_back("product_moment", tf.residual);
  return r;
}

}  // namespace qbd
