#include "qbivar/mrq.hpp"

#include <cmath>
#include <limits>

#include "qbivar/comoments.hpp"
#include "qbivar/errors.hpp"
#include "qbivar/lmoments.hpp"

namespace qbd {

namespace {

double linear_mrq(double scale_log, double scale_lin, double u) {
  if (u == 1.0) return std::numeric_limits<double>::infinity();
  return -scale_log * std::log1p(-u) - 2.0 * scale_lin * u;
}

// u in [0, 1] with q(u) = x for an increasing quantile function q, Q(0) = 0.
double invert_increasing(const RealFn& q, double x, const NumericConfig& cfg) {
  if (!(x > 0.0)) return 0.0;
  const RealFn f = [&](double u) { return q(u) - x; };
  double hi = 0.5;
  double f_hi = f(hi);
  for (int k = 2; f_hi < 0.0 && k <= 60; ++k) {
    hi = 1.0 - std::ldexp(1.0, -k);
    f_hi = f(hi);
  }
  if (f_hi < 0.0) return 1.0;
  RootTolerance tol;
  tol.xtol = cfg.root_tol;
  tol.ftol = cfg.root_tol * std::max(1.0, std::abs(x));
  tol.max_iter = cfg.root_max_iter;
  return find_root(f, 0.0, hi, -x, f_hi, tol);
}

}  // namespace

std::vector<std::string> MrqParams::violations() const {
  std::vector<std::string> v;
  if (!(a1 > 0.0)) v.emplace_back("a1 > 0");
  if (!(a1 + b1 > 0.0)) v.emplace_back("a1 + b1 > 0");
  if (!(a2 > 0.0)) v.emplace_back("a2 > 0");
  if (!(a2 + c > 0.0)) v.emplace_back("a2 + c > 0");
  if (!(a2 + b2 >= c + d)) v.emplace_back("a2 + b2 >= c + d");
  return v;
}

void MrqParams::validate() const {
  for (double x : {a1, b1, a2, b2, c, d}) {
    if (!std::isfinite(x)) throw DomainError("MrqParams: parameters must be finite");
  }
  const auto v = violations();
  if (!v.empty()) throw DomainError("MrqParams: constraint violated: " + v.front());
}

double mrq_q1(const MrqParams& p, double u1) {
  if (!(u1 >= 0.0 && u1 <= 1.0)) throw DomainError("mrq_q1: level must lie in [0, 1]");
  return linear_mrq(p.a1 + p.b1, p.b1, u1);
}

double mrq_q21(const MrqParams& p, double u1, double u2) {
  if (!(u1 >= 0.0 && u1 <= 1.0) || !(u2 >= 0.0 && u2 <= 1.0)) {
    throw DomainError("mrq_q21: levels must lie in [0, 1]");
  }
  const double cu = p.c + p.d * u1;
  return linear_mrq(p.a2 + p.b2 * u1 + cu, cu, u2);
}

std::pair<double, double> mrq_quantile(const MrqParams& p, double u1, double u2) {
  p.validate();
  return {mrq_q1(p, u1), mrq_q21(p, u1, u2)};
}

double mrq_f1(const MrqParams& p, double x1, const NumericConfig& cfg) {
  return invert_increasing([&](double u) { return mrq_q1(p, u); }, x1, cfg);
}

double mrq_f21(const MrqParams& p, double u1, double x2, const NumericConfig& cfg) {
  return invert_increasing([&](double u) { return mrq_q21(p, u1, u); }, x2, cfg);
}

double mrq_lcov_12(const MrqParams& p, const NumericConfig& cfg) {
  const NumericConfig inner_cfg = cfg.tightened(1e-2);
  // q1(u1)(1 - u1) = (a1 + b1) - 2 b1 (1 - u1).
  const UnitFn outer = [&](double u1, double u1_bar) {
    const double w = (p.a1 + p.b1) - 2.0 * p.b1 * u1_bar;
    const UnitFn g = [&](double u2, double) {
      const double x2 = mrq_q21(p, 0.0, u2);
      return u2 - mrq_f21(p, u1, x2, cfg);
    };
    return 2.0 * w * integrate_unit(g, 0.0, 0.0, inner_cfg);
  };
  return integrate_unit(outer, 0.0, 0.0, cfg);
}

MrqFit fit_mrq(const PairedSample& s, const NumericConfig& cfg) {
  s.validate();
  if (s.n() < 4) throw DataError("fit_mrq: need at least 4 pairs");
  const LMomentVector l1 = sample_lmoments(s.x1, 2);
  const LMomentVector l2 = sample_lmoments(s.x2, 2);
  MrqFit out;
  MrqParams& p = out.params;
  p.a1 = l1.l1;
  p.b1 = 6.0 * l1.l2 - 3.0 * p.a1;
  p.a2 = l2.l1;
  p.c = 6.0 * l2.l2 - 3.0 * p.a2;

  double sum = 0.0;
  for (std::size_t i = 0; i < s.n(); ++i) sum += s.x1[i] * s.x2[i];
  out.sample_product_mean = sum / static_cast<double>(s.n());
  // λ2 of the fitted X1 equals the sample l2 by construction.
  p.b2 = (out.sample_product_mean - p.a2 * p.a1) / l1.l2;
  out.sample_lcov_12 = sample_lcomoments(s).L2_12;

  // Q21 stays increasing in u2 for every u1 iff -(a2+c+b2) < d < a2-c+b2.
  const double lo = -(p.a2 + p.c + p.b2);
  const double hi = p.a2 - p.c + p.b2;
  if (!(lo < hi)) {
    p.d = 0.0;
    out.warnings.emplace_back("no d keeps Q21 increasing (a2 + b2 <= 0); d set to 0");
  } else {
    const double pad = 1e-6 * (hi - lo);
    const NumericConfig solve_cfg = cfg;
    const RealFn f = [&](double d) {
      MrqParams q = p;
      q.d = d;
      return mrq_lcov_12(q, solve_cfg) - out.sample_lcov_12;
    };
    const double d_lo = lo + pad;
    const double d_hi = hi - pad;
    const double f_lo = f(d_lo);
    const double f_hi = f(d_hi);
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
      p.d = std::abs(f_lo) < std::abs(f_hi) ? d_lo : d_hi;
      out.warnings.emplace_back(
          "sample L-covariance is outside the range reachable by d; d set to the nearer end");
    } else {
      RootTolerance tol;
      tol.xtol = 1e-8 * (hi - lo);
      tol.ftol = 1e-8 * std::max(1.0, std::abs(out.sample_lcov_12));
      tol.max_iter = cfg.root_max_iter;
      p.d = find_root(f, d_lo, d_hi, f_lo, f_hi, tol);
    }
  }
  out.lcov_residual = mrq_lcov_12(p, cfg) - out.sample_lcov_12;
  for (const auto& v : p.violations()) out.warnings.push_back("constraint violated: " + v);
  return out;
}

}  // namespace qbd
