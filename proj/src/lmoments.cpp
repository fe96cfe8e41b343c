#include "qbivar/lmoments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbivar/errors.hpp"
#include "qbivar/specfun.hpp"

namespace qbd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_region(const MarginalParams& p, const char* who) {
  p.validate();
  if (!p.has_finite_mean()) {
    throw DomainError(std::string(who) + ": requires alpha > -1 and beta > -2");
  }
}

void fill_ratios(LMomentVector& v) {
  v.t2 = v.l1 > 0.0 ? v.l2 / v.l1 : kNaN;
  v.t3 = v.l2 > 0.0 ? v.l3 / v.l2 : kNaN;
  v.t4 = v.l2 > 0.0 ? v.l4 / v.l2 : kNaN;
}

}  // namespace

LMomentVector population_lmoments(const MarginalParams& p) {
  check_region(p, "population_lmoments");
  const double a = p.alpha;
  const double b = p.beta;
  const double s = a + b;
  LMomentVector v{};
  v.l1 = p.location + p.c * std::exp(log_gamma(a + 1.0) + log_gamma(b + 2.0) - log_gamma(s + 3.0));
  v.l2 = p.c * std::exp(log_gamma(a + 2.0) + log_gamma(b + 2.0) - log_gamma(s + 4.0));
  v.l3 = v.l2 * (a - b) / (s + 4.0);
  v.l4 = v.l2 * (a * a + b * b - 3.0 * a * b - a - b) / ((s + 4.0) * (s + 5.0));
  fill_ratios(v);
  return v;
}

LMomentVector population_lmoments_quadrature(const MarginalParams& p, const NumericConfig& cfg) {
  check_region(p, "population_lmoments_quadrature");
  NumericConfig tight = cfg.tightened(1e-4);
  tight.quad_abs_tol = std::max(tight.quad_abs_tol, 1e-300);
  const double c = p.c;
  const double e0 = p.alpha;
  const double e1 = p.beta + 1.0;
  LMomentVector v{};
  v.l1 = p.location + integrate_unit([c](double, double) { return c; }, e0, e1, tight);
  // The common factor u(1-u) is folded into the power weight.
  v.l2 = integrate_unit([c](double, double) { return c; }, e0 + 1.0, e1, tight);
  v.l3 = integrate_unit([c](double t, double tb) { return c * (t - tb); }, e0 + 1.0, e1, tight);
  v.l4 = integrate_unit([c](double t, double tb) { return c * (1.0 - 5.0 * t * tb); }, e0 + 1.0,
                        e1, tight);
  fill_ratios(v);
  return v;
}

LMomentVector sample_lmoments(std::vector<double> data, int r_max) {
  if (r_max < 1 || r_max > 4) throw DomainError("sample_lmoments: r_max must be in 1..4");
  const std::size_t n = data.size();
  if (n < static_cast<std::size_t>(r_max) || n == 0) {
    throw DataError("sample_lmoments: need at least r_max observations");
  }
  for (double x : data) {
    if (!std::isfinite(x)) throw DataError("sample_lmoments: non-finite observation");
  }
  std::sort(data.begin(), data.end());
  const double nn = static_cast<double>(n);
  double b[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double j = static_cast<double>(i);  // number of smaller order statistics
    double w = 1.0;
    b[0] += data[i];
    for (int r = 1; r < r_max; ++r) {
      w *= (j - (r - 1)) / (nn - r);
      b[r] += w * data[i];
    }
  }
  for (double& x : b) x /= nn;
  LMomentVector v{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
  v.l1 = b[0];
  if (r_max >= 2) v.l2 = 2.0 * b[1] - b[0];
  if (r_max >= 3) v.l3 = 6.0 * b[2] - 6.0 * b[1] + b[0];
  if (r_max >= 4) v.l4 = 20.0 * b[3] - 30.0 * b[2] + 12.0 * b[1] - b[0];
  fill_ratios(v);
  return v;
}

}  // namespace qbd
