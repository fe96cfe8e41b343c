#include "qbivar/comoments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "qbivar/errors.hpp"
#include "qbivar/lmoments.hpp"
#include "qbivar/specfun.hpp"

namespace qbd {

namespace {

// Derivatives of P*_1, P*_2, P*_3 written in (t, 1-t).
double legendre_slope(int k, double t, double tb) {
  switch (k) {
    case 2: return 2.0;
    case 3: return 6.0 * (t - tb);
    default: return 12.0 * (1.0 - 5.0 * t * tb);
  }
}

double shifted_legendre(int r, double p) {
  switch (r) {
    case 1: return 2.0 * p - 1.0;
    case 2: return 6.0 * p * p - 6.0 * p + 1.0;
    default: return 20.0 * p * p * p - 30.0 * p * p + 12.0 * p - 1.0;
  }
}

// Exponent of (1 - u2) shared by u2 - u21 as u2 -> 1, used to keep the
// outer integrand bounded in the X2-leading direction.
double upper_tail_power(const BivariateParams& bp) {
  if (bp.m2.beta > -1.0) return 0.0;
  if (bp.m2.beta == -1.0) return 1.0 / (1.0 + bp.theta);
  return 1.0;
}

double lcomoment_12(const BivariateParams& bp, int k, const NumericConfig& cfg) {
  const NumericConfig inner_cfg = cfg.tightened(1e-2);
  const MarginalParams& m1 = bp.m1;
  const UnitFn outer = [&](double u1, double) {
    const UnitFn g = [&](double u2, double u2_bar) {
      return legendre_slope(k, u2, u2_bar) * (u2 - conditional_level(bp, u1, u2, cfg));
    };
    return m1.c * integrate_unit(g, 0.0, 0.0, inner_cfg);
  };
  return integrate_unit(outer, m1.alpha, m1.beta + 1.0, cfg);
}

double lcomoment_21(const BivariateParams& bp, int k, const NumericConfig& cfg) {
  const NumericConfig inner_cfg = cfg.tightened(1e-2);
  const MarginalParams& m2 = bp.m2;
  const double tail = upper_tail_power(bp);
  const UnitFn outer = [&](double u2, double u2_bar) {
    const UnitFn g = [&](double u1, double u1_bar) {
      return legendre_slope(k, u1, u1_bar) * (u2 - conditional_level(bp, u1, u2, cfg));
    };
    const double inner = integrate_unit(g, 0.0, 1.0, inner_cfg);
    return tail == 0.0 ? m2.c * inner : m2.c * inner / std::pow(u2_bar, tail);
  };
  return integrate_unit(outer, m2.alpha, m2.beta + tail, cfg);
}

}  // namespace

LComomentSet population_lcomoments(const BivariateParams& bp, const NumericConfig& cfg) {
  bp.validate();
  if (!bp.m1.has_finite_mean() || !bp.m2.has_finite_mean()) {
    throw DomainError("population_lcomoments: both marginals need a finite mean");
  }
  LComomentSet s;
  if (bp.theta == 0.0) return s;
  s.L2_12 = lcomoment_12(bp, 2, cfg);
  s.L3_12 = lcomoment_12(bp, 3, cfg);
  s.L4_12 = lcomoment_12(bp, 4, cfg);
  s.L2_21 = lcomoment_21(bp, 2, cfg);
  s.L3_21 = lcomoment_21(bp, 3, cfg);
  s.L4_21 = lcomoment_21(bp, 4, cfg);
  const double l2_1 = population_lmoments(bp.m1).l2;
  const double l2_2 = population_lmoments(bp.m2).l2;
  s.rho12 = s.L2_12 / l2_1;
  s.ratio3_12 = s.L3_12 / l2_1;
  s.ratio4_12 = s.L4_12 / l2_1;
  s.rho21 = s.L2_21 / l2_2;
  s.ratio3_21 = s.L3_21 / l2_2;
  s.ratio4_21 = s.L4_21 / l2_2;
  return s;
}

PowerCaseReport power_case_lcov_closed_form(const BivariateParams& bp, const NumericConfig& cfg) {
  bp.validate();
  if (bp.m1.beta != 0.0 || bp.m2.beta != 0.0 || bp.m1.location != 0.0 ||
      bp.m2.location != 0.0 || !(bp.m1.alpha > -1.0) || !(bp.m2.alpha > -1.0)) {
    throw DomainError("power_case_lcov_closed_form: requires power marginals (beta = 0)");
  }
  const double al1 = bp.m1.alpha;
  const double a1 = 1.0 / (al1 + 1.0);
  const double a2 = 1.0 / (bp.m2.alpha + 1.0);
  const double c1 = bp.m1.c;
  const double z = -bp.theta;
  const double l2_1 = population_lmoments(bp.m1).l2;

  PowerCaseReport r;
  r.printed_lcov = -c1 * a1 * gauss_2f1(1.0 / a1, a2, 1.0 + 1.0 / a1, z) -
                   (gauss_2f1(1.0 + 1.0 / a1, a2, 2.0 + 1.0 / a1, z) + a1) / (1.0 + a1);
  r.printed_rho = -((6.0 + 5.0 * al1 + al1 * al1) / (al1 + 1.0)) *
                      gauss_2f1(al1 + 1.0, a2, al1 + 2.0, z) -
                  (gauss_2f1(al1 + 1.0, a2, al1 + 3.0, z) * (al1 + 1.0) + 1.0) / (al1 + 1.0);
  r.corrected_lcov = c1 * beta_fn(al1 + 1.0, 2.0) * (1.0 - gauss_2f1(a2, al1 + 1.0, al1 + 3.0, z));
  r.corrected_rho = r.corrected_lcov / l2_1;
  r.quadrature_lcov = bp.theta == 0.0 ? 0.0 : lcomoment_12(bp, 2, cfg);
  r.quadrature_rho = r.quadrature_lcov / l2_1;
  r.lcov_discrepancy = r.printed_lcov - r.quadrature_lcov;
  r.rho_discrepancy = r.printed_rho - r.quadrature_rho;
  return r;
}

namespace {

// Average ranks (1-based) of v.
std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

// L̂_k of `lead` towards `other` for k = 2, 3, 4.
std::array<double, 3> directed(const std::vector<double>& lead, const std::vector<double>& other) {
  const std::size_t n = lead.size();
  const double nn = static_cast<double>(n);
  const std::vector<double> rank = average_ranks(other);
  std::array<double, 3> out{};
  for (int r = 1; r <= 3; ++r) {
    std::vector<double> w(n);
    double wbar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = shifted_legendre(r, rank[i] / (nn + 1.0));
      wbar += w[i];
    }
    wbar /= nn;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += (w[i] - wbar) * lead[i];
    out[r - 1] = sum / nn;
  }
  return out;
}

}  // namespace

LComomentSet sample_lcomoments(const PairedSample& s) {
  s.validate();
  if (s.n() < 4) throw DataError("sample_lcomoments: need at least 4 pairs");
  const auto c12 = directed(s.x1, s.x2);
  const auto c21 = directed(s.x2, s.x1);
  const double l2_1 = sample_lmoments(s.x1, 2).l2;
  const double l2_2 = sample_lmoments(s.x2, 2).l2;
  if (!(l2_1 > 0.0) || !(l2_2 > 0.0)) throw DataError("sample_lcomoments: a column is constant");
  LComomentSet out;
  out.L2_12 = c12[0];
  out.L3_12 = c12[1];
  out.L4_12 = c12[2];
  out.L2_21 = c21[0];
  out.L3_21 = c21[1];
  out.L4_21 = c21[2];
  out.rho12 = c12[0] / l2_1;
  out.ratio3_12 = c12[1] / l2_1;
  out.ratio4_12 = c12[2] / l2_1;
  out.rho21 = c21[0] / l2_2;
  out.ratio3_21 = c21[1] / l2_2;
  out.ratio4_21 = c21[2] / l2_2;
  return out;
}

}  // namespace qbd
