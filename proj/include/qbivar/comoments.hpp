#pragma once

#include "qbivar/data.hpp"
#include "qbivar/model.hpp"

namespace qbd {

/// Directed L-comoments. L_k(i,j) = Cov(Xi, P*_{k-1}(Fj(Xj))), where P*_r is
/// the shifted Legendre polynomial; ratios divide by λ2 of the leading Xi.
struct LComomentSet {
  double L2_12 = 0.0;
  double L3_12 = 0.0;
  double L4_12 = 0.0;
  double L2_21 = 0.0;
  double L3_21 = 0.0;
  double L4_21 = 0.0;
  double rho12 = 0.0;
  double rho21 = 0.0;
  double ratio3_12 = 0.0;
  double ratio4_12 = 0.0;
  double ratio3_21 = 0.0;
  double ratio4_21 = 0.0;
};

/// Population L-comoments of the survival construction by nested quadrature.
LComomentSet population_lcomoments(const BivariateParams& bp, const NumericConfig& cfg = {});

/// Power marginals (beta1 = beta2 = 0): the printed hypergeometric expressions
/// for L2(1,2) and rho12 next to the quadrature values and the corrected
/// closed form c1 B(alpha1+1, 2) [1 - 2F1(a2, alpha1+1; alpha1+3; -theta)].
struct PowerCaseReport {
  double printed_lcov = 0.0;
  double printed_rho = 0.0;
  double corrected_lcov = 0.0;
  double corrected_rho = 0.0;
  double quadrature_lcov = 0.0;
  double quadrature_rho = 0.0;
  /// printed minus quadrature.
  double lcov_discrepancy = 0.0;
  double rho_discrepancy = 0.0;
};

PowerCaseReport power_case_lcov_closed_form(const BivariateParams& bp,
                                            const NumericConfig& cfg = {});

/// Rank/concomitant plug-in: L̂_k(1,2) = (1/n) Σ (P*_{k-1}(r_i/(n+1)) - mean) x1_i
/// with r_i the (average) rank of x2_i. Ratios use the unbiased sample λ2.
LComomentSet sample_lcomoments(const PairedSample& s);

}  // namespace qbd
