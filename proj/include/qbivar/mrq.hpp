#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qbivar/data.hpp"
#include "qbivar/numeric.hpp"

namespace qbd {

/// Bivariate linear mean residual quantile model:
///   Q1(u1)      = -(a1 + b1) log(1 - u1) - 2 b1 u1
///   Q21(u2|u1)  = -(a2 + c + (b2 + d) u1) log(1 - u2) - 2 (c + d u1) u2
struct MrqParams {
  double a1 = 1.0;
  double b1 = 0.0;
  double a2 = 1.0;
  double b2 = 0.0;
  double c = 0.0;
  double d = 0.0;

  /// Human-readable list of violated constraints (empty when admissible).
  [[nodiscard]] std::vector<std::string> violations() const;
  /// Throws DomainError on the first violation.
  void validate() const;
};

double mrq_q1(const MrqParams& p, double u1);
double mrq_q21(const MrqParams& p, double u1, double u2);

/// (Q1(u1), Q21(u2 | u1)).
std::pair<double, double> mrq_quantile(const MrqParams& p, double u1, double u2);

/// u1 with Q1(u1) = x1, clamped to [0, 1].
double mrq_f1(const MrqParams& p, double x1, const NumericConfig& cfg = {});

/// u2 with Q21(u2 | u1) = x2, clamped to [0, 1].
double mrq_f21(const MrqParams& p, double u1, double x2, const NumericConfig& cfg = {});

/// Population L2(1,2) = 2 ∬ q1(u1)(1-u1)(u2 - u21) du1 du2 under the
/// survival construction, with u21 = F21(Q21(u2 | 0) | u1).
double mrq_lcov_12(const MrqParams& p, const NumericConfig& cfg = {});

struct MrqFit {
  MrqParams params;
  double sample_product_mean = 0.0;
  double sample_lcov_12 = 0.0;
  double lcov_residual = 0.0;
  std::vector<std::string> warnings;
};

/// Method of L-moments. (a1, b1) and (a2, c) from the first two sample
/// L-moments of each column; b2 from the sample product moment through
/// E(X1 X2) = a2 a1 + b2 λ2(X1); d by matching the sample L-covariance of X1
/// towards X2 inside the range that keeps Q21 increasing.
MrqFit fit_mrq(const PairedSample& s, const NumericConfig& cfg = {});

}  // namespace qbd
