#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qbivar/data.hpp"
#include "qbivar/lmoments.hpp"
#include "qbivar/model.hpp"

namespace qbd {

/// Solves t2 = (alpha+1)/(alpha+beta+3), t3 = (alpha-beta)/(alpha+beta+4) for
/// (alpha, beta) and then c from l1. Throws DataError when the system is
/// singular or the solution leaves alpha > -1, beta > -2.
MarginalParams fit_marginal_from_lmoments(const LMomentVector& l);

/// Method of L-moments on the first three unbiased sample L-moments.
MarginalParams fit_marginal(const std::vector<double>& data);

struct ThetaFit {
  double theta = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  /// product_moment(theta) minus the target.
  double residual = 0.0;
  std::vector<std::string> warnings;
};

/// Smallest theta >= 0 with product_moment = target, by Brent's method on a
/// doubling bracket capped at 1e6. Returns theta = 0 with a warning when the
/// target does not exceed the independence value.
ThetaFit fit_theta_to_moment(double target, const MarginalParams& m1, const MarginalParams& m2,
                             const NumericConfig& cfg = {});

/// As above with the sample mean of x1 * x2 as the target.
ThetaFit fit_theta(const PairedSample& s, const MarginalParams& m1, const MarginalParams& m2,
                   const NumericConfig& cfg = {});

struct FitResult {
  BivariateParams params;
  LMomentVector sample_lmoments1{};
  LMomentVector sample_lmoments2{};
  double sample_product_mean = 0.0;
  double theta_bracket_lo = 0.0;
  double theta_bracket_hi = 0.0;
  /// Population minus sample value of every matched moment.
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::string> warnings;
};

/// Marginals first, then theta.
FitResult fit_bivariate(const PairedSample& s, const NumericConfig& cfg = {});

}  // namespace qbd
