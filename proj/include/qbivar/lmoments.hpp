#pragma once

#include <vector>

#include "qbivar/model.hpp"

namespace qbd {

/// L-moments λ1..λ4 and the ratios τ2 = λ2/λ1, τ3 = λ3/λ2, τ4 = λ4/λ2.
/// Entries that were not computed, or whose ratio is undefined, are NaN.
struct LMomentVector {
  double l1;
  double l2;
  double l3;
  double l4;
  double t2;
  double t3;
  double t4;
};

/// Closed forms in the gamma function; requires alpha > -1 and beta > -2.
LMomentVector population_lmoments(const MarginalParams& p);

/// The same quantities as integrals of q(u) against the L-moment weights
/// (1-u), u(1-u), u(1-u)(2u-1) and u(1-u)(5u²-5u+1).
LMomentVector population_lmoments_quadrature(const MarginalParams& p,
                                             const NumericConfig& cfg = {});

/// Unbiased sample L-moments from probability-weighted moments of the
/// order statistics. Requires data.size() >= r_max, 1 <= r_max <= 4.
LMomentVector sample_lmoments(std::vector<double> data, int r_max = 4);

}  // namespace qbd
