#pragma once

#include "qbivar/numeric.hpp"

namespace qbd {

/// One marginal of the family: quantile density q(u) = c u^alpha (1-u)^beta.
///
/// `location` is the value of Q at its anchor level: Q(0) when alpha > -1,
/// otherwise Q(1/2) (the left tail is then unbounded).
struct MarginalParams {
  double c = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double location = 0.0;

  void validate() const;
  /// alpha > -1 and beta > -2: the region where the mean and all L-moments exist.
  [[nodiscard]] bool has_finite_mean() const;
  [[nodiscard]] double anchor_level() const { return alpha > -1.0 ? 0.0 : 0.5; }
};

/// The bivariate law: q21(u1, u2) = (1 + theta u1) q2(u2).
struct BivariateParams {
  MarginalParams m1;
  MarginalParams m2;
  double theta = 0.0;

  void validate() const;
};

struct SupportInfo {
  double lower;
  double upper;
  double anchor_level;
};

enum class Clamp { none, below, above };

/// Probability level from inverting Q, with a flag when x fell outside the support.
struct CdfValue {
  double u = 0.0;
  Clamp clamp = Clamp::none;
};

/// q(u) = c u^alpha (1-u)^beta on 0 < u < 1.
double quantile_density(const MarginalParams& p, double u);

/// Q(u), the anchored integral of the quantile density.
double quantile(const MarginalParams& p, double u, const NumericConfig& cfg = {});

SupportInfo support(const MarginalParams& p, const NumericConfig& cfg = {});

/// F(x): the u with Q(u) = x. Closed-form inversions are used where they exist.
CdfValue cdf(const MarginalParams& p, double x, const NumericConfig& cfg = {});

/// F̄(x) = 1 - F(x), computed without cancellation where a closed form exists.
double survival(const MarginalParams& p, double x, const NumericConfig& cfg = {});

/// F(x) by Brent's method on Q regardless of any closed form.
CdfValue cdf_by_root_search(const MarginalParams& p, double x, const NumericConfig& cfg = {});

/// Q21(u1, u2) = (1 + theta u1) Q2(u2).
double conditional_quantile(const BivariateParams& bp, double u1, double u2,
                            const NumericConfig& cfg = {});

/// P(X2 > x2 | X1 > Q1(u1)) = 1 - F2(x2 / (1 + theta u1)).
double conditional_survival(const BivariateParams& bp, double u1, double x2,
                            const NumericConfig& cfg = {});

/// F̄(x1, x2) = F̄1(x1) F̄21(x2 | x1).
double joint_survival(const BivariateParams& bp, double x1, double x2,
                      const NumericConfig& cfg = {});

/// u21 = F2(Q2(u2) / (1 + theta u1)), the conditional level reached by the
/// marginal-2 quantile at u2.
double conditional_level(const BivariateParams& bp, double u1, double u2,
                         const NumericConfig& cfg = {});

/// E(X1 X2) = ∬ F̄(x1, x2) dx1 dx2 under x1 = Q1(u1), x2 = Q21(u1, u2):
/// ∬ (1-u1)(1-u2)(1 + theta u1) q1(u1) q2(u2) du1 du2 by adaptive quadrature.
/// Both marginals need nonnegative support and a finite mean.
double product_moment(const BivariateParams& bp, const NumericConfig& cfg = {});

}  // namespace qbd
