#pragma once

namespace qbd {

struct SpecFunConfig {
  double series_tol = 1e-14;
  int max_terms = 10000;
  double inversion_tol = 1e-12;

  void validate() const;
};

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// ln B(a, b) = ln Γ(a) + ln Γ(b) - ln Γ(a + b).
double log_beta(double a, double b);

/// Complete beta function B(a, b).
double beta_fn(double a, double b);

/// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double x, double a, double b, const SpecFunConfig& cfg = {});

/// Incomplete beta B_x(a, b) = ∫₀ˣ t^(a-1) (1-t)^(b-1) dt.
double inc_beta(double x, double a, double b, const SpecFunConfig& cfg = {});

/// The x in [0, 1] with I_x(a, b) = p.
double inv_reg_inc_beta(double p, double a, double b, const SpecFunConfig& cfg = {});

/// Gauss hypergeometric ₂F₁(a, b; c; z) restricted to z <= 0.
///
/// Power series for -1 < z <= 0, Pfaff transformation z -> z/(z-1) for z <= -1.
double gauss_2f1(double a, double b, double c, double z, const SpecFunConfig& cfg = {});

/// Plain power series of ₂F₁, valid for |z| < 1.
double gauss_2f1_series(double a, double b, double c, double z, const SpecFunConfig& cfg = {});

/// ₂F₁ through the Pfaff transformation, valid for z < 1/2.
double gauss_2f1_pfaff(double a, double b, double c, double z, const SpecFunConfig& cfg = {});

}  // namespace qbd
