#pragma once

#include <functional>

namespace qbd {

struct NumericConfig {
  double quad_abs_tol = 1e-10;
  double quad_rel_tol = 1e-8;
  int quad_max_depth = 50;
  double root_tol = 1e-12;
  int root_max_iter = 200;

  void validate() const;
  /// Same settings with quadrature tolerances scaled by `factor`.
  [[nodiscard]] NumericConfig tightened(double factor) const;
};

using RealFn = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 15-point Gauss–Kronrod quadrature on a finite [a, b].
QuadResult integrate(const RealFn& f, double a, double b, const NumericConfig& cfg);

/// As `integrate` but throws ConvergenceError when the tolerance is not met.
double integrate_checked(const RealFn& f, double a, double b, const NumericConfig& cfg);

/// Smooth factor of a power-weighted integrand, called with (t, 1 - t) so
/// that both tails keep full relative precision.
using UnitFn = std::function<double(double t, double t_bar)>;

/// ∫ₓʸ t^e0 (1-t)^e1 g(t, 1-t) dt for 0 <= x < y <= 1.
///
/// The interval is split at 1/2 and each half is mapped with s = t^(e0+1)
/// (resp. s = (1-t)^(e1+1)), which absorbs the endpoint power exactly; e = -1
/// uses a logarithmic map. An endpoint at 0 (or 1) requires e0 > -1 (e1 > -1).
double integrate_power_weighted(const UnitFn& g, double e0, double e1, double x, double y,
                                const NumericConfig& cfg);

/// ∫₀¹ t^e0 (1-t)^e1 g(t, 1-t) dt with e0, e1 > -1.
double integrate_unit(const UnitFn& g, double e0, double e1, const NumericConfig& cfg);

/// Stopping rule for `find_root`: the bracket must be narrower than `xtol`
/// and either |f| <= ftol or the bracket is down to rounding level.
struct RootTolerance {
  double xtol = 1e-12;
  double ftol = 0.0;
  int max_iter = 200;
};

/// Brent's method on a sign-changing bracket [lo, hi].
double find_root(const RealFn& f, double lo, double hi, double f_lo, double f_hi,
                 const RootTolerance& tol);

}  // namespace qbd
