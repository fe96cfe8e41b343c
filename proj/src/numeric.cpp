#include "qbivar/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "qbivar/errors.hpp"

namespace qbd {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes kXgk[1], [3], [5], [7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kMaxIntervals = 4000;

struct Segment {
  double a;
  double b;
  double value;
  double error;
  int depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

double eval(const RealFn& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw ConvergenceError("integrate: integrand is not finite at a quadrature node");
  }
  return y;
}

Segment gk15(const RealFn& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = eval(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = eval(f, center - dx);
    const double f2 = eval(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double err = std::abs((kronrod - gauss) * half);
  return {a, b, value, err, depth};
}

}  // namespace

void NumericConfig::validate() const {
  if (!(quad_abs_tol > 0.0) || !(quad_rel_tol > 0.0) || quad_max_depth < 1 ||
      !(root_tol > 0.0) || root_max_iter < 1) {
    throw DomainError("NumericConfig: tolerances and iteration limits must be positive");
  }
}

NumericConfig NumericConfig::tightened(double factor) const {
  NumericConfig out = *this;
  out.quad_abs_tol *= factor;
  out.quad_rel_tol *= factor;
  return out;
}

QuadResult integrate(const RealFn& f, double a, double b, const NumericConfig& cfg) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> open;
  std::vector<Segment> frozen;
  Segment first = gk15(f, a, b, 0);
  out.evaluations = 15;
  double total = first.value;
  double total_err = first.error;
  open.push(first);

  int intervals = 1;
  while (true) {
    const double target = std::max(cfg.quad_abs_tol, cfg.quad_rel_tol * std::abs(total));
    if (total_err <= target) {
      out.converged = true;
      break;
    }
    if (open.empty() || intervals >= kMaxIntervals) break;
    Segment worst = open.top();
    open.pop();
    if (worst.depth >= cfg.quad_max_depth) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gk15(f, worst.a, mid, worst.depth + 1);
    Segment right = gk15(f, mid, worst.b, worst.depth + 1);
    out.evaluations += 30;
    ++intervals;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }
  // Re-sum from the leaves to shed accumulated rounding in the running totals.
  double sum = 0.0;
  double err = 0.0;
  for (const auto& s : frozen) {
    sum += s.value;
    err += s.error;
  }
  while (!open.empty()) {
    sum += open.top().value;
    err += open.top().error;
    open.pop();
  }
  out.value = sum;
  out.error = err;
  if (!out.converged) {
    out.converged = err <= std::max(cfg.quad_abs_tol, cfg.quad_rel_tol * std::abs(sum));
  }
  return out;
}

double integrate_checked(const RealFn& f, double a, double b, const NumericConfig& cfg) {
  const QuadResult r = integrate(f, a, b, cfg);
  if (!r.converged) {
    throw ConvergenceError("integrate: tolerance not reached (error estimate " +
                           std::to_string(r.error) + ")");
  }
  return r.value;
}

namespace {

// ∫ₓʸ t^e0 (1-t)^e1 g(t, 1-t) dt on 0 <= x < y <= 1/2, mirrored when `flip`.
QuadResult power_piece(const UnitFn& g, double e0, double e1, double x, double y, bool flip,
                       const NumericConfig& cfg) {
  const auto smooth = [&](double t) {
    const double tb = 1.0 - t;
    const double w = std::pow(tb, e1);
    return flip ? w * g(tb, t) : w * g(t, tb);
  };
  const double p = e0 + 1.0;
  if (std::abs(p) < 1e-12) {
    const RealFn h = [&](double r) { return smooth(std::exp(r)); };
    return integrate(h, std::log(x), std::log(y), cfg);
  }
  const double inv_p = 1.0 / p;
  const RealFn h = [&](double s) { return smooth(std::pow(s, inv_p)) * std::abs(inv_p); };
  const double s_lo = std::pow(x, p);
  const double s_hi = std::pow(y, p);
  return integrate(h, std::min(s_lo, s_hi), std::max(s_lo, s_hi), cfg);
}

}  // namespace

double integrate_power_weighted(const UnitFn& g, double e0, double e1, double x, double y,
                                const NumericConfig& cfg) {
  if (!(x >= 0.0 && y <= 1.0 && x <= y)) {
    throw DomainError("integrate_power_weighted: requires 0 <= x <= y <= 1");
  }
  if ((x == 0.0 && !(e0 > -1.0)) || (y == 1.0 && !(e1 > -1.0))) {
    throw DomainError("integrate_power_weighted: integral diverges at an endpoint");
  }
  if (x == y) return 0.0;
  NumericConfig piece_cfg = cfg;
  piece_cfg.quad_abs_tol *= 0.5;
  QuadResult left, right;
  if (x < 0.5) left = power_piece(g, e0, e1, x, std::min(y, 0.5), false, piece_cfg);
  if (y > 0.5) {
    right = power_piece(g, e1, e0, 1.0 - y, 1.0 - std::max(x, 0.5), true, piece_cfg);
  }
  if (x >= 0.5) left.converged = true;
  if (y <= 0.5) right.converged = true;
  const double value = left.value + right.value;
  const double err = left.error + right.error;
  if (!(left.converged && right.converged) &&
      err > std::max(cfg.quad_abs_tol, cfg.quad_rel_tol * std::abs(value))) {
    throw ConvergenceError("integrate_power_weighted: tolerance not reached (error estimate " +
                           std::to_string(err) + ")");
  }
  return value;
}

double integrate_unit(const UnitFn& g, double e0, double e1, const NumericConfig& cfg) {
  return integrate_power_weighted(g, e0, e1, 0.0, 1.0, cfg);
}

double find_root(const RealFn& f, double lo, double hi, double f_lo, double f_hi,
                 const RootTolerance& tol) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw ConvergenceError("find_root: bracket does not change sign");
  }
  double a = lo, b = hi, c = lo;
  double fa = f_lo, fb = f_hi, fc = f_lo;
  double d = b - a, e = d;
  for (int it = 0; it < tol.max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double step_floor = 2.0 * eps * std::abs(b) + 1e-300;
    const double xm = 0.5 * (c - b);
    if (fb == 0.0 || std::abs(xm) <= step_floor) return b;
    if (std::abs(xm) <= 0.5 * tol.xtol && std::abs(fb) <= tol.ftol) return b;

    if (std::abs(e) >= step_floor && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(step_floor * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > step_floor) ? d : (xm > 0.0 ? step_floor : -step_floor);
    fb = f(b);
    if (std::isnan(fb)) throw ConvergenceError("find_root: function returned NaN");
  }
  if (std::abs(c - b) <= tol.xtol) return b;
  throw ConvergenceError("find_root: iteration cap reached");
}

}  // namespace qbd
