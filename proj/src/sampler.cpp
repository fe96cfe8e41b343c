#include "qbivar/sampler.hpp"

#include <cmath>
#include <limits>

#include "qbivar/errors.hpp"

namespace qbd {

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t k) const {
  return mix(key_ + 0x9e3779b97f4a7c15ULL * (k + 1));
}

double CounterRng::uniform(std::uint64_t k) const {
  return (static_cast<double>(bits(k) >> 11) + 0.5) * 0x1.0p-53;
}

std::string sampler_name(SamplerMethod m) {
  return m == SamplerMethod::transform ? "transform" : "exact";
}

SamplerMethod sampler_from_name(const std::string& name) {
  if (name == "transform") return SamplerMethod::transform;
  if (name == "exact") return SamplerMethod::exact;
  throw DomainError("unknown sampler method '" + name + "'");
}

double exact_conditional_survival(const BivariateParams& bp, double u1, double v,
                                  const NumericConfig& cfg) {
  if (!(u1 >= 0.0 && u1 <= 1.0) || !(v > 0.0 && v < 1.0)) {
    throw DomainError("exact_conditional_survival: requires u1 in [0, 1] and v in (0, 1)");
  }
  const double k = (1.0 - u1) * bp.theta / (1.0 + bp.theta * u1);
  if (k == 0.0) return 1.0 - v;
  return (1.0 - v) - k * quantile(bp.m2, v, cfg) / quantile_density(bp.m2, v);
}

namespace {

double exact_level(const BivariateParams& bp, double u1, double target, std::size_t index,
                   const NumericConfig& cfg) {
  const RealFn f = [&](double v) { return exact_conditional_survival(bp, u1, v, cfg) - target; };
  double lo = 0.5, hi = 0.5;
  double f_lo = f(lo);
  double f_hi = f_lo;
  if (f_lo >= 0.0) {
    for (int k = 2; f_hi > 0.0 && k <= 60; ++k) {
      hi = 1.0 - std::ldexp(1.0, -k);
      f_hi = f(hi);
    }
    if (f_hi > 0.0) return hi;
  } else {
    for (int k = 2; f_lo < 0.0 && k <= 1000; ++k) {
      lo = std::ldexp(1.0, -k);
      f_lo = f(lo);
    }
    if (f_lo < 0.0) return lo;
  }
  RootTolerance tol;
  tol.xtol = cfg.root_tol;
  tol.ftol = 0.0;
  tol.max_iter = cfg.root_max_iter;
  try {
    return find_root(f, lo, hi, f_lo, f_hi, tol);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError("draw " + std::to_string(index) + ": " + e.what());
  }
}

}  // namespace

PairedSample draw(const BivariateParams& bp, const SamplerSpec& spec, const NumericConfig& cfg) {
  bp.validate();
  if (spec.n < 1) throw DomainError("draw: n must be at least 1");
  const CounterRng rng(spec.seed, 0);
  PairedSample out;
  out.source = "sample:" + sampler_name(spec.method) + ":seed=" + std::to_string(spec.seed);
  out.x1.resize(spec.n);
  out.x2.resize(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double u1 = rng.uniform(2 * i);
    const double u2 = rng.uniform(2 * i + 1);
    const double scale = 1.0 + bp.theta * u1;
    out.x1[i] = quantile(bp.m1, u1, cfg);
    if (spec.method == SamplerMethod::transform) {
      out.x2[i] = scale * quantile(bp.m2, u2, cfg);
    } else {
      const double v = exact_level(bp, u1, 1.0 - u2, i, cfg);
      out.x2[i] = scale * quantile(bp.m2, v, cfg);
    }
  }
  return out;
}

}  // namespace qbd
