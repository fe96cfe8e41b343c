#include "qbivar/gof.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>

#include "qbivar/errors.hpp"

namespace qbd {

namespace {

using LevelFn = std::function<CdfValue(double)>;
using ConditionalFn = std::function<CdfValue(double u1, double x2)>;

GofResult from_levels(std::vector<double> pit, GofMethod method, std::size_t clamped) {
  GofResult r;
  r.n = pit.size();
  r.d_stat = ks_statistic(pit);
  r.p_value = ks_p_value(r.d_stat, r.n);
  r.pit_values = std::move(pit);
  r.method = method;
  r.clamped = clamped;
  return r;
}

GofResult conditional_core(const PairedSample& s, const LevelFn& f1, const ConditionalFn& f21,
                           GofMethod mode) {
  s.validate();
  const std::size_t n = s.n();
  std::vector<double> u1(n);
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const CdfValue v = f1(s.x1[i]);
    u1[i] = v.u;
    clamped += v.clamp != Clamp::none;
  }
  if (mode == GofMethod::marginal) throw DomainError("ks_conditional: mode must be conditional");
  if (mode == GofMethod::conditional_pooled) {
    std::vector<double> pit(n);
    for (std::size_t i = 0; i < n; ++i) {
      const CdfValue v = f21(u1[i], s.x2[i]);
      pit[i] = v.u;
      clamped += v.clamp != Clamp::none;
    }
    return from_levels(std::move(pit), mode, clamped);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s.x1[a] < s.x1[b]; });
  GofResult r;
  r.method = mode;
  for (std::size_t i : order) {
    std::vector<double> pit;
    for (std::size_t j = 0; j < n; ++j) {
      if (s.x1[j] < s.x1[i]) continue;
      const CdfValue v = f21(u1[i], s.x2[j]);
      pit.push_back(v.u);
      clamped += v.clamp != Clamp::none;
    }
    PerPointStat p;
    p.x1 = s.x1[i];
    p.u1 = u1[i];
    p.n = pit.size();
    p.d_stat = ks_statistic(pit);
    p.p_value = ks_p_value(p.d_stat, p.n);
    if (r.per_point.empty()) r.pit_values = pit;
    r.per_point.push_back(p);
  }
  r.n = r.per_point.front().n;
  r.d_stat = r.per_point.front().d_stat;
  r.p_value = r.per_point.front().p_value;
  r.clamped = clamped;
  return r;
}

CdfValue clamp_level(double u) {
  if (u <= 0.0) return {0.0, Clamp::below};
  if (u >= 1.0) return {1.0, Clamp::above};
  return {u, Clamp::none};
}

}  // namespace

std::string method_name(GofMethod m) {
  switch (m) {
    case GofMethod::marginal: return "marginal";
    case GofMethod::conditional_pooled: return "conditional-pooled";
    case GofMethod::conditional_per_point: return "conditional-per-point";
  }
  return "unknown";
}

double ks_statistic(std::vector<double> u) {
  if (u.empty()) throw DataError("ks_statistic: no values");
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double k = static_cast<double>(i);
    d = std::max({d, (k + 1.0) / n - u[i], u[i] - k / n});
  }
  return d;
}

double ks_p_value(double d, std::size_t n) {
  if (n == 0) throw DataError("ks_p_value: n must be positive");
  const double lambda = std::sqrt(static_cast<double>(n)) * d;
  if (!(lambda > 0.0)) return 1.0;
  using std::numbers::pi;
  double p;
  if (lambda < 1.18) {
    // Theta-function form of the Kolmogorov CDF, fast for small lambda.
    const double w = pi * pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double term = std::exp(-(2.0 * k - 1.0) * (2.0 * k - 1.0) * w);
      cdf += term;
      if (term < 1e-17 * cdf) break;
    }
    p = 1.0 - std::sqrt(2.0 * pi) / lambda * cdf;
  } else {
    p = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      p += (k % 2 == 1 ? 2.0 : -2.0) * term;
      if (term < 1e-17) break;
    }
  }
  return std::clamp(p, 0.0, 1.0);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DataError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

GofResult ks_against(const std::vector<double>& data, const std::function<double(double)>& cdf_fn) {
  std::vector<double> pit(data.size());
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const CdfValue v = clamp_level(cdf_fn(data[i]));
    pit[i] = v.u;
    clamped += v.clamp != Clamp::none;
  }
  return from_levels(std::move(pit), GofMethod::marginal, clamped);
}

GofResult ks_marginal(const std::vector<double>& data, const MarginalParams& p,
                      const NumericConfig& cfg) {
  std::vector<double> pit(data.size());
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const CdfValue v = cdf(p, data[i], cfg);
    pit[i] = v.u;
    clamped += v.clamp != Clamp::none;
  }
  return from_levels(std::move(pit), GofMethod::marginal, clamped);
}

GofResult ks_conditional(const PairedSample& s, const BivariateParams& bp, GofMethod mode,
                         const NumericConfig& cfg) {
  bp.validate();
  return conditional_core(
      s, [&](double x1) { return cdf(bp.m1, x1, cfg); },
      [&](double u1, double x2) { return cdf(bp.m2, x2 / (1.0 + bp.theta * u1), cfg); }, mode);
}

GofResult ks_mrq_marginal(const std::vector<double>& x1, const MrqParams& p,
                          const NumericConfig& cfg) {
  return ks_against(x1, [&](double x) { return mrq_f1(p, x, cfg); });
}

GofResult ks_mrq_conditional(const PairedSample& s, const MrqParams& p, GofMethod mode,
                             const NumericConfig& cfg) {
  return conditional_core(
      s, [&](double x1) { return clamp_level(mrq_f1(p, x1, cfg)); },
      [&](double u1, double x2) { return clamp_level(mrq_f21(p, u1, x2, cfg)); }, mode);
}

QQData qq_data(std::vector<double> data, const std::function<double(double)>& quantile_fn) {
  if (data.size() < 2) throw DataError("qq_data: need at least 2 observations");
  std::sort(data.begin(), data.end());
  const double n = static_cast<double>(data.size());
  QQData qq;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double p = (static_cast<double>(i) + 1.0) / (n + 1.0);
    qq.rows.push_back({p, data[i], quantile_fn(p)});
  }
  return qq;
}

void write_qq_tsv(std::ostream& out, const QQData& qq) {
  out << "position\tempirical\tmodel\n";
  char buf[128];
  for (const auto& r : qq.rows) {
    std::snprintf(buf, sizeof buf, "%.17g\t%.17g\t%.17g\n", r.position, r.empirical, r.model);
    out << buf;
  }
}

}  // namespace qbd
