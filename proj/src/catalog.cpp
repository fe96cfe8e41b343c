#include "qbivar/catalog.hpp"

#include <cmath>
#include <numbers>

#include "qbivar/errors.hpp"
#include "qbivar/specfun.hpp"

namespace qbd {

namespace {

struct CaseInfo {
  CaseId id;
  const char* name;
  std::vector<std::string> params;
  bool closed_cdf;
  bool closed_joint;
};

const std::vector<CaseInfo>& table() {
  static const std::vector<CaseInfo> t = {
      {CaseId::complementary_beta, "complementary-beta", {"alpha", "beta"}, true, true},
      {CaseId::power, "power", {"a", "b"}, true, true},
      {CaseId::uniform, "uniform", {"b"}, true, true},
      {CaseId::exponential, "exponential", {"c"}, true, true},
      {CaseId::rescaled_beta, "rescaled-beta", {"a", "b"}, true, true},
      {CaseId::pareto2, "pareto2", {"d", "b"}, true, true},
      {CaseId::pareto1, "pareto1", {"sigma", "alpha"}, true, true},
      {CaseId::loglogistic, "loglogistic", {"a", "b"}, true, true},
      {CaseId::govindarajulu, "govindarajulu", {"sigma", "b"}, false, false},
      {CaseId::sine, "sine", {}, true, false},
      {CaseId::scaled_t2, "scaled-t2", {"c"}, true, false},
  };
  return t;
}

const CaseInfo& info(CaseId id) {
  for (const auto& c : table()) {
    if (c.id == id) return c;
  }
  throw DomainError("catalog: unknown case id");
}

double get(const NaturalParams& n, const char* key) {
  const auto it = n.find(key);
  if (it == n.end()) throw DomainError(std::string("catalog: missing parameter ") + key);
  if (!std::isfinite(it->second)) {
    throw DomainError(std::string("catalog: parameter ") + key + " must be finite");
  }
  return it->second;
}

double positive(const NaturalParams& n, const char* key) {
  const double v = get(n, key);
  if (!(v > 0.0)) throw DomainError(std::string("catalog: parameter ") + key + " must be > 0");
  return v;
}

const NaturalParams& component(const CatalogEntry& e, int i) {
  if (i == 1) return e.natural1;
  if (i == 2) return e.natural2;
  throw DomainError("catalog: component index must be 1 or 2");
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Returns {F(x), 1 - F(x)} for one marginal.
std::pair<double, double> closed_levels(CaseId id, const NaturalParams& n, double x) {
  using std::numbers::pi;
  switch (id) {
    case CaseId::complementary_beta: {
      const double a = get(n, "alpha") + 1.0;
      const double b = get(n, "beta") + 1.0;
      if (x <= 0.0) return {0.0, 1.0};
      if (x >= 1.0) return {1.0, 0.0};
      if (x <= 0.5) {
        const double u = inv_reg_inc_beta(x, a, b);
        return {u, 1.0 - u};
      }
      const double ub = inv_reg_inc_beta(1.0 - x, b, a);
      return {1.0 - ub, ub};
    }
    case CaseId::power: {
      const double a = get(n, "a");
      const double b = get(n, "b");
      if (x <= 0.0) return {0.0, 1.0};
      if (x >= b) return {1.0, 0.0};
      const double l = a * std::log(x / b);
      return {std::exp(l), -std::expm1(l)};
    }
    case CaseId::uniform: {
      const double b = get(n, "b");
      const double u = clamp01(x / b);
      return {u, clamp01((b - x) / b)};
    }
    case CaseId::exponential: {
      const double c = get(n, "c");
      if (x <= 0.0) return {0.0, 1.0};
      return {-std::expm1(-x / c), std::exp(-x / c)};
    }
    case CaseId::rescaled_beta: {
      const double a = get(n, "a");
      const double b = get(n, "b");
      if (x <= 0.0) return {0.0, 1.0};
      if (x >= b) return {1.0, 0.0};
      const double l = a * std::log1p(-x / b);
      return {-std::expm1(l), std::exp(l)};
    }
    case CaseId::pareto2: {
      const double d = get(n, "d");
      const double b = get(n, "b");
      if (x <= 0.0) return {0.0, 1.0};
      const double l = -d * std::log1p(x / b);
      return {-std::expm1(l), std::exp(l)};
    }
    case CaseId::pareto1: {
      const double s = get(n, "sigma");
      const double a = get(n, "alpha");
      if (x <= s) return {0.0, 1.0};
      const double l = -a * std::log(x / s);
      return {-std::expm1(l), std::exp(l)};
    }
    case CaseId::loglogistic: {
      const double a = get(n, "a");
      const double b = get(n, "b");
      if (x <= 0.0) return {0.0, 1.0};
      const double r = std::pow(x / b, 1.0 / a);
      return {r / (1.0 + r), 1.0 / (1.0 + r)};
    }
    case CaseId::sine: {
      if (x <= 0.0) return {0.0, 1.0};
      if (x >= 1.0) return {1.0, 0.0};
      // (1 - cos πx)/2 = sin²(πx/2), and the complement is cos²(πx/2).
      const double s = std::sin(0.5 * pi * x);
      const double c = std::sin(0.5 * pi * (1.0 - x));
      return {s * s, c * c};
    }
    case CaseId::scaled_t2: {
      const double c = get(n, "c");
      const double r = std::sqrt(16.0 * c * c + x * x);
      // Each tail is written in the form that avoids 1 - (nearly 1).
      const double tail = 8.0 * c * c / (r * (r + std::abs(x)));
      return x >= 0.0 ? std::pair{1.0 - tail, tail} : std::pair{tail, 1.0 - tail};
    }
    case CaseId::govindarajulu:
      break;
  }
  throw DomainError("catalog: " + case_name(id) + " has no tractable distribution function");
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : table()) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

CaseId case_from_name(const std::string& name) {
  for (const auto& c : table()) {
    if (name == c.name) return c.id;
  }
  throw DomainError("catalog: unknown case '" + name + "'");
}

std::string case_name(CaseId id) { return info(id).name; }

std::vector<std::string> natural_param_names(CaseId id) { return info(id).params; }

MarginalParams map_marginal(CaseId id, const NaturalParams& n) {
  MarginalParams p;
  switch (id) {
    case CaseId::complementary_beta: {
      const double a = get(n, "alpha");
      const double b = get(n, "beta");
      if (!(a > -1.0 && b > -1.0)) {
        throw DomainError("catalog: complementary-beta requires alpha, beta > -1");
      }
      p = {1.0 / beta_fn(a + 1.0, b + 1.0), a, b, 0.0};
      break;
    }
    case CaseId::power: {
      const double a = positive(n, "a");
      const double b = positive(n, "b");
      p = {b / a, 1.0 / a - 1.0, 0.0, 0.0};
      break;
    }
    case CaseId::uniform:
      p = {positive(n, "b"), 0.0, 0.0, 0.0};
      break;
    case CaseId::exponential:
      p = {positive(n, "c"), 0.0, -1.0, 0.0};
      break;
    case CaseId::rescaled_beta: {
      const double a = positive(n, "a");
      const double b = positive(n, "b");
      p = {b / a, 0.0, 1.0 / a - 1.0, 0.0};
      break;
    }
    case CaseId::pareto2: {
      const double d = positive(n, "d");
      const double b = positive(n, "b");
      // Q(u) = c d ((1-u)^(-1/d) - 1), so the Lomax scale is b = c d.
      p = {b / d, 0.0, -1.0 - 1.0 / d, 0.0};
      break;
    }
    case CaseId::pareto1: {
      const double s = positive(n, "sigma");
      const double a = positive(n, "alpha");
      p = {s / a, 0.0, -1.0 / a - 1.0, s};
      break;
    }
    case CaseId::loglogistic: {
      const double a = positive(n, "a");
      const double b = positive(n, "b");
      p = {a * b, a - 1.0, -(a + 1.0), 0.0};
      break;
    }
    case CaseId::govindarajulu: {
      const double s = positive(n, "sigma");
      const double b = positive(n, "b");
      p = {s * b * (b + 1.0), b - 1.0, 1.0, 0.0};
      break;
    }
    case CaseId::sine:
      p = {1.0 / std::numbers::pi, -0.5, -0.5, 0.0};
      break;
    case CaseId::scaled_t2:
      p = {positive(n, "c"), -1.5, -1.5, 0.0};
      break;
  }
  for (const auto& [key, value] : n) {
    bool known = false;
    for (const auto& name : info(id).params) known = known || name == key;
    if (!known) throw DomainError("catalog: " + case_name(id) + " has no parameter '" + key + "'");
    (void)value;
  }
  p.validate();
  return p;
}

NaturalParams unmap_marginal(CaseId id, const MarginalParams& p) {
  p.validate();
  switch (id) {
    case CaseId::power:
      if (p.beta != 0.0 || !(p.alpha > -1.0) || p.location != 0.0) break;
      return {{"a", 1.0 / (p.alpha + 1.0)}, {"b", p.c / (p.alpha + 1.0)}};
    case CaseId::pareto2: {
      if (p.alpha != 0.0 || !(p.beta < -1.0) || p.location != 0.0) break;
      const double d = -1.0 / (1.0 + p.beta);
      return {{"d", d}, {"b", p.c * d}};
    }
    case CaseId::loglogistic: {
      const double a = p.alpha + 1.0;
      if (!(a > 0.0) || p.beta != -(a + 1.0) || p.location != 0.0) break;
      return {{"a", a}, {"b", p.c / a}};
    }
    default:
      throw DomainError("catalog: no inverse mapping for " + case_name(id));
  }
  throw DomainError("catalog: parameters are not of the " + case_name(id) + " form");
}

CatalogEntry make_case(CaseId id, const NaturalParams& natural1, const NaturalParams& natural2,
                       double theta) {
  const CaseInfo& ci = info(id);
  CatalogEntry e;
  e.id = id;
  e.name = ci.name;
  e.natural1 = natural1;
  e.natural2 = natural2;
  e.mapped = {map_marginal(id, natural1), map_marginal(id, natural2), theta};
  e.mapped.validate();
  e.closed_marginal_cdf = ci.closed_cdf;
  e.closed_conditional_survival = ci.closed_cdf;
  e.closed_joint_survival = ci.closed_joint;
  return e;
}

CatalogEntry make_case(const std::string& name, const std::map<std::string, double>& flat) {
  const CaseId id = case_from_name(name);
  NaturalParams n1, n2;
  double theta = 0.0;
  for (const auto& [key, value] : flat) {
    if (key == "theta") {
      theta = value;
      continue;
    }
    const char last = key.empty() ? '\0' : key.back();
    if (last == '1') {
      n1[key.substr(0, key.size() - 1)] = value;
    } else if (last == '2') {
      n2[key.substr(0, key.size() - 1)] = value;
    } else {
      throw DomainError("catalog: parameter '" + key + "' needs a component suffix 1 or 2");
    }
  }
  return make_case(id, n1, n2, theta);
}

double closed_marginal_cdf(const CatalogEntry& entry, int i, double x) {
  return closed_levels(entry.id, component(entry, i), x).first;
}

double closed_marginal_survival(const CatalogEntry& entry, int i, double x) {
  return closed_levels(entry.id, component(entry, i), x).second;
}

double closed_conditional_survival(const CatalogEntry& entry, double u1, double x2) {
  if (!(u1 >= 0.0 && u1 <= 1.0)) throw DomainError("catalog: u1 must lie in [0, 1]");
  const double scale = 1.0 + entry.mapped.theta * u1;
  return closed_levels(entry.id, entry.natural2, x2 / scale).second;
}

double closed_joint_survival(const CatalogEntry& entry, double x1, double x2) {
  if (!entry.closed_joint_survival) {
    throw DomainError("catalog: " + entry.name + " has no closed-form joint survival");
  }
  const auto [u1, u1_bar] = closed_levels(entry.id, entry.natural1, x1);
  return u1_bar * closed_conditional_survival(entry, u1, x2);
}

}  // namespace qbd
