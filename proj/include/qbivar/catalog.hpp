#pragma once

#include <map>
#include <string>
#include <vector>

#include "qbivar/model.hpp"

namespace qbd {

enum class CaseId {
  complementary_beta,
  power,
  uniform,
  exponential,
  rescaled_beta,
  pareto2,
  pareto1,
  loglogistic,
  govindarajulu,
  sine,
  scaled_t2,
};

/// Natural parameters of one marginal keyed by their conventional names
/// (`a`, `b`, `c`, `d`, `sigma`, `alpha`, `beta`).
using NaturalParams = std::map<std::string, double>;

struct CatalogEntry {
  CaseId id = CaseId::uniform;
  std::string name;
  NaturalParams natural1;
  NaturalParams natural2;
  BivariateParams mapped;
  bool closed_marginal_cdf = false;
  bool closed_conditional_survival = false;
  bool closed_joint_survival = false;
};

/// CLI-facing identifiers in catalog order.
const std::vector<std::string>& catalog_names();
CaseId case_from_name(const std::string& name);
std::string case_name(CaseId id);

/// Names of the natural parameters of one marginal of a case, without the
/// component suffix.
std::vector<std::string> natural_param_names(CaseId id);

MarginalParams map_marginal(CaseId id, const NaturalParams& natural);

/// Inverse of `map_marginal` for the cases whose mapping is bijective on
/// (c, alpha, beta): power, pareto2 and loglogistic.
NaturalParams unmap_marginal(CaseId id, const MarginalParams& p);

/// Builds an entry from suffixed names (`a1`, `b2`, ...) plus an optional
/// `theta` (default 0). Unknown or missing names are domain errors.
CatalogEntry make_case(const std::string& name, const std::map<std::string, double>& flat);

CatalogEntry make_case(CaseId id, const NaturalParams& natural1, const NaturalParams& natural2,
                       double theta);

/// Analytic F_i(x) for component i in {1, 2}.
double closed_marginal_cdf(const CatalogEntry& entry, int i, double x);

/// Analytic 1 - F_i(x), free of cancellation in the upper tail.
double closed_marginal_survival(const CatalogEntry& entry, int i, double x);

/// Analytic P(X2 > x2 | X1 > Q1(u1)).
double closed_conditional_survival(const CatalogEntry& entry, double u1, double x2);

/// Analytic joint survival F̄1(x1) F̄2(x2 / (1 + theta F1(x1))).
double closed_joint_survival(const CatalogEntry& entry, double x1, double x2);

}  // namespace qbd
