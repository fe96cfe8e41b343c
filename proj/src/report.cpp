#include "qbivar/report.hpp"

#include <cstdio>

namespace qbd {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

Json to_json(const NumericConfig& cfg) {
  return Json{{"quad_abs_tol", cfg.quad_abs_tol},
              {"quad_rel_tol", cfg.quad_rel_tol},
              {"quad_max_depth", cfg.quad_max_depth},
              {"root_tol", cfg.root_tol},
              {"root_max_iter", cfg.root_max_iter}};
}

Json to_json(const MarginalParams& p) {
  return Json{{"c", p.c}, {"alpha", p.alpha}, {"beta", p.beta}, {"location", p.location}};
}

Json to_json(const BivariateParams& bp) {
  return Json{{"m1", to_json(bp.m1)}, {"m2", to_json(bp.m2)}, {"theta", bp.theta}};
}

Json to_json(const LMomentVector& l) {
  return Json{{"l1", l.l1}, {"l2", l.l2}, {"l3", l.l3}, {"l4", l.l4},
              {"t2", l.t2}, {"t3", l.t3}, {"t4", l.t4}};
}

Json to_json(const LComomentSet& s) {
  return Json{{"L2_12", s.L2_12},         {"L3_12", s.L3_12},         {"L4_12", s.L4_12},
              {"L2_21", s.L2_21},         {"L3_21", s.L3_21},         {"L4_21", s.L4_21},
              {"rho12", s.rho12},         {"rho21", s.rho21},         {"ratio3_12", s.ratio3_12},
              {"ratio4_12", s.ratio4_12}, {"ratio3_21", s.ratio3_21}, {"ratio4_21", s.ratio4_21}};
}

Json to_json(const PowerCaseReport& r) {
  return Json{{"printed_lcov", r.printed_lcov},
              {"printed_rho", r.printed_rho},
              {"corrected_lcov", r.corrected_lcov},
              {"corrected_rho", r.corrected_rho},
              {"quadrature_lcov", r.quadrature_lcov},
              {"quadrature_rho", r.quadrature_rho},
              {"lcov_discrepancy", r.lcov_discrepancy},
              {"rho_discrepancy", r.rho_discrepancy}};
}

Json to_json(const FitResult& f) {
  Json residuals = Json::object();
  for (const auto& [k, v] : f.residuals) residuals[k] = v;
  return Json{{"params", to_json(f.params)},
              {"sample_lmoments_x1", to_json(f.sample_lmoments1)},
              {"sample_lmoments_x2", to_json(f.sample_lmoments2)},
              {"sample_product_mean", f.sample_product_mean},
              {"theta_bracket", Json::array({f.theta_bracket_lo, f.theta_bracket_hi})},
              {"residuals", residuals},
              {"warnings", f.warnings}};
}

Json to_json(const GofResult& g, bool include_pit) {
  Json j{{"method", method_name(g.method)},
         {"d_stat", g.d_stat},
         {"p_value", g.p_value},
         {"p_value_note", "approximate, estimation-ignored"},
         {"n", g.n},
         {"clamped", g.clamped}};
  if (include_pit) j["pit_values"] = g.pit_values;
  if (!g.per_point.empty()) {
    Json pts = Json::array();
    for (const auto& p : g.per_point) {
      pts.push_back(Json{{"x1", p.x1}, {"u1", p.u1}, {"n", p.n}, {"d_stat", p.d_stat},
                         {"p_value", p.p_value}});
    }
    j["per_point"] = pts;
  }
  return j;
}

Json to_json(const MrqParams& p) {
  return Json{{"a1", p.a1}, {"b1", p.b1}, {"a2", p.a2}, {"b2", p.b2}, {"c", p.c}, {"d", p.d}};
}

Json to_json(const MrqFit& f) {
  return Json{{"params", to_json(f.params)},
              {"sample_product_mean", f.sample_product_mean},
              {"sample_lcov_12", f.sample_lcov_12},
              {"lcov_residual", f.lcov_residual},
              {"warnings", f.warnings}};
}

Json to_json(const CatalogEntry& e) {
  Json n1 = Json::object(), n2 = Json::object();
  for (const auto& [k, v] : e.natural1) n1[k] = v;
  for (const auto& [k, v] : e.natural2) n2[k] = v;
  return Json{{"name", e.name},
              {"natural1", n1},
              {"natural2", n2},
              {"mapped", to_json(e.mapped)},
              {"closed_forms",
               Json{{"marginal_cdf", e.closed_marginal_cdf},
                    {"conditional_survival", e.closed_conditional_survival},
                    {"joint_survival", e.closed_joint_survival}}}};
}

Json make_report(const std::string& command, const std::vector<std::string>& argv,
                 const PairedSample* sample, const NumericConfig& cfg) {
  Json j;
  j["command"] = command;
  j["argv"] = argv;
  if (sample != nullptr) {
    j["input"] = Json{{"source", sample->source},
                      {"n", sample->n()},
                      {"digest_fnv1a64", hex64(sample_digest(*sample))}};
  }
  j["numeric_config"] = to_json(cfg);
  j["warnings"] = Json::array();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qbd
