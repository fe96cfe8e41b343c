#include "qbivar/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbivar/catalog.hpp"
#include "qbivar/comoments.hpp"
#include "qbivar/data.hpp"
#include "qbivar/errors.hpp"
#include "qbivar/fit.hpp"
#include "qbivar/gof.hpp"
#include "qbivar/lmoments.hpp"
#include "qbivar/mrq.hpp"
#include "qbivar/report.hpp"
#include "qbivar/sampler.hpp"

namespace qbd {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

// Thrown for inconsistent flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string out_stem;
  double quad_tol = kUnset;
  double root_tol = kUnset;

  NumericConfig config() const {
    NumericConfig cfg;
    if (!std::isnan(quad_tol)) {
      cfg.quad_rel_tol = quad_tol;
      cfg.quad_abs_tol = quad_tol * 1e-2;
    }
    if (!std::isnan(root_tol)) cfg.root_tol = root_tol;
    try {
      cfg.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--out", f.out_stem, "Output file stem (report goes to <stem>.report.json)");
  sub->add_option("--quad-tol", f.quad_tol, "Relative quadrature tolerance");
  sub->add_option("--root-tol", f.root_tol, "Root-finding tolerance on probability levels");
}

const std::vector<std::string> kRawKeys = {"c", "alpha", "beta", "loc"};
const std::vector<std::string> kNaturalOnly = {"a", "b", "d", "sigma"};

struct ModelFlags {
  std::string catalog;
  std::map<std::string, double> values;
  CLI::App* app = nullptr;
};

void add_model(CLI::App* sub, ModelFlags& f) {
  f.app = sub;
  sub->add_option("--catalog", f.catalog, "Named special case; parameter flags are then natural")
      ->check(CLI::IsMember(catalog_names()));
  std::vector<std::string> keys = kRawKeys;
  keys.insert(keys.end(), kNaturalOnly.begin(), kNaturalOnly.end());
  for (const auto& k : keys) {
    for (const char* i : {"1", "2"}) {
      const std::string name = k + i;
      f.values[name] = kUnset;
      sub->add_option("--" + name, f.values[name]);
    }
  }
  f.values["theta"] = kUnset;
  sub->add_option("--theta", f.values["theta"], "Dependence parameter (>= 0)");
}

bool given(const ModelFlags& f, const std::string& name) { return f.app->count("--" + name) > 0; }

std::optional<BivariateParams> model_from_flags(const ModelFlags& f) {
  bool any = !f.catalog.empty();
  for (const auto& [k, v] : f.values) any = any || given(f, k);
  if (!any) return std::nullopt;
  try {
    if (!f.catalog.empty()) {
      std::map<std::string, double> flat;
      for (const auto& [k, v] : f.values) {
        if (!given(f, k)) continue;
        if (k.rfind("loc", 0) == 0) throw UsageError("--loc is not a catalog parameter");
        flat[k] = v;
      }
      return make_case(f.catalog, flat).mapped;
    }
    for (const auto& k : kNaturalOnly) {
      for (const char* i : {"1", "2"}) {
        if (given(f, k + i)) throw UsageError("--" + k + i + " requires --catalog");
      }
    }
    const auto value = [&](const std::string& name, double fallback) {
      return given(f, name) ? f.values.at(name) : fallback;
    };
    BivariateParams bp;
    bp.m1 = {value("c1", 1.0), value("alpha1", 0.0), value("beta1", 0.0), value("loc1", 0.0)};
    bp.m2 = {value("c2", 1.0), value("alpha2", 0.0), value("beta2", 0.0), value("loc2", 0.0)};
    bp.theta = value("theta", 0.0);
    bp.validate();
    return bp;
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write '" + path + "'");
  f << text;
}

// The report goes to <stem>.report.json when a stem is given, else to `out`.
void emit(const Json& report, const CommonFlags& common, std::ostream& out) {
  if (common.out_stem.empty()) {
    out << dump(report);
  } else {
    write_file(common.out_stem + ".report.json", dump(report));
    out << "wrote " << common.out_stem << ".report.json\n";
  }
}

std::vector<std::string> args_of(int argc, const char* const* argv) {
  return std::vector<std::string>(argv + (argc > 0 ? 1 : 0), argv + argc);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct ReproRow {
  std::string dataset;
  std::string quantity;
  double published;
  double computed;
  double tol;
  bool relative;
  [[nodiscard]] bool pass() const {
    const double bound = relative ? tol * std::abs(published) : tol;
    return std::abs(computed - published) <= bound;
  }
};

std::vector<ReproRow> reproduce_rows(const NumericConfig& cfg) {
  std::vector<ReproRow> rows;
  const PairedSample cable = builtin_sample("cable");
  const PairedSample comp = builtin_sample("components");

  const FitResult f1 = fit_bivariate(cable, cfg);
  const FitResult f2 = fit_bivariate(comp, cfg);
  rows.push_back({"cable", "mean x1", 17.622, f1.sample_lmoments1.l1, 0.001, false});
  const auto params = [&](const char* ds, const FitResult& f, const BivariateParams& published) {
    rows.push_back({ds, "c1", published.m1.c, f.params.m1.c, 0.05, true});
    rows.push_back({ds, "alpha1", published.m1.alpha, f.params.m1.alpha, 0.05, true});
    rows.push_back({ds, "beta1", published.m1.beta, f.params.m1.beta, 0.05, true});
    rows.push_back({ds, "c2", published.m2.c, f.params.m2.c, 0.05, true});
    rows.push_back({ds, "alpha2", published.m2.alpha, f.params.m2.alpha, 0.05, true});
    rows.push_back({ds, "beta2", published.m2.beta, f.params.m2.beta, 0.05, true});
    rows.push_back({ds, "theta", published.theta, f.params.theta, 0.05, false});
  };
  const BivariateParams pub1{{9.0819, 0.4864, 0.9946}, {29.2295, 0.3406, 0.3531}, 0.6821};
  const BivariateParams pub1_neg{{9.0819, -0.4864, -0.9946}, {29.2295, -0.3406, -0.3531}, 0.6821};
  const BivariateParams pub2{{13.0499, 0.8856, -0.1844}, {5.9257, 0.3555, -0.6695}, 0.5492};
  params("cable", f1, pub1);
  rows.push_back({"cable", "D1 (published)", 0.097, ks_marginal(cable.x1, pub1.m1, cfg).d_stat,
                  0.005, false});
  rows.push_back({"cable", "D21,1 (published)", 0.155,
                  ks_conditional(cable, pub1, GofMethod::conditional_per_point, cfg).d_stat, 0.01,
                  false});
  rows.push_back({"cable", "D1 (published, shapes negated)", 0.097,
                  ks_marginal(cable.x1, pub1_neg.m1, cfg).d_stat, 0.005, false});
  rows.push_back({"cable", "D21,1 (published, shapes negated)", 0.155,
                  ks_conditional(cable, pub1_neg, GofMethod::conditional_per_point, cfg).d_stat,
                  0.01, false});
  rows.push_back({"cable", "L-correlation rho12", 0.53, sample_lcomoments(cable).rho12, 0.05,
                  false});

  rows.push_back({"components", "mean x1", 2.7975, f2.sample_lmoments1.l1, 0.0005, false});
  params("components", f2, pub2);
  rows.push_back({"components", "D1 (published)", 0.110,
                  ks_marginal(comp.x1, pub2.m1, cfg).d_stat, 0.005, false});
  rows.push_back({"components", "D21 pooled (published)", 0.133,
                  ks_conditional(comp, pub2, GofMethod::conditional_pooled, cfg).d_stat, 0.01,
                  false});
  const MrqFit mf = fit_mrq(comp, cfg);
  rows.push_back({"components", "mrq a1", 2.798, mf.params.a1, 0.02, true});
  rows.push_back({"components", "mrq b1", 0.159, mf.params.b1, 0.05, true});
  rows.push_back({"components", "mrq a2", 3.086, mf.params.a2, 0.02, true});
  rows.push_back({"components", "mrq c", 0.086, mf.params.c, 0.05, true});
  const MrqParams mrq_pub{2.798, 0.159, 3.086, 4.628, 0.086, -7.16};
  rows.push_back({"components", "mrq D1 (published)", 0.126,
                  ks_mrq_marginal(comp.x1, mrq_pub, cfg).d_stat, 0.005, false});
  rows.push_back({"components", "mrq D21 pooled (published)", 0.322,
                  ks_mrq_conditional(comp, mrq_pub, GofMethod::conditional_pooled, cfg).d_stat,
                  0.02, false});
  return rows;
}

int cmd_reproduce(const CommonFlags& common, const std::vector<std::string>& argv,
                  std::ostream& out) {
  const NumericConfig cfg = common.config();
  const auto rows = reproduce_rows(cfg);
  Json report = make_report("reproduce", argv, nullptr, cfg);
  Json arr = Json::array();
  char line[200];
  std::snprintf(line, sizeof line, "%-11s %-36s %12s %12s %10s  %s\n", "dataset", "quantity",
                "published", "computed", "tolerance", "verdict");
  out << line;
  for (const auto& r : rows) {
    const std::string tol = r.relative ? fixed(100.0 * r.tol, 1) + "%" : fixed(r.tol, 4);
    std::snprintf(line, sizeof line, "%-11s %-36s %12.6g %12.6g %10s  %s\n", r.dataset.c_str(),
                  r.quantity.c_str(), r.published, r.computed, tol.c_str(),
                  r.pass() ? "agree" : "differ");
    out << line;
    arr.push_back(Json{{"dataset", r.dataset},
                       {"quantity", r.quantity},
                       {"published", r.published},
                       {"computed", r.computed},
                       {"tolerance", r.tol},
                       {"relative", r.relative},
                       {"agree", r.pass()}});
  }
  report["rows"] = arr;
  if (!common.out_stem.empty()) emit(report, common, out);
  return exit_ok;
}

int cmd_fit(const std::string& data, const CommonFlags& common,
            const std::vector<std::string>& argv, std::ostream& out) {
  const PairedSample s = ingest(data);
  const NumericConfig cfg = common.config();
  const FitResult f = fit_bivariate(s, cfg);
  Json report = make_report("fit", argv, &s, cfg);
  report["fit"] = to_json(f);
  for (const auto& w : f.warnings) report["warnings"].push_back(w);
  emit(report, common, out);
  return exit_ok;
}

int cmd_gof(const std::string& data, const ModelFlags& model, const CommonFlags& common,
            const std::vector<std::string>& argv, std::ostream& out) {
  const PairedSample s = ingest(data);
  const NumericConfig cfg = common.config();
  Json report = make_report("gof", argv, &s, cfg);
  BivariateParams bp;
  if (const auto given_bp = model_from_flags(model)) {
    bp = *given_bp;
    report["params_source"] = "flags";
  } else {
    const FitResult f = fit_bivariate(s, cfg);
    bp = f.params;
    report["params_source"] = "fitted";
    for (const auto& w : f.warnings) report["warnings"].push_back(w);
  }
  report["params"] = to_json(bp);
  const GofResult g1 = ks_marginal(s.x1, bp.m1, cfg);
  const GofResult pooled = ks_conditional(s, bp, GofMethod::conditional_pooled, cfg);
  const GofResult per_point = ks_conditional(s, bp, GofMethod::conditional_per_point, cfg);
  report["marginal"] = to_json(g1);
  report["conditional_pooled"] = to_json(pooled);
  report["conditional_per_point"] = to_json(per_point, false);
  if (g1.clamped + pooled.clamped > 0) {
    report["warnings"].push_back("some observations lie outside the model support and were clamped");
  }
  if (!common.out_stem.empty()) {
    const QQData qq1 = qq_data(s.x1, [&](double u) { return quantile(bp.m1, u, cfg); });
    // Conditional Q-Q: each x2 rescaled by its own 1 + theta u1 against Q2.
    std::vector<double> y(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) {
      y[i] = s.x2[i] / (1.0 + bp.theta * cdf(bp.m1, s.x1[i], cfg).u);
    }
    const QQData qq2 = qq_data(y, [&](double u) { return quantile(bp.m2, u, cfg); });
    std::ostringstream a, b;
    write_qq_tsv(a, qq1);
    write_qq_tsv(b, qq2);
    write_file(common.out_stem + ".qq.tsv", a.str());
    write_file(common.out_stem + ".qq21.tsv", b.str());
    report["qq_files"] = Json::array({common.out_stem + ".qq.tsv", common.out_stem + ".qq21.tsv"});
  }
  emit(report, common, out);
  return exit_ok;
}

int cmd_lmoments(const std::string& data, const ModelFlags& model, const CommonFlags& common,
                 const std::vector<std::string>& argv, std::ostream& out) {
  const NumericConfig cfg = common.config();
  const auto bp = model_from_flags(model);
  if (data.empty() == !bp.has_value()) throw UsageError("give exactly one of --data or a model");
  if (bp) {
    Json report = make_report("lmoments", argv, nullptr, cfg);
    report["params"] = to_json(*bp);
    report["x1"] = Json{{"closed_form", to_json(population_lmoments(bp->m1))},
                        {"quadrature", to_json(population_lmoments_quadrature(bp->m1, cfg))}};
    report["x2"] = Json{{"closed_form", to_json(population_lmoments(bp->m2))},
                        {"quadrature", to_json(population_lmoments_quadrature(bp->m2, cfg))}};
    emit(report, common, out);
    return exit_ok;
  }
  const PairedSample s = ingest(data);
  Json report = make_report("lmoments", argv, &s, cfg);
  const int r = s.n() >= 4 ? 4 : static_cast<int>(s.n());
  report["x1"] = to_json(sample_lmoments(s.x1, r));
  report["x2"] = to_json(sample_lmoments(s.x2, r));
  emit(report, common, out);
  return exit_ok;
}

int cmd_comoments(const std::string& data, const ModelFlags& model, const CommonFlags& common,
                  const std::vector<std::string>& argv, std::ostream& out) {
  const NumericConfig cfg = common.config();
  const auto bp = model_from_flags(model);
  if (data.empty() == !bp.has_value()) throw UsageError("give exactly one of --data or a model");
  if (bp) {
    Json report = make_report("comoments", argv, nullptr, cfg);
    report["params"] = to_json(*bp);
    report["population"] = to_json(population_lcomoments(*bp, cfg));
    if (bp->m1.beta == 0.0 && bp->m2.beta == 0.0 && bp->m1.location == 0.0 &&
        bp->m2.location == 0.0) {
      report["power_case_closed_form"] = to_json(power_case_lcov_closed_form(*bp, cfg));
    }
    emit(report, common, out);
    return exit_ok;
  }
  const PairedSample s = ingest(data);
  Json report = make_report("comoments", argv, &s, cfg);
  report["sample"] = to_json(sample_lcomoments(s));
  emit(report, common, out);
  return exit_ok;
}

int cmd_sample(const ModelFlags& model, std::size_t n, std::uint64_t seed,
               const std::string& method, const CommonFlags& common, std::ostream& out) {
  const NumericConfig cfg = common.config();
  const auto bp = model_from_flags(model);
  if (!bp) throw UsageError("sample needs model parameters or --catalog");
  if (n < 1) throw UsageError("--n must be at least 1");
  SamplerSpec spec;
  spec.n = n;
  spec.seed = seed;
  try {
    spec.method = sampler_from_name(method);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const PairedSample s = draw(*bp, spec, cfg);
  if (common.out_stem.empty()) {
    write_csv(out, s);
  } else {
    std::ostringstream text;
    write_csv(text, s);
    write_file(common.out_stem + ".csv", text.str());
    out << "wrote " << common.out_stem << ".csv\n";
  }
  return exit_ok;
}

int cmd_compare(const std::string& data, const CommonFlags& common,
                const std::vector<std::string>& argv, std::ostream& out) {
  const PairedSample s = ingest(data);
  const NumericConfig cfg = common.config();
  Json report = make_report("compare", argv, &s, cfg);
  const FitResult f = fit_bivariate(s, cfg);
  const MrqFit m = fit_mrq(s, cfg);
  const GofResult p1 = ks_marginal(s.x1, f.params.m1, cfg);
  const GofResult p21 = ks_conditional(s, f.params, GofMethod::conditional_pooled, cfg);
  const GofResult m1 = ks_mrq_marginal(s.x1, m.params, cfg);
  const GofResult m21 = ks_mrq_conditional(s, m.params, GofMethod::conditional_pooled, cfg);
  report["proposed"] = Json{{"fit", to_json(f)},
                            {"marginal", to_json(p1, false)},
                            {"conditional_pooled", to_json(p21, false)}};
  report["mrq"] = Json{{"fit", to_json(m)},
                       {"marginal", to_json(m1, false)},
                       {"conditional_pooled", to_json(m21, false)}};
  const bool smaller = p1.d_stat < m1.d_stat;
  report["verdict"] = smaller ? "proposed model has the smaller marginal K-S statistic"
                              : "mrq model has the smaller or equal marginal K-S statistic";
  for (const auto& w : f.warnings) report["warnings"].push_back(w);
  for (const auto& w : m.warnings) report["warnings"].push_back("mrq: " + w);
  emit(report, common, out);
  return exit_ok;
}

int cmd_catalog(const ModelFlags& model, const CommonFlags& common,
                const std::vector<std::string>& argv, std::ostream& out) {
  const NumericConfig cfg = common.config();
  Json report = make_report("catalog", argv, nullptr, cfg);
  if (model.catalog.empty()) {
    Json arr = Json::array();
    for (const auto& name : catalog_names()) {
      arr.push_back(Json{{"name", name}, {"parameters", natural_param_names(case_from_name(name))}});
    }
    report["cases"] = arr;
  } else {
    std::map<std::string, double> flat;
    for (const auto& [k, v] : model.values) {
      if (given(model, k)) flat[k] = v;
    }
    try {
      report["entry"] = to_json(make_case(model.catalog, flat));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  emit(report, common, out);
  return exit_ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantile-based bivariate distributions: fitting, L-moments, K-S tests, sampling",
               "qbivar"};
  app.require_subcommand(1);

  CommonFlags common;
  ModelFlags model;
  std::string data;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  std::string method = "exact";

  CLI::App* fit = app.add_subcommand("fit", "Method-of-L-moments fit of marginals and theta");
  CLI::App* gof = app.add_subcommand("gof", "Marginal and conditional K-S tests, Q-Q data");
  CLI::App* lmom = app.add_subcommand("lmoments", "Sample or population L-moments");
  CLI::App* comom = app.add_subcommand("comoments", "Sample or population L-comoments");
  CLI::App* smp = app.add_subcommand("sample", "Draw a seeded random sample as CSV");
  CLI::App* cmp = app.add_subcommand("compare", "Proposed model against the linear MRQ model");
  CLI::App* cat = app.add_subcommand("catalog", "List special cases or map natural parameters");
  CLI::App* rep = app.add_subcommand("reproduce", "Re-run both embedded case studies");

  for (CLI::App* sub : {fit, gof, lmom, comom, smp, cmp, cat, rep}) add_common(sub, common);
  fit->add_option("--data", data, "CSV path or builtin (cable, components)")->required();
  gof->add_option("--data", data, "CSV path or builtin (cable, components)")->required();
  cmp->add_option("--data", data, "CSV path or builtin (cable, components)")->required();
  lmom->add_option("--data", data, "CSV path or builtin (cable, components)");
  comom->add_option("--data", data, "CSV path or builtin (cable, components)");
  // One ModelFlags per parse: only the selected subcommand's options are set.
  ModelFlags gof_model, lmom_model, comom_model, smp_model, cat_model;
  add_model(gof, gof_model);
  add_model(lmom, lmom_model);
  add_model(comom, comom_model);
  add_model(smp, smp_model);
  add_model(cat, cat_model);
  smp->add_option("--n", n, "Number of draws");
  smp->add_option("--seed", seed, "64-bit seed");
  smp->add_option("--method", method, "transform or exact")
      ->check(CLI::IsMember({"transform", "exact"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  const std::vector<std::string> args = args_of(argc, argv);
  try {
    if (*fit) return cmd_fit(data, common, args, out);
    if (*gof) return cmd_gof(data, gof_model, common, args, out);
    if (*lmom) return cmd_lmoments(data, lmom_model, common, args, out);
    if (*comom) return cmd_comoments(data, comom_model, common, args, out);
    if (*smp) return cmd_sample(smp_model, n, seed, method, common, out);
    if (*cmp) return cmd_compare(data, common, args, out);
    if (*cat) return cmd_catalog(cat_model, common, args, out);
    if (*rep) return cmd_reproduce(common, args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return exit_data;
  } catch (const ConvergenceError& e) {
    err << "numeric error: " << e.what() << "\n";
    return exit_numeric;
  } catch (const DomainError& e) {
    err << "numeric error: " << e.what() << "\n";
    return exit_numeric;
  }
  err << app.help();
  return exit_usage;
}

}  // namespace qbd
