#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qbivar/data.hpp"
#include "qbivar/model.hpp"
#include "qbivar/mrq.hpp"

namespace qbd {

enum class GofMethod { marginal, conditional_pooled, conditional_per_point };

std::string method_name(GofMethod m);

/// One conditional statistic computed at a fixed x1 value.
struct PerPointStat {
  double x1 = 0.0;
  double u1 = 0.0;
  std::size_t n = 0;
  double d_stat = 0.0;
  double p_value = 0.0;
};

/// p-values come from the asymptotic Kolmogorov law and ignore that the
/// parameters were estimated.
struct GofResult {
  double d_stat = 0.0;
  double p_value = 1.0;
  std::vector<double> pit_values;
  std::size_t n = 0;
  GofMethod method = GofMethod::marginal;
  /// Filled in per-point mode, ordered by increasing x1. d_stat and p_value
  /// then refer to the first entry (the smallest x1).
  std::vector<PerPointStat> per_point;
  /// Number of observations clamped because they fell outside the support.
  std::size_t clamped = 0;
};

/// sup |F_n - U| of values against the uniform law:
/// max_i max(i/n - u_(i), u_(i) - (i-1)/n).
double ks_statistic(std::vector<double> u);

/// Asymptotic Kolmogorov tail P(K > sqrt(n) d).
double ks_p_value(double d, std::size_t n);

/// Two-sample statistic sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// PIT against any distribution function.
GofResult ks_against(const std::vector<double>& data, const std::function<double(double)>& cdf_fn);

GofResult ks_marginal(const std::vector<double>& data, const MarginalParams& p,
                      const NumericConfig& cfg = {});

/// Conditional test. PIT values are v_i = F2(x2_i / (1 + theta u1_i)) with
/// u1_i = F1(x1_i). In per-point mode the level u1 is frozen at each x1_i
/// and compared with the pairs whose x1 is at least x1_i.
GofResult ks_conditional(const PairedSample& s, const BivariateParams& bp, GofMethod mode,
                         const NumericConfig& cfg = {});

GofResult ks_mrq_marginal(const std::vector<double>& x1, const MrqParams& p,
                          const NumericConfig& cfg = {});
GofResult ks_mrq_conditional(const PairedSample& s, const MrqParams& p, GofMethod mode,
                             const NumericConfig& cfg = {});

struct QQRow {
  double position = 0.0;
  double empirical = 0.0;
  double model = 0.0;
};

struct QQData {
  std::vector<QQRow> rows;
};

/// Positions i/(n+1) against the sorted data and Q at those positions.
QQData qq_data(std::vector<double> data, const std::function<double(double)>& quantile_fn);

/// Tab-separated with a header line.
void write_qq_tsv(std::ostream& out, const QQData& qq);

}  // namespace qbd
