#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qbd {

/// Paired observations (x1_i, x2_i) in input order.
struct PairedSample {
  std::vector<double> x1;
  std::vector<double> x2;
  std::string source;

  [[nodiscard]] std::size_t n() const { return x1.size(); }
  /// Throws DataError unless both columns have the same non-zero length and
  /// every value is finite.
  void validate() const;
};

/// The two embedded data sets: `cable` (n = 9) and `components` (n = 20).
PairedSample builtin_sample(const std::string& name);
bool is_builtin(const std::string& name);

/// Two comma-separated numeric columns with an optional single header line.
/// Errors carry the offending line number.
PairedSample read_csv(std::istream& in, const std::string& source);

/// A builtin name or a path to a CSV file.
PairedSample ingest(const std::string& path_or_builtin);

/// Header `x1,x2` followed by rows at 17 significant digits.
void write_csv(std::ostream& out, const PairedSample& s);

/// FNV-1a over the 17-digit text of every value, in row order.
std::uint64_t sample_digest(const PairedSample& s);

double mean(const std::vector<double>& v);

}  // namespace qbd
