#include "qbivar/data.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qbivar/errors.hpp"

namespace qbd {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(t, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == t.size();
}

}  // namespace

void PairedSample::validate() const {
  if (x1.size() != x2.size()) throw DataError("sample: columns differ in length");
  if (x1.empty()) throw DataError("sample: no observations");
  for (std::size_t i = 0; i < x1.size(); ++i) {
    if (!std::isfinite(x1[i]) || !std::isfinite(x2[i])) {
      throw DataError("sample: non-finite value in row " + std::to_string(i + 1));
    }
  }
}

bool is_builtin(const std::string& name) { return name == "cable" || name == "components"; }

PairedSample builtin_sample(const std::string& name) {
  PairedSample s;
  s.source = "builtin:" + name;
  if (name == "cable") {
    s.x1 = {5.1, 9.2, 9.3, 11.8, 17.7, 19.4, 22.1, 26.7, 37.3};
    s.x2 = {11, 15.1, 18.3, 24, 29.1, 38.6, 44.2, 45.1, 50.9};
  } else if (name == "components") {
    s.x1 = {0.37, 0.06, 0.2,  1.62, 5.7,  2.25, 2.5,  2.44, 0.12, 0.79,
            7.22, 2.81, 4.13, 5.67, 0.96, 7.16, 0.32, 7.32, 2.58, 1.73};
    s.x2 = {6.93, 2.42, 0.2,  2.34, 1.96, 4.6,  0.09, 7.27, 0.06, 8.61,
            1.38, 5.05, 0.52, 1.11, 3.54, 2.38, 1.89, 1.54, 8.61, 1.22};
  } else {
    throw DataError("unknown builtin data set '" + name + "'");
  }
  return s;
}

PairedSample read_csv(std::istream& in, const std::string& source) {
  PairedSample s;
  s.source = source;
  std::string line;
  int line_no = 0;
  bool seen_first = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    double a = 0.0;
    double b = 0.0;
    const bool numeric = cells.size() == 2 && parse_number(cells[0], a) && parse_number(cells[1], b);
    if (!seen_first) {
      seen_first = true;
      if (!numeric) {
        if (cells.size() != 2) {
          throw DataError(source + ":" + std::to_string(line_no) + ": expected two columns");
        }
        continue;  // header
      }
    }
    if (cells.size() != 2) {
      throw DataError(source + ":" + std::to_string(line_no) + ": expected two columns, found " +
                      std::to_string(cells.size()));
    }
    if (!numeric) {
      throw DataError(source + ":" + std::to_string(line_no) + ": non-numeric cell");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw DataError(source + ":" + std::to_string(line_no) + ": non-finite value");
    }
    s.x1.push_back(a);
    s.x2.push_back(b);
  }
  if (s.x1.empty()) throw DataError(source + ": no data rows");
  return s;
}

PairedSample ingest(const std::string& path_or_builtin) {
  if (is_builtin(path_or_builtin)) return builtin_sample(path_or_builtin);
  std::ifstream in(path_or_builtin);
  if (!in) throw DataError("cannot open '" + path_or_builtin + "'");
  return read_csv(in, path_or_builtin);
}

void write_csv(std::ostream& out, const PairedSample& s) {
  out << "x1,x2\n";
  for (std::size_t i = 0; i < s.n(); ++i) out << fmt17(s.x1[i]) << ',' << fmt17(s.x2[i]) << '\n';
}

std::uint64_t sample_digest(const PairedSample& s) {
  std::uint64_t h = 14695981039346656037ULL;
  const auto feed = [&h](const std::string& t) {
    for (unsigned char ch : t) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  };
  for (std::size_t i = 0; i < s.n(); ++i) {
    feed(fmt17(s.x1[i]));
    feed(",");
    feed(fmt17(s.x2[i]));
    feed("\n");
  }
  return h;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw DataError("mean: empty input");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace qbd
