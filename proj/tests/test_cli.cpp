#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qbivar/cli.hpp"
#include "qbivar/data.hpp"

using namespace qbd;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome call(std::initializer_list<std::string> args) {
  std::vector<std::string> store{"qbivar"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : store) argv.push_back(s.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("fit on the first built-in data set") {
  const Outcome o = call({"fit", "--data", "cable"});
  REQUIRE(o.code == exit_ok);
  const json j = json::parse(o.out);
  CHECK(j["command"] == "fit");
  CHECK(j["input"]["n"] == 9);
  CHECK(std::abs(j["fit"]["params"]["theta"].get<double>() - 0.6821) < 1e-3);
  CHECK(j["numeric_config"]["quad_rel_tol"].get<double>() == 1e-8);
  CHECK(j["numeric_config"]["root_tol"].get<double>() == 1e-12);
}

TEST_CASE("tolerance flags are recorded in the report") {
  const Outcome o = call({"fit", "--data", "cable", "--quad-tol", "1e-9", "--root-tol", "1e-11"});
  REQUIRE(o.code == exit_ok);
  const json j = json::parse(o.out);
  CHECK(j["numeric_config"]["quad_rel_tol"].get<double>() == 1e-9);
  CHECK(j["numeric_config"]["root_tol"].get<double>() == 1e-11);
}

TEST_CASE("report numbers survive a text round trip") {
  const Outcome o = call({"fit", "--data", "components"});
  REQUIRE(o.code == exit_ok);
  const json a = json::parse(o.out);
  CHECK(json::parse(a.dump()) == a);
  const double c = a["fit"]["params"]["m1"]["c"].get<double>();
  std::ostringstream text;
  text.precision(17);
  text << c;
  CHECK(std::stod(text.str()) == c);
}

TEST_CASE("compare reaches the published verdict") {
  const Outcome o = call({"compare", "--data", "components"});
  REQUIRE(o.code == exit_ok);
  const json j = json::parse(o.out);
  const double dp = j["proposed"]["marginal"]["d_stat"].get<double>();
  const double dm = j["mrq"]["marginal"]["d_stat"].get<double>();
  CHECK(dp < dm);
  CHECK(std::abs(dp - 0.110) <= 0.005);
  CHECK(j["verdict"].get<std::string>().find("proposed") != std::string::npos);
}

TEST_CASE("gof writes the report and Q-Q files") {
  const std::string stem = "qbivar_cli_gof";
  const Outcome o = call({"gof", "--data", "cable", "--out", stem});
  REQUIRE(o.code == exit_ok);
  for (const char* suffix : {".report.json", ".qq.tsv", ".qq21.tsv"}) {
    INFO(suffix);
    CHECK(std::filesystem::exists(stem + suffix));
  }
  const json j = json::parse(slurp(stem + ".report.json"));
  CHECK(j.contains("marginal"));
  CHECK(j.contains("conditional_pooled"));
  CHECK(j.contains("conditional_per_point"));
  CHECK(j.contains("numeric_config"));
  CHECK(slurp(stem + ".qq.tsv").rfind("position\tempirical\tmodel\n", 0) == 0);
  for (const char* suffix : {".report.json", ".qq.tsv", ".qq21.tsv"}) {
    std::filesystem::remove(stem + suffix);
  }
}

TEST_CASE("sample is deterministic") {
  const Outcome a = call({"sample", "--catalog", "exponential", "--c1", "1", "--c2", "1",
                          "--theta", "0", "--n", "10", "--seed", "7"});
  const Outcome b = call({"sample", "--catalog", "exponential", "--c1", "1", "--c2", "1",
                          "--theta", "0", "--n", "10", "--seed", "7"});
  REQUIRE(a.code == exit_ok);
  CHECK(a.out == b.out);
  std::istringstream in(a.out);
  const PairedSample s = read_csv(in, "sample");
  CHECK(s.n() == 10);
  const Outcome c = call({"sample", "--catalog", "exponential", "--c1", "1", "--c2", "1",
                          "--theta", "0", "--n", "10", "--seed", "8"});
  CHECK(c.out != a.out);
}

TEST_CASE("sample output feeds fit: independent power marginals") {
  // Power marginals F(x) = (x/b)^a with a = 2, b = 1 map to c = 0.5, alpha = -0.5, beta = 0.
  const std::string stem = "qbivar_cli_round";
  const Outcome s = call({"sample", "--catalog", "power", "--a1", "2", "--b1", "1", "--a2", "2",
                          "--b2", "1", "--theta", "0", "--n", "10000", "--seed", "3", "--out",
                          stem});
  REQUIRE(s.code == exit_ok);
  const Outcome f = call({"fit", "--data", stem + ".csv"});
  REQUIRE(f.code == exit_ok);
  const json p = json::parse(f.out)["fit"]["params"];
  for (const char* m : {"m1", "m2"}) {
    INFO(m);
    CHECK(std::abs(p[m]["c"].get<double>() / 0.5 - 1.0) <= 0.1);
    CHECK(std::abs(p[m]["alpha"].get<double>() / -0.5 - 1.0) <= 0.1);
    CHECK(std::abs(p[m]["beta"].get<double>()) <= 0.1);
  }
  CHECK(p["theta"].get<double>() <= 0.1);
  std::filesystem::remove(stem + ".csv");
}

TEST_CASE("lmoments, comoments and catalog") {
  const Outcome l = call({"lmoments", "--catalog", "exponential", "--c1", "2", "--c2", "1"});
  REQUIRE(l.code == exit_ok);
  CHECK(l.out.find("\"t2\"") != std::string::npos);

  const Outcome c = call({"comoments", "--c1", "1", "--c2", "1", "--theta", "1"});
  REQUIRE(c.code == exit_ok);
  CHECK(c.out.find("0.11370") != std::string::npos);

  const Outcome d = call({"comoments", "--data", "cable"});
  REQUIRE(d.code == exit_ok);

  const Outcome k = call({"catalog"});
  REQUIRE(k.code == exit_ok);
  CHECK(k.out.find("loglogistic") != std::string::npos);
}

TEST_CASE("reproduce runs offline and is idempotent") {
  const Outcome a = call({"reproduce"});
  const Outcome b = call({"reproduce"});
  CHECK(a.code == exit_ok);
  CHECK(a.out == b.out);
  CHECK(a.out.find("0.682") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == exit_usage);
  CHECK(call({"nonsense"}).code == exit_usage);
  CHECK(call({"fit", "--data", "cable", "--bogus"}).code == exit_usage);
  CHECK(call({"fit"}).code == exit_usage);
  CHECK(call({"lmoments", "--data", "cable", "--c1", "2"}).code == exit_usage);
  CHECK(call({"sample", "--a1", "2"}).code == exit_usage);
  CHECK(call({"sample", "--catalog", "power", "--loc1", "2"}).code == exit_usage);
  CHECK(call({"fit", "--data", "no/such/file.csv"}).code == exit_data);

  const std::string bad = "qbivar_cli_bad.csv";
  {
    std::ofstream f(bad);
    f << "x1,x2\n1,2\n3,oops\n";
  }
  const Outcome d = call({"fit", "--data", bad});
  CHECK(d.code == exit_data);
  CHECK(d.err.find(":3") != std::string::npos);
  std::remove(bad.c_str());

  CHECK(call({"fit", "--data", "cable", "--quad-tol", "1e-300"}).code == exit_numeric);
  CHECK(call({"lmoments", "--alpha1", "-3"}).code == exit_numeric);
  CHECK(call({"--help"}).code == exit_ok);
}
