#include "hankel/report.hpp"
#include "hankel/suites.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace hankel;
using nlohmann::json;

namespace {
VerificationReport sample(const std::string &c, double err) {
  VerificationReport r;
  r.case_id = c;
  r.check_id = "x";
  r.params = {{"k", 0.1}, {"n", 3}};
  r.max_abs_err = err;
  r.max_rel_err = err;
  r.tolerance = 1e-3;
  r.judge_relative();
  return r;
}
} // namespace

TEST_CASE("report judging") {
  CHECK(sample("a", 1e-4).pass);
  CHECK_FALSE(sample("a", 1e-2).pass);
  VerificationReport r = sample("a", NAN);
  CHECK_FALSE(r.pass);
  r.max_abs_err = 1e-4;
  r.judge_absolute();
  CHECK(r.pass);
}

TEST_CASE("JSON report layout") {
  std::ostringstream os;
  write_json(os, {sample("mehler", 1e-5)});
  const json j = json::parse(os.str());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["pass"] == true);
  std::vector<std::string> keys;
  for (auto it = j[0].begin(); it != j[0].end(); ++it)
    keys.push_back(it.key());
  // nlohmann sorts keys, so check the raw text for order instead
  const std::string s = os.str();
  std::size_t pos = 0;
  for (const char *k : {"case_id", "check_id", "params", "max_abs_err", "max_rel_err", "tolerance",
                        "pass", "runtime_ms"}) {
    const auto p = s.find(std::string("\"") + k + "\"", pos);
    REQUIRE(p != std::string::npos);
    pos = p;
  }
  CHECK(keys.size() == 8);
}

TEST_CASE("CSV round trip keeps 17 digits") {
  const double v = 0.1234567890123456789;
  std::ostringstream os;
  write_csv(os, {sample("c", v)});
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(header == "case_id,check_id,params,max_abs_err,max_rel_err,tolerance,pass,runtime_ms");
  std::vector<std::string> cols;
  std::stringstream rs(row);
  for (std::string c; std::getline(rs, c, ',');)
    cols.push_back(c);
  REQUIRE(cols.size() == 8);
  CHECK(cols[2] == "k=0.10000000000000001;n=3");
  CHECK(std::stod(cols[3]) == v);
}

TEST_CASE("reports sort canonically") {
  std::vector<VerificationReport> r = {sample("b", 0), sample("a", 0)};
  r[1].check_id = "z";
  sort_reports(r);
  CHECK(r[0].case_id == "a");
}

TEST_CASE("plot data columns") {
  std::ostringstream os;
  write_plot_data(os, {{"mehler", 0.5, 1.0, 0.2, 0.2}});
  CHECK(os.str().rfind("case_id,k,x,A_psi,lambda_psi\n", 0) == 0);
}

TEST_CASE("config merging") {
  Config c;
  merge_config_json(c, R"({"tolerances": {"parseval": 2e-3}, "k_grid": [0.5], "ranks": [2],
                           "solver": {"n_points": 2000}, "output": {"format": "csv"}})");
  CHECK(c.tol.parseval == 2e-3);
  CHECK(c.k_grid == std::vector<double>{0.5});
  CHECK(c.ranks == std::vector<int>{2});
  CHECK(c.solver.n_points == 2000);
  CHECK(c.format == "csv");
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(merge_config_json(c, R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(merge_config_json(c, R"({"tolerances": {"bogus": 1}})"), ConfigError);
  CHECK_THROWS_AS(merge_config_json(c, "{not json"), ConfigError);
  Config neg;
  neg.tol.compact = -1.0;
  CHECK_THROWS_AS(neg.validate(), ConfigError);
}

TEST_CASE("config file from the environment") {
  const auto path = std::filesystem::temp_directory_path() / "hankel_env_config.json";
  std::ofstream(path) << R"({"ranks": [3]})";
  setenv("HANKEL_CONFIG", path.c_str(), 1);
  const Config c = load_config();
  unsetenv("HANKEL_CONFIG");
  std::filesystem::remove(path);
  CHECK(c.ranks == std::vector<int>{3});
}

TEST_CASE("suite names") {
  CHECK(parse_suite("finite-rank") == Suite::finite_rank);
  CHECK(suite_name(Suite::finite_rank) == "finite-rank");
  CHECK_THROWS_AS(parse_suite("nope"), ConfigError);
}

TEST_CASE("finite rank suite covers three ranks and passes") {
  const auto r = run_suite(Suite::finite_rank, Config{});
  std::set<std::string> cases;
  for (const auto &x : r) {
    cases.insert(x.case_id);
    CHECK_MESSAGE(x.pass, x.case_id << " " << x.check_id);
    CHECK(x.runtime_ms == 0);
  }
  CHECK(cases == std::set<std::string>{"finite_rank(1)", "finite_rank(2)", "finite_rank(3)"});
}

TEST_CASE("empty selection and determinism") {
  Config c;
  c.case_filter = "no_such_case";
  CHECK(run_suite(Suite::all, c).empty());

  Config e;
  e.case_filter = "mehler";
  std::ostringstream a, b;
  write_json(a, run_suite(Suite::eigen, e));
  write_json(b, run_suite(Suite::eigen, e));
  CHECK(a.str() == b.str());
}

TEST_CASE("numeric failures become failed reports") {
  Config c;
  c.discrete_betas = {-2.0};
  c.case_filter = "whittaker(-2)";
  const auto r = run_suite(Suite::discrete, c);
  REQUIRE_FALSE(r.empty());
  CHECK_FALSE(r[0].pass);
  CHECK_FALSE(r[0].diagnostic.empty());
}
