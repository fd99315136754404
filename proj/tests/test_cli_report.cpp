#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "kklab/report.hpp"
#include "kklab/suites.hpp"

using namespace kklab;
using report::CheckRecord;
using report::RunOptions;
using report::VerificationReport;

namespace {

std::string data_path(const std::string& name) {
  return std::string(KKLAB_DATA_DIR) + "/" + name;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = "/tmp/kklab_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(KKLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_SUITE("cli_report") {

TEST_CASE("report bookkeeping and serialization") {
  VerificationReport rep;
  rep.suite = "demo";
  rep.add({"b.02", "sec", "second", true, false, ""});
  rep.add({"a.01", "sec", "first", false, false, "residual r"});
  rep.add({"c.03", "sec", "third", true, true, "diagnostic"});
  CHECK(rep.failures() == 1);  // the advisory failure does not count
  CHECK_FALSE(rep.all_pass());

  rep.sort_by_id();
  CHECK(rep.checks[0].id == "a.01");
  CHECK(rep.checks[2].id == "c.03");

  auto j = rep.to_json();
  CHECK(j["schema"] == "kklab-report/1");
  CHECK(j["suite"] == "demo");
  CHECK(j["options"]["degree"] == 6);
  CHECK(j["options"]["window"] == 64);
  CHECK(j["options"]["seed"] == 1);
  CHECK(j["options"]["subdivisions"] == 3);
  CHECK(j["summary"]["checks"] == 2);
  CHECK(j["summary"]["advisory"] == 1);
  CHECK(j["summary"]["failures"] == 1);
  CHECK(j["summary"]["all_pass"] == false);
  REQUIRE(j["checks"].size() == 3);
  CHECK(j["checks"][0]["id"] == "a.01");
  CHECK(j["checks"][0]["status"] == "fail");
  CHECK(j["checks"][0]["witness"] == "residual r");
  CHECK(j["checks"][1]["status"] == "pass");
  CHECK(j["checks"][2]["status"] == "pass");
  CHECK(j["checks"][2]["advisory"] == true);
  // no timestamps or wall-clock data anywhere
  CHECK_FALSE(j.contains("time"));
  CHECK_FALSE(j.contains("wall_time"));

  auto text = rep.text();
  CHECK(text.find("[FAIL]  a.01") != std::string::npos);
  CHECK(text.find("[pass]  b.02") != std::string::npos);
  CHECK(text.find("[pass*] c.03") != std::string::npos);
  CHECK(text.find("1 check(s) failed") != std::string::npos);

  VerificationReport clean;
  clean.suite = "demo";
  clean.add({"a.01", "sec", "first", true, false, ""});
  CHECK(clean.text().find("all checks pass (1 records)") != std::string::npos);
}

TEST_CASE("merge concatenates parts under one summary") {
  VerificationReport a, b;
  a.suite = "one";
  a.add({"one.01", "s", "x", true, false, ""});
  b.suite = "two";
  b.add({"two.01", "s", "y", false, false, "w"});
  auto m = report::merge({a, b}, RunOptions{});
  CHECK(m.suite == "all");
  CHECK(m.checks.size() == 2);
  CHECK(m.failures() == 1);
}

TEST_CASE("simplicial files load and match the canonical complexes") {
  auto d1 = report::load_simplicial(data_path("delta1.json"));
  CHECK(sset::isomorphic(d1, sset::standard_simplex(1)));
  auto d2 = report::load_simplicial(data_path("delta2.json"));
  CHECK(sset::isomorphic(d2, sset::standard_simplex(2)));
  auto bd = report::load_simplicial(data_path("boundary2.json"));
  CHECK(sset::isomorphic(bd, sset::boundary_simplex(2)));

  auto s1 = report::load_simplicial(data_path("s1.json"));
  CHECK(s1.simplices(0).size() == 1);
  CHECK(s1.simplices(1).size() == 1);
  REQUIRE(s1.basepoint().has_value());
  CHECK(sset::isomorphic(s1, sset::circle()));
}

TEST_CASE("loader distinguishes io, parse, and structure errors") {
  try {
    report::load_simplicial("/nonexistent/nope.json");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_IO");
  }

  auto corrupt = temp_file("corrupt.json", "{ not json");
  try {
    report::load_simplicial(corrupt);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_PARSE");
    CHECK(std::string(e.what()).find(corrupt) != std::string::npos);
  }

  auto dangling = temp_file(
      "dangling.json",
      R"({"dims":[0,1],"simplices":{"0":["a"],"1":[{"faces":[[[],"ghost"],[[],"a"]],"id":"e"}]}})");
  try {
    report::load_simplicial(dangling);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_NO_SIMPLEX");
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }
  std::remove(corrupt.c_str());
  std::remove(dangling.c_str());
}

TEST_CASE("suite runners produce the expected failure profile") {
  RunOptions opts;  // defaults: degree 6, window 64, seed 1, subdivisions 3
  CHECK(suites::run_simplicial(opts).failures() == 0);
  CHECK(suites::run_power(opts).failures() == 0);
  CHECK(suites::run_gamma(opts).failures() == 0);

  auto toe = suites::run_toeplitz(opts);
  CHECK(toe.failures() == 6);  // tabulated-inverse and unital identities

  auto hom = suites::run_homotopy(opts);
  CHECK(hom.failures() == 1);  // printed diagonal pasting at n = 2
  for (auto& c : hom.checks)
    if (!c.pass && !c.advisory) CHECK(c.id == "homotopy.07.eta-printed-n2");

  auto all = suites::run_suite("all", opts);
  CHECK(all.checks.size() == 97);
  CHECK(all.failures() == 7);

  bool found = false;
  for (auto& c : all.checks)
    if (c.id == "gamma.03.sum-ring") {
      found = true;
      CHECK(c.pass);
      CHECK(c.anchor.find("alpha_1 beta_1") != std::string::npos);
    }
  CHECK(found);

  // ids are sorted and unique
  for (size_t i = 1; i < all.checks.size(); ++i) CHECK(all.checks[i - 1].id < all.checks[i].id);

  try {
    suites::run_suite("nope", opts);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_SUITE");
  }
}

TEST_CASE("suite output is deterministic") {
  RunOptions opts;
  auto first = suites::run_suite("gamma", opts).to_json().dump(2);
  auto second = suites::run_suite("gamma", opts).to_json().dump(2);
  CHECK(first == second);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("verify --suite gamma") == 0);
  CHECK(run_cli("verify --suite toeplitz") == 1);  // honest failures propagate
  CHECK(run_cli("verify --suite nope") == 2);
  CHECK(run_cli("power --input " + data_path("delta2.json") + " --degree 3 --basis /tmp/kklab_b.json") == 0);
  CHECK(run_cli("power --input " + data_path("delta2.json") + " --degree 11 --basis /tmp/kklab_b.json") == 2);
  CHECK(run_cli("power --input /nonexistent.json --basis /tmp/kklab_b.json") == 2);
  std::remove("/tmp/kklab_b.json");
}

TEST_CASE("cli verify writes a schema-conformant json report") {
  std::string out = "/tmp/kklab_test_report.json";
  REQUIRE(run_cli("verify --suite gamma --json " + out) == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  auto j = nlohmann::json::parse(in);
  CHECK(j["schema"] == "kklab-report/1");
  CHECK(j["suite"] == "gamma");
  CHECK(j["summary"]["all_pass"] == true);
  CHECK(j["summary"]["failures"] == 0);
  CHECK(j["checks"].size() >= 11);
  std::remove(out.c_str());
}

TEST_CASE("cli subdivide then power chains through files") {
  std::string sd = "/tmp/kklab_test_sd.json";
  std::string basis = "/tmp/kklab_test_basis.json";
  REQUIRE(run_cli("subdivide --input " + data_path("delta1.json") + " --times 2 --out " + sd) == 0);
  auto K = report::load_simplicial(sd);
  CHECK(K.size() == 9);

  REQUIRE(run_cli("power --input " + sd + " --degree 2 --basis " + basis) == 0);
  std::ifstream in(basis);
  REQUIRE(in.good());
  auto j = nlohmann::json::parse(in);
  long total = 0;
  for (auto& g : j) total += static_cast<long>(g["basis"].size());
  CHECK(total == 9);
  std::remove(sd.c_str());
  std::remove(basis.c_str());
}

}  // TEST_SUITE
