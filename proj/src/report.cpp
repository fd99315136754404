#include "kklab/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "kklab/ints.hpp"

namespace kklab::report {

long VerificationReport::failures() const {
  long n = 0;
  for (const auto& c : checks)
    if (!c.advisory && !c.pass) ++n;
  return n;
}

void VerificationReport::sort_by_id() {
  std::sort(checks.begin(), checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "kklab-report/1";
  j["suite"] = suite;
  j["options"] = {{"degree", opts.degree},
                  {"window", opts.window},
                  {"seed", opts.seed},
                  {"subdivisions", opts.subdivisions}};
  long fail = failures();
  long advisory = 0;
  for (const auto& c : checks)
    if (c.advisory) ++advisory;
  j["summary"] = {{"checks", static_cast<long>(checks.size()) - advisory},
                  {"advisory", advisory},
                  {"failures", fail},
                  {"all_pass", fail == 0}};
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["id"] = c.id;
    e["section"] = c.section;
    e["anchor"] = c.anchor;
    e["status"] = c.pass ? "pass" : "fail";
    e["advisory"] = c.advisory;
    e["witness"] = c.witness;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j;
}

std::string VerificationReport::text() const {
  std::ostringstream out;
  out << "suite " << suite << " (degree " << opts.degree << ", window " << opts.window
      << ", seed " << opts.seed << ", subdivisions " << opts.subdivisions << ")\n";
  for (const auto& c : checks) {
    out << (c.pass ? "  [pass" : "  [FAIL") << (c.advisory ? "*] " : "]  ") << c.id << "  "
        << c.anchor << "\n";
    if (!c.pass && !c.witness.empty()) out << "          " << c.witness << "\n";
  }
  long fail = failures();
  out << (fail == 0 ? "all checks pass" : std::to_string(fail) + " check(s) failed") << " ("
      << checks.size() << " records)\n";
  return out.str();
}

VerificationReport merge(const std::vector<VerificationReport>& parts,
                         const RunOptions& opts) {
  VerificationReport all;
  all.suite = "all";
  all.opts = opts;
  for (const auto& p : parts)
    for (const auto& c : p.checks) all.checks.push_back(c);
  all.sort_by_id();
  return all;
}

sset::FiniteSimplicialSet load_simplicial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("E_IO", "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error("E_PARSE", "invalid JSON in " + path + ": " + ex.what());
  }
  return sset::FiniteSimplicialSet::from_json(j);  // validates; throws E_* with ids
}

}  // namespace kklab::report
