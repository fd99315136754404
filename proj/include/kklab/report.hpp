#pragma once
// verification reports: flat lists of identity checks with stable ids and a
// deterministic serialization (sorted by id, no timestamps), so two runs with
// the same seed and flags produce byte-identical files.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kklab/simplicial.hpp"

namespace kklab::report {

struct CheckRecord {
  std::string id;       // stable, globally unique, e.g. "gamma.03.sum-ring"
  std::string section;  // topic heading the check belongs to
  std::string anchor;   // the identity being verified, or "plumbing"
  bool pass = false;
  bool advisory = false;  // diagnostic record, not counted in all_pass
  std::string witness;    // residual / failure detail, empty when passing
};

struct RunOptions {
  int degree = 6;
  long window = 64;
  std::uint64_t seed = 1;
  int subdivisions = 3;
};

struct VerificationReport {
  std::string suite;
  RunOptions opts;
  std::vector<CheckRecord> checks;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  long failures() const;  // failing non-advisory checks
  bool all_pass() const { return failures() == 0; }
  void sort_by_id();  // ids are unique; sorting makes assembly order canonical

  nlohmann::json to_json() const;
  std::string text() const;  // one console line per check plus a summary
};

// concatenates the parts (already sorted per suite) under the name "all"
VerificationReport merge(const std::vector<VerificationReport>& parts,
                         const RunOptions& opts);

// reads a complex from a JSON file ({"dims", "simplices", "basepoint"?}),
// validating the simplicial identities; throws Error with code E_IO on an
// unreadable file, E_PARSE on malformed JSON, and the structural E_* codes
// (naming the offending simplex id) on schema violations
sset::FiniteSimplicialSet load_simplicial(const std::string& path);

}  // namespace kklab::report
