#pragma once
// check suites: each runner exercises one module's identities and returns a
// sorted VerificationReport; a failing check records its witness and the
// remaining checks still run.

#include <string>
#include <vector>

#include "kklab/report.hpp"

namespace kklab::suites {

report::VerificationReport run_simplicial(const report::RunOptions& opts);
report::VerificationReport run_power(const report::RunOptions& opts);
report::VerificationReport run_gamma(const report::RunOptions& opts);
report::VerificationReport run_toeplitz(const report::RunOptions& opts);
report::VerificationReport run_homotopy(const report::RunOptions& opts);

const std::vector<std::string>& suite_names();  // without "all"

// name is one of suite_names() or "all"; throws Error(E_SUITE) otherwise
report::VerificationReport run_suite(const std::string& name,
                                     const report::RunOptions& opts);

}  // namespace kklab::suites
