#pragma once

#include <string>
#include <vector>

#include "gind/theorems.hpp"

namespace gind::cli {

struct RunResult {
  int exit_code = 0;       // 0 ok, 1 failed theorem check, 2 input error
  std::string output;      // the full report, text or JSON
  bool wrote_file = false; // true when --out consumed the report
};

// argv-style arguments, program name excluded. Never throws; errors become
// exit code 2 with the message in output.
RunResult run(const std::vector<std::string>& args);

struct VerifyAll {
  std::vector<WitnessReport> reports;
  bool all_passed = false;
};

// Runs every theorem check over the fixed norm family
// {l1, l2, linf, lp:3, scale:2*l2, lin:diag(1..n)*l1}.
// tol_override >= 0 replaces each check's own tolerance.
VerifyAll verify_all(int n, Seed seed, double tol_override = -1.0);

}  // namespace gind::cli
