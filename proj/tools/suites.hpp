#pragma once

#include <string>
#include <vector>

#include "atcurv/rational.hpp"

namespace atcurv::cli {

struct SuiteOptions {
  Rational delta{1};
  int max_generations = 6;
  int max_size = 6;
  double tol = 1e-9;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;  // informational output
  std::string first_failure;

  void fail(const std::string& what);
};

const std::vector<std::string>& suite_names();
/// Throws InvalidArgument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace atcurv::cli
