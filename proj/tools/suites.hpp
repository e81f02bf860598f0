#ifndef TWFOCK_TOOLS_SUITES_HPP
#define TWFOCK_TOOLS_SUITES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twfock/check_report.hpp"
#include "twfock/numeric.hpp"

namespace twfock::cli {

// Orders are in q units.  Odd strict checks run in the half-grading, so
// their windows are twice as long in qh.
struct SuiteOptions {
  std::optional<int> q_order;
  std::optional<int> t_band;
  int z_order = 10;
  std::optional<Complex> q;
  std::vector<Complex> ts;
  std::optional<double> tolerance;
  EvalConfig eval;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckReport> reports;
  bool pass = true;
  double seconds = 0;
};

struct Suite {
  std::string name;
  std::string summary;
  std::function<std::vector<CheckReport>(const SuiteOptions&)> run;
};

// Registry order is report order; "all" runs every suite in turn.
const std::vector<Suite>& suite_registry();
std::vector<std::string> suite_names();

// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace twfock::cli

#endif  // TWFOCK_TOOLS_SUITES_HPP
