#ifndef TWFOCK_CHECK_REPORT_HPP
#define TWFOCK_CHECK_REPORT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace twfock {

// First coefficient at which two exact series disagree.
struct Mismatch {
  std::string monomial;
  std::string lhs;
  std::string rhs;
};

// Outcome of one identity check, exact or numeric.
struct CheckReport {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = false;

  // Exact checks.
  std::optional<Mismatch> mismatch;
  std::size_t compared = 0;

  // Numeric checks.
  std::optional<double> residual;
  std::optional<double> tolerance;
  std::optional<int> cutoff;

  // Free-form diagnostics (observed branch sign, evaluation error, ...).
  std::string note;

  CheckReport& param(std::string key, std::string value) {
    params.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

// One line, human readable.
std::string to_text(const CheckReport& r);
// {identity, params, residual, pass, cutoff, ...} as compact JSON.
std::string to_json(const CheckReport& r);

}  // namespace twfock

#endif  // TWFOCK_CHECK_REPORT_HPP
