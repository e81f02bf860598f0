#include "twfock/check_report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace twfock {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

std::string to_text(const CheckReport& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  " << r.identity;
  if (!r.params.empty()) {
    os << " [";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
      if (i) os << ", ";
      os << r.params[i].first << '=' << r.params[i].second;
    }
    os << ']';
  }
  if (r.mismatch) {
    os << "  first mismatch at " << r.mismatch->monomial << ": lhs=" << r.mismatch->lhs
       << " rhs=" << r.mismatch->rhs;
  } else if (!r.residual) {
    os << "  " << r.compared << " coefficients";
  }
  if (r.residual) {
    os << "  residual=" << sci(*r.residual);
    if (r.tolerance) os << " tol=" << sci(*r.tolerance);
  }
  if (r.cutoff) os << " cutoff=" << *r.cutoff;
  if (!r.note.empty()) os << "  (" << r.note << ')';
  return os.str();
}

std::string to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["identity"] = r.identity;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["residual"] = r.residual ? nlohmann::ordered_json(*r.residual) : nlohmann::ordered_json();
  j["pass"] = r.pass;
  j["cutoff"] = r.cutoff ? nlohmann::ordered_json(*r.cutoff) : nlohmann::ordered_json();
  if (r.tolerance) j["tolerance"] = *r.tolerance;
  if (r.mismatch) {
    j["mismatch"] = {{"monomial", r.mismatch->monomial},
                     {"lhs", r.mismatch->lhs},
                     {"rhs", r.mismatch->rhs}};
  }
  if (!r.residual) j["compared"] = r.compared;
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

}  // namespace twfock
