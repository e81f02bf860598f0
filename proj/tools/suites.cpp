#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "twfock/correlators.hpp"

namespace twfock::cli {

namespace {

constexpr auto kSp = PartitionKind::Strict;
constexpr auto kOsp = PartitionKind::OddStrict;

int order(const SuiteOptions& o, int fallback) { return o.q_order.value_or(fallback); }
int band(const SuiteOptions& o, int fallback) { return o.t_band.value_or(order(o, fallback)); }

double tol(const SuiteOptions& o, double fallback) { return o.tolerance.value_or(fallback); }

// Scale applied to odd strict windows: q-order N is qh-order 2N.
int hat(int n) { return 2 * n; }

std::vector<CheckReport> exact_kind(PartitionKind kind, const SuiteOptions& o) {
  const int s = kind == kSp ? 1 : 2;
  const int n = s * order(o, 20);
  const int m = s * band(o, 20);
  const int z = o.z_order;
  std::vector<CheckReport> out;
  out.push_back(check_partition_counts(kind, 3 * n));
  if (kind == kSp) out.push_back(check_euler(n, z));
  for (int k = 0; k <= 6; ++k) {
    out.push_back(check_lemma(kind, k, n, LemmaForm::Uncorrected));
    if (kind == kOsp) out.push_back(check_lemma(kind, k, n, LemmaForm::Corrected));
  }
  out.push_back(check_regularized(kind, false, n, z));
  out.push_back(check_length_moment(kind, false, n, z));
  out.push_back(check_closed_form(kind, n, m));
  out.push_back(check_lambert(kind, n, m));
  out.push_back(check_theta_form(kind, n, m));
  out.push_back(check_antisymmetry(kind, 2, std::min(n, s * 12)));
  out.push_back(check_slot_symmetry(kind, 3, std::min(n, s * 8)));
  return out;
}

std::vector<CheckReport> super_exact(const SuiteOptions& o) {
  const int n = order(o, 20);
  const int m = band(o, 20);
  const int z = o.z_order;
  std::vector<CheckReport> out;
  out.push_back(check_regularized(kSp, true, n, z));
  out.push_back(check_regularized(kOsp, true, hat(n), z));
  out.push_back(check_length_moment(kSp, true, n, z));
  out.push_back(check_length_moment(kOsp, true, hat(n), z));
  out.push_back(check_super(n, m, z));
  out.push_back(check_rminus(n, m));
  return out;
}

std::vector<CheckReport> shift_exact(const SuiteOptions& o) {
  const int n = order(o, 12);
  const int m = band(o, 12);
  return {quasi_periodicity_exact(kSp, n, m), quasi_periodicity_exact(kOsp, hat(n), hat(m))};
}

// A thrown evaluation error becomes a failing report.
CheckReport guarded(const std::string& identity, const std::function<CheckReport()>& check) {
  try {
    return check();
  } catch (const NumericError& e) {
    CheckReport r;
    r.identity = identity;
    r.pass = false;
    r.note = e.what();
    return r;
  }
}

std::vector<CheckReport> numeric_onepoint(const SuiteOptions& o) {
  std::vector<std::pair<Complex, Complex>> points{
      {0.25, 1.6},
      {Complex(0.2, 0.05), std::polar(1.4, 0.5)},
      {Complex(0.1, -0.1), std::polar(2.5, -0.7)},
  };
  if (o.q && o.ts.size() == 1) points = {{*o.q, o.ts.front()}};
  std::vector<CheckReport> out;
  for (const auto& [q, t] : points) {
    for (Correlator f : {Correlator::R, Correlator::S}) {
      out.push_back(guarded("quasi-periodicity", [&, q = q, t = t] {
        return check_quasi_periodicity(f, q, t, o.eval, tol(o, 1e-9));
      }));
    }
  }
  const std::vector<Complex> none;
  const std::vector<Complex> rest{1.3};
  out.push_back(guarded("pole-residue",
                        [&] { return check_pole_residue(0.2, none, o.eval, tol(o, 1e-6)); }));
  out.push_back(guarded("pole-residue",
                        [&] { return check_pole_residue(0.2, rest, o.eval, tol(o, 1e-4)); }));

  const Complex q = std::polar(0.2, 0.3);
  const Complex inside = std::polar(0.5, 0.4);
  const Complex outside = std::polar(2.0, 0.4);
  for (Correlator f : {Correlator::R, Correlator::S}) {
    for (bool plus : {false, true}) {
      out.push_back(guarded("exact-vs-numeric", [&] {
        return check_exact_vs_numeric(f, plus, q, plus ? outside : inside, 25, o.eval,
                                      tol(o, 1e-6));
      }));
    }
  }
  out.push_back(guarded("exact-vs-numeric", [&] {
    return check_exact_vs_numeric(Correlator::RMinus, false, q, inside, 25, o.eval, tol(o, 1e-6));
  }));
  return out;
}

std::vector<Complex> policy_points(Complex q, int arity) {
  // |t_1| = |q|^{-1/2}, the others on the unit circle with generic phases.
  static const double phases[] = {0.3, 1.1, 2.3, -0.7, 1.7, -2.1};
  std::vector<Complex> ts{std::polar(1 / std::sqrt(std::abs(q)), phases[0])};
  for (int i = 1; i < arity; ++i) ts.push_back(std::polar(1.0, phases[i]));
  return ts;
}

std::vector<CheckReport> numeric_diff(const SuiteOptions& o) {
  const Complex q = o.q.value_or(Complex(0.2, 0.05));
  std::vector<std::vector<Complex>> argument_sets;
  if (!o.ts.empty()) {
    argument_sets.push_back(o.ts);
  } else {
    argument_sets = {policy_points(q, 2), policy_points(q, 3)};
  }
  std::vector<CheckReport> out;
  for (const auto& ts : argument_sets) {
    for (Correlator f : {Correlator::R, Correlator::S, Correlator::RMinus}) {
      out.push_back(guarded("difference-equation", [&] {
        return check_difference_equation({f, static_cast<int>(ts.size())}, q, ts, o.eval,
                                         tol(o, 1e-8));
      }));
    }
  }
  return out;
}

std::vector<CheckReport> numeric_theta(const SuiteOptions& o) {
  const NumericGrid grid = default_b_grid();
  std::vector<CheckReport> out;
  out.push_back(guarded("theta-reflection",
                        [&] { return check_theta_reflection(grid, o.eval, tol(o, 1e-12)); }));
  out.push_back(guarded("triple-product-squared", [&] {
    return check_triple_product_squared(grid, o.eval, tol(o, 1e-9));
  }));
  for (BShiftForm form : {BShiftForm::Literal, BShiftForm::Squared, BShiftForm::Consistent}) {
    out.push_back(guarded("b-shift-product",
                          [&] { return check_b_shift(grid, o.eval, form, tol(o, 1e-9)); }));
  }
  return out;
}

}  // namespace

const std::vector<Suite>& suite_registry() {
  static const std::vector<Suite> suites{
      {"sp-exact", "strict-partition identities, exact",
       [](const SuiteOptions& o) { return exact_kind(kSp, o); }},
      {"osp-exact", "odd-strict-partition identities, exact",
       [](const SuiteOptions& o) { return exact_kind(kOsp, o); }},
      {"super-exact", "z-graded identities and the signed-length closed form", super_exact},
      {"shift-exact", "masked quasi-periodicity of the exact one-point series", shift_exact},
      {"numeric-1pt", "quasi-periodicity, pole residues, exact/numeric agreement",
       numeric_onepoint},
      {"numeric-diff", "q-difference equations for R, S and R-", numeric_diff},
      {"numeric-theta", "theta functions and the theta quotient B", numeric_theta},
  };
  return suites;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& s : suite_registry()) names.push_back(s.name);
  names.push_back("all");
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result;
  result.name = name;
  bool found = false;
  for (const auto& s : suite_registry()) {
    if (name != "all" && s.name != name) continue;
    found = true;
    SuiteOptions o = options;
    for (auto& r : s.run(o)) result.reports.push_back(std::move(r));
  }
  if (!found) throw std::invalid_argument("unknown suite '" + name + "'");
  result.pass = std::all_of(result.reports.begin(), result.reports.end(),
                            [](const CheckReport& r) { return r.pass; });
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace twfock::cli
