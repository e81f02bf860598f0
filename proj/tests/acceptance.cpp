// Acceptance run: one PASS/FAIL line per criterion, with timings.
//
// Exit status is 0 when every criterion has its recorded outcome.  Two
// criteria are recorded red because the identities they test do not hold;
// the analysis is printed with them.  A red criterion turning green (or any
// other change) makes the run fail so the record gets revisited.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "twfock/correlators.hpp"
#include "twfock/numeric.hpp"

namespace {

using namespace twfock;

constexpr auto kSp = PartitionKind::Strict;
constexpr auto kOsp = PartitionKind::OddStrict;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void add(const CheckReport& r) {
    pass = pass && r.pass;
    details.push_back(to_text(r));
  }
  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "PASS  " : "FAIL  ") + what);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
  // Recorded red, with the reason.
  std::string known_red;
};

Outcome partition_counts() {
  Outcome o;
  o.add(check_partition_counts(kSp, 60));
  o.add(check_partition_counts(kOsp, 60));
  return o;
}

Outcome euler() {
  Outcome o;
  o.add(check_euler(30, 15));
  return o;
}

Outcome row_sum_lemmas() {
  Outcome o;
  for (int k = 0; k <= 6; ++k) o.add(check_lemma(kSp, k, 25));
  for (int k = 0; k <= 6; ++k) o.add(check_lemma(kOsp, k, 50));
  // Not part of the verdict: the corrected odd strict statement.
  bool corrected = true;
  for (int k = 0; k <= 6; ++k) corrected = corrected && check_lemma(kOsp, k, 50, LemmaForm::Corrected).pass;
  o.details.push_back(std::string("info  corrected odd strict form, k = 0..6: ") +
                      (corrected ? "holds" : "fails"));
  return o;
}

Outcome subtracted_forms() {
  Outcome o;
  for (auto kind : {kSp, kOsp}) {
    const int n = kind == kSp ? 25 : 50;
    for (bool z : {false, true}) {
      o.add(check_regularized(kind, z, n, 12));
      o.add(check_length_moment(kind, z, n, 12));
    }
  }
  return o;
}

Outcome normal_ordered_closed_forms() {
  Outcome o;
  o.add(check_closed_form(kSp, 25, 25));
  o.add(check_closed_form(kOsp, 50, 50));
  return o;
}

Outcome theta_logderiv() {
  Outcome o;
  o.add(check_theta_form(kSp, 20, 20));
  o.add(check_theta_form(kOsp, 40, 40));
  return o;
}

Outcome z_graded_closed_form() {
  Outcome o;
  o.add(check_super(20, 20, 12));
  o.add(check_rminus(20, 20));
  return o;
}

Outcome exact_quasi_periodicity() {
  Outcome o;
  o.add(quasi_periodicity_exact(kSp, 12, 12));
  o.add(quasi_periodicity_exact(kOsp, 24, 24));
  return o;
}

Outcome theta_quotient() {
  Outcome o;
  const auto grid = default_b_grid();
  const EvalConfig cfg;
  double largest = 0;
  for (Complex q : grid.qs) largest = std::max(largest, std::abs(q));
  o.require(largest <= 0.3, "grid max |q| = " + format_complex(largest));
  o.add(check_b_shift(grid, cfg, BShiftForm::Literal, 1e-9));
  o.add(check_triple_product_squared(grid, cfg, 1e-9));
  o.details.push_back("info  " + to_text(check_b_shift(grid, cfg, BShiftForm::Squared, 1e-9)));
  o.details.push_back("info  " + to_text(check_b_shift(grid, cfg, BShiftForm::Consistent, 1e-9)));
  return o;
}

std::vector<Complex> policy_point(Complex q, int arity) {
  static const double phases[] = {0.3, 1.1, 2.3};
  std::vector<Complex> ts{std::polar(1 / std::sqrt(std::abs(q)), phases[0])};
  for (int i = 1; i < arity; ++i) ts.push_back(std::polar(1.0, phases[i]));
  return ts;
}

Outcome difference_equations() {
  Outcome o;
  const EvalConfig cfg;  // L = 60, no adaptive extension
  o.require(cfg.weight_cutoff <= 60 && cfg.max_cutoff <= cfg.weight_cutoff, "cutoff L <= 60");
  const Complex q(0.2, 0.05);
  for (int n : {2, 3}) {
    for (Correlator f : {Correlator::R, Correlator::S, Correlator::RMinus}) {
      try {
        const CheckReport r = check_difference_equation({f, n}, q, policy_point(q, n), cfg, 1e-8);
        o.add(r);
        o.require(r.cutoff.value_or(0) <= 60, "reported cutoff <= 60");
      } catch (const NumericError& e) {
        o.require(false, e.what());
      }
    }
  }
  return o;
}

Outcome numeric_quasi_periodicity() {
  Outcome o;
  const std::vector<std::pair<Complex, Complex>> points{
      {0.25, 1.6},
      {Complex(0.2, 0.05), std::polar(1.4, 0.5)},
      {Complex(0.1, -0.1), std::polar(2.5, -0.7)},
  };
  // No cutoff is prescribed here, so shells are added until the tail is small.
  EvalConfig cfg;
  cfg.max_cutoff = 160;
  for (const auto& [q, t] : points) {
    for (Correlator f : {Correlator::R, Correlator::S}) {
      try {
        o.add(check_quasi_periodicity(f, q, t, cfg, 1e-9));
      } catch (const NumericError& e) {
        o.require(false, e.what());
      }
    }
  }
  return o;
}

Outcome pole_structure() {
  Outcome o;
  const std::vector<Complex> none;
  const std::vector<Complex> rest{1.3};
  o.add(check_pole_residue(0.2, rest, EvalConfig{}, 1e-4));
  o.add(check_pole_residue(0.2, none, EvalConfig{}, 1e-6));
  return o;
}

Outcome cross_module() {
  Outcome o;
  EvalConfig cfg;
  cfg.weight_cutoff = 60;
  const Complex q = std::polar(0.2, 0.3);
  const Complex inside = std::polar(0.5, 0.4);
  const Complex outside = std::polar(2.0, 0.4);
  for (Correlator f : {Correlator::R, Correlator::S}) {
    o.add(check_exact_vs_numeric(f, false, q, inside, 25, cfg, 1e-6));
    o.add(check_exact_vs_numeric(f, true, q, outside, 25, cfg, 1e-6));
  }
  o.add(check_exact_vs_numeric(Correlator::RMinus, false, q, inside, 25, cfg, 1e-6));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";

  const std::vector<Criterion> criteria{
      {1, "partition counts to weight 60, both kinds", 5, partition_counts, ""},
      {2, "Euler product identity, q-order 30, z-order 15", 5, euler, ""},
      {3, "row-sum lemmas k = 0..6 at q-order 25", 30, row_sum_lemmas,
       "the uncorrected odd strict row-sum formula leaves out the partition (2k-1, ..., 3, 1) "
       "with empty remainder, so for every k >= 1 both sides first differ at qh^(k^2) (lhs 1, "
       "rhs 0); the strict lemmas and the odd strict form with that term restored hold "
       "exactly"},
      {4, "subtracted first forms, plain and z-graded, q-order 25, z-order 12", 60,
       subtracted_forms, ""},
      {5, "normal-ordered one-point series equals the closed form, q-order 25", 60,
       normal_ordered_closed_forms, ""},
      {6, "Minus one-point series equals the theta log-derivative form, q-order 20", 60,
       theta_logderiv, ""},
      {7, "z-graded and signed-length closed forms, q-order 20", 30, z_graded_closed_form, ""},
      {8, "masked quasi-periodicity of the exact series at (12, 12)", 60,
       exact_quasi_periodicity, ""},
      {9, "B(q,qt) B(q,t) = -1 and squared triple product on a 5x5 grid", 5, theta_quotient,
       "with principal square roots the product B(q,qt) B(q,t) is +1 or -1 depending on "
       "the grid point, and continuing t -> qt on one branch gives +1 at every point, so "
       "|P + 1| reaches 2 and the sign -1 does not hold; P^2 = 1 and the squared triple "
       "product agree to about 1e-13"},
      {10, "q-difference equations, n = 2 and 3, at L = 60", 60, difference_equations, ""},
      {11, "numeric quasi-periodicity of R and S at three points", 5,
       numeric_quasi_periodicity, ""},
      {12, "pole residue at t1 = 1 for n = 1 and n = 2", 10, pole_structure, ""},
      {13, "exact series against trace sums at |q| = 0.2, N = 25, L = 60", 10, cross_module,
       ""},
  };

  int matched = 0;
  int green = 0;
  std::vector<int> unexpected;
  double total = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total += seconds;
    const bool in_time = seconds < c.limit_seconds;
    const bool pass = o.pass && in_time;
    green += pass;
    const bool expected = pass == c.known_red.empty();
    if (expected) {
      ++matched;
    } else {
      unexpected.push_back(c.id);
    }

    char line[256];
    std::snprintf(line, sizeof line, "criterion %2d: %s  %s  [%.3f s, limit %.0f s]", c.id,
                  pass ? "PASS" : "FAIL", c.title.c_str(), seconds, c.limit_seconds);
    std::cout << line << '\n';
    if (!pass || verbose) {
      for (const auto& d : o.details) std::cout << "    " << d << '\n';
      if (!in_time) std::cout << "    time limit exceeded\n";
    }
    if (!c.known_red.empty()) std::cout << "    analysis: " << c.known_red << '\n';
  }

  std::cout << "summary: " << green << "/" << criteria.size() << " criteria pass, " << matched
            << "/" << criteria.size() << " match the recorded outcome";
  char t[64];
  std::snprintf(t, sizeof t, ", %.2f s total\n", total);
  std::cout << t;
  if (!unexpected.empty()) {
    std::cout << "unexpected outcome for criteria:";
    for (int id : unexpected) std::cout << ' ' << id;
    std::cout << '\n';
    return 1;
  }
  return 0;
}
