#ifndef TWFOCK_NUMERIC_HPP
#define TWFOCK_NUMERIC_HPP

// Floating-point evaluation of the correlators as truncated partition sums,
// plus theta functions and the checks built on them.
//
// Powers of complex numbers use the principal branch.  S is evaluated in the
// hat variables qh = q^(1/2), th = t^(1/2); the entry points taking q, t
// pick principal square roots.

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twfock/check_report.hpp"
#include "twfock/series.hpp"

namespace twfock {

using Complex = std::complex<double>;

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalConfig {
  // Partitions with q-weight <= weight_cutoff are summed (S: |lambda| <= 2L).
  int weight_cutoff = 60;
  double tail_tol = 1e-10;
  // |q| + guard <= |t_i| <= 1/|q| - guard and |t_i - 1| >= guard.
  double annulus_guard = 1e-3;
  // When above weight_cutoff, keep adding weight shells up to this value
  // until the tail estimate meets tail_tol.
  int max_cutoff = 0;
};

enum class Correlator { R, S, RMinus };

std::string to_string(Correlator f);
// "R", "S", "R-" (also "Rminus").
Correlator parse_correlator(const std::string& name);

struct EvalResult {
  Complex value;
  // Estimated size of the omitted shells.
  double tail = 0;
  // Weight cutoff actually used, in q units.
  int cutoff = 0;
};

// Trace sum of the n-point function at (q, t_1..t_n); n = 0 gives the
// (signed, for R-) partition generating function.
EvalResult eval_correlator(Correlator f, Complex q, std::span<const Complex> ts,
                           const EvalConfig& cfg);

// S at hat arguments qh, th_i.
EvalResult eval_s_hat(Complex qh, std::span<const Complex> ths, const EvalConfig& cfg);

// (t+1)/(2(t-1)) and t^(1/2)/(t-1) = th/(th^2-1).
Complex correction_value(Complex t);
Complex correction_ns_value(Complex th);

// sum over n in j/2 + Z, |n| <= cutoff, of q^{n^2} t^n.  Throws if the first
// omitted term exceeds tail_tol.
Complex theta(int j, Complex q, Complex t, int cutoff, double tail_tol = 1e-12);
// Same with t^n = exp(n * log_t) for a caller-chosen logarithm of t.
Complex theta_log(int j, Complex q, Complex log_t, int cutoff, double tail_tol = 1e-12);

enum class BRoute { Theta, Product };

// theta_{1,1}(q,-t)/theta_{0,1}(q,-t), or the product form with the
// principal branch of (-q^{-1/2} t)^{-1/2}.
Complex b_function(Complex q, Complex t, const EvalConfig& cfg, BRoute route);
// Theta route with log(-t) = log_t + i*pi, so that shifting log_t by log q
// realises t -> q t on one consistent branch.
Complex b_function_log(Complex q, Complex log_t, const EvalConfig& cfg);

struct MergePattern {
  // 0-based indices into t_2..t_n positions of the full argument list (>= 1).
  std::vector<int> indices;
  std::vector<int> signs;  // +1 or -1 per index
  int minus_count() const;
};

// All 3^{n-1} ways of merging t_2..t_n into t_1, in a fixed order.
std::vector<MergePattern> merge_patterns(int arity);

struct DifferenceEquationSpec {
  Correlator func = Correlator::R;
  int arity = 1;
};

// |f(q t_1, t_2, ...) - sum over merge patterns|, both sides summed directly.
CheckReport check_difference_equation(const DifferenceEquationSpec& spec, Complex q,
                                      std::span<const Complex> ts, const EvalConfig& cfg,
                                      double tolerance = 1e-8);

// Richardson-extrapolated (t_1 - 1) R(t_1, t_2, ...) as t_1 -> 1 against
// R(t_2, ...); for n = 1 the target is prod (1 + q^k).  The residual is
// relative to the target.
CheckReport check_pole_residue(Complex q, std::span<const Complex> rest, const EvalConfig& cfg,
                               double tolerance, double eps = 1e-4);

// |f(q t) + f(t)|; S uses th = sqrt(t), qh = sqrt(q) and the shift qh*th.
CheckReport check_quasi_periodicity(Correlator f, Complex q, Complex t, const EvalConfig& cfg,
                                    double tolerance = 1e-9);

struct NumericGrid {
  std::vector<Complex> qs;
  std::vector<Complex> ts;
};

// 5 x 5 points with |q| <= 0.3 away from the zeros and poles of B.
NumericGrid default_b_grid();

// max |theta_j(q, 1/t) - theta_j(q, t)| over the grid, j = 0 and 1.
CheckReport check_theta_reflection(const NumericGrid& grid, const EvalConfig& cfg,
                                   double tolerance = 1e-12);

// max |B_theta^2 - B_product^2|; the note records how often the unsquared
// ratio B_theta / B_product was +1 and -1.
CheckReport check_triple_product_squared(const NumericGrid& grid, const EvalConfig& cfg,
                                         double tolerance = 1e-9);

// Product P = B(q, q t) B(q, t).
//   Literal:    principal branches, residual max |P + 1|.
//   Squared:    principal branches, residual max |P^2 - 1|.
//   Consistent: log(q t) = log q + log t on both theta quotients,
//               residual max |P - 1|.
enum class BShiftForm { Literal, Squared, Consistent };
CheckReport check_b_shift(const NumericGrid& grid, const EvalConfig& cfg, BShiftForm form,
                          double tolerance = 1e-9);

// Exact one-point series (module correlators) evaluated at (q, t) against the
// trace sum.  Minus needs |t| < 1 and Plus |t| > 1.  For S the exact series
// lives in the half-grading to order 2 * q_order at qh = sqrt(q), th = sqrt(t);
// R- uses the Minus series at z = -1.  The t-band is twice the q-order so the
// expanded correction constant is accurate far beyond the q truncation.
CheckReport check_exact_vs_numeric(Correlator f, bool plus_convention, Complex q, Complex t,
                                   int q_order, const EvalConfig& cfg, double tolerance = 1e-6);

// Substitute numbers into an exact series: base -> qb, t-variable i -> tbs[i],
// z -> z.  Masked series are rejected.
Complex evaluate_series(const Series& s, Complex qb, std::span<const Complex> tbs,
                        Complex z = 1.0);

// "a", "a+bi", "a-bi", "bi", "i"; decimal or exponent literals.
Complex parse_complex(const std::string& text);
// Shortest round-trip style: "1.5", "0.2+0.05i", "-1e-09-3i".
std::string format_complex(Complex z, int digits = 12);

}  // namespace twfock

#endif  // TWFOCK_NUMERIC_HPP
