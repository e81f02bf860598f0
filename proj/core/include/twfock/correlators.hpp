#ifndef TWFOCK_CORRELATORS_HPP
#define TWFOCK_CORRELATORS_HPP

// Exact truncated q-series of the one- and n-point functions and of every
// closed form they are compared against.
//
// Strict objects use base "q" and t-variables "t" (or "t1".."tn").  Odd
// strict objects use the half-grading: base "qh" = q^(1/2) and t-variables
// "th" = t^(1/2), so every exponent stays integral.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "twfock/check_report.hpp"
#include "twfock/partitions.hpp"
#include "twfock/series.hpp"

namespace twfock {

enum class Convention { Minus, Plus };

struct CorrelatorSpec {
  PartitionKind kind = PartitionKind::Strict;
  int arity = 1;
  bool normal_ordered = true;
  Convention correction = Convention::Minus;
  bool z_weighted = false;
};

struct SeriesPair {
  Series lhs;
  Series rhs;
};

std::string base_name(PartitionKind kind);
std::string var_name(PartitionKind kind);
// Variable of slot i (0-based) in an n-point profile; the plain name when n = 1.
std::string var_name(PartitionKind kind, int slot, int arity);

TruncationProfile onepoint_profile(PartitionKind kind, int q_order, int band, int z_order = 0);
TruncationProfile npoint_profile(PartitionKind kind, int arity, int q_order, int band);

// prod over allowed parts p of (1 + z qb^p); z is dropped unless z_weighted.
Series partition_generating_function(PartitionKind kind, const TruncationProfile& profile,
                                     bool z_weighted = false);

// s * c * m; keys leaving the profile drop.  s must be unmasked.
Series times_monomial(const Series& s, const ExponentKey& m, const Rational& c = 1);

// Normalised sum: (sum_lambda f(lambda) qb^|lambda|) / (partition generating
// function).  Throws if max_weight < q_max.
Series expectation(PartitionKind kind, const std::function<Series(const Partition&)>& f,
                   int max_weight, const TruncationProfile& profile);

// sum_lambda qb^|lambda| prod_i F(lambda; t_i) over every t-variable of
// `profile`.  Throws if max_weight < q_max; max_weight < 0 means q_max.
Series normal_ordered_npoint(PartitionKind kind, const TruncationProfile& profile,
                             int max_weight = -1);

// Normal-ordered one-point series plus the generating function times the
// chosen expansion of the correction constant.  With z_weighted, each
// partition also carries z^length.
Series corrected_onepoint(PartitionKind kind, Convention convention,
                          const TruncationProfile& profile, bool z_weighted = false,
                          int max_weight = -1);

Series build(const CorrelatorSpec& spec, const TruncationProfile& profile);

// Row-sum lemmas.  lhs sums t^{lambda_{k+1}} qb^|lambda| over partitions of
// length >= k (t^0 = 1 when the length is exactly k).  The uncorrected
// variant uses the plain closed form; the corrected one replaces the
// empty-remainder term for odd strict partitions by qb^{-k} times the
// prefactor.  Both agree for strict partitions.
enum class LemmaForm { Uncorrected, Corrected };
SeriesPair lemma_row_sums(PartitionKind kind, int k, const TruncationProfile& profile,
                          LemmaForm form = LemmaForm::Uncorrected);

// sum_k q^{k(k+1)/2} z^k / ((1-q)...(1-q^k)) against prod_{r>=0}(1 + q^{r+1} z).
// `profile` needs base q, z_max >= 1; t-variables are ignored.
SeriesPair euler_identity(const TruncationProfile& profile);

// Subtracted first-form identity: lhs = sum_lambda sum_{k<=len}(t^{lambda_k} - 1)
// qb^|lambda| [z^len]; rhs = generating function times
// sum over allowed parts p of qb^p (t^p - 1) z / (1 + qb^p z).
SeriesPair regularized_expectation_identity(PartitionKind kind, bool z_weighted,
                                            const TruncationProfile& profile);

// The t = 1 companion: sum_lambda len(lambda) qb^|lambda| [z^len] against
// generating function times sum_p qb^p z / (1 + qb^p z).
SeriesPair length_moment_identity(PartitionKind kind, bool z_weighted,
                                  const TruncationProfile& profile);

// Generating function times sum_p qb^p (t^p - t^-p) / (1 + qb^p).
Series closed_form_onepoint(PartitionKind kind, const TruncationProfile& profile);

// Strict: sum_n q^n t^n / (1 + q^n) vs sum_r (-1)^r q^{r+1} t / (1 - q^{r+1} t).
// Odd strict (hat variables): sum_n qh^{2n-1} th^{2n-1} / (1 + qh^{2n-1}) vs
// sum_r (-1)^r qh^{r+1} th / (1 - qh^{2r+2} th^2).
SeriesPair lambert_swap(PartitionKind kind, const TruncationProfile& profile);

// Generating function times the logarithmic derivative of the theta ratio,
// expanded for |t| < 1.
Series theta_logderiv_form(PartitionKind kind, const TruncationProfile& profile);

// lhs: the z-weighted Minus one-point series at z = -1.  rhs: (q;q)_inf times
// (-1/2 + t d/dt ln((t;q)_inf (q/t;q)_inf)).
SeriesPair rminus_closed_form(const TruncationProfile& profile);

// lhs: the z-weighted Minus one-point series.  rhs: (-qz;q)_inf times
// (sum_n q^n (t^n - t^-n) z / (1 + q^n z) + correction_minus).
SeriesPair super_closed_form(const TruncationProfile& profile);

// Shift t -> qb t in the Minus series and compare with minus the Plus series
// on the (q_order, band) window.
CheckReport quasi_periodicity_exact(PartitionKind kind, int q_order, int band);

// Named series for the command line; see series_target_names().
Series series_target(const std::string& name, int q_order, int band, int z_order);
const std::vector<std::string>& series_target_names();

// --- Checks --------------------------------------------------------------
// Each runs one identity at the given orders and reports the first mismatch.

CheckReport check_partition_counts(PartitionKind kind, int max_weight);
CheckReport check_euler(int q_order, int z_order);
CheckReport check_lemma(PartitionKind kind, int k, int q_order,
                        LemmaForm form = LemmaForm::Uncorrected);
CheckReport check_regularized(PartitionKind kind, bool z_weighted, int q_order, int z_order);
CheckReport check_length_moment(PartitionKind kind, bool z_weighted, int q_order, int z_order);
CheckReport check_closed_form(PartitionKind kind, int q_order, int band);
CheckReport check_lambert(PartitionKind kind, int q_order, int band);
CheckReport check_theta_form(PartitionKind kind, int q_order, int band);
CheckReport check_rminus(int q_order, int band);
CheckReport check_super(int q_order, int band, int z_order);
CheckReport check_antisymmetry(PartitionKind kind, int arity, int q_order);
CheckReport check_slot_symmetry(PartitionKind kind, int arity, int q_order);

}  // namespace twfock

#endif  // TWFOCK_CORRELATORS_HPP
