#ifndef TWFOCK_SERIES_HPP
#define TWFOCK_SERIES_HPP

// Truncated multigraded Laurent series with exact rational coefficients.
//
// A series lives in Q[[qb]]((t_1, ..., t_n))[[z]] truncated to a profile:
// qb-degree in [0, q_max], each t-degree in [-band, band], z-degree in
// [0, z_max].  The base variable qb is q for strict-partition objects and
// q^(1/2) for odd-strict ones; the profile carries the variable names so
// that printed series are self-describing.
//
// Truncation is coherent for products only when the dropped keys form an
// ideal for the supports involved, e.g. every operand is supported in the
// cone |t| <= qb-degree with band >= q_max, or has only non-negative
// t-degrees, or is pure in qb.  All builders in this library stay within
// those cases.

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "twfock/check_report.hpp"

namespace twfock {

using Rational = mpq_class;

inline constexpr std::size_t kMaxTVars = 6;

class SeriesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ProfileMismatch : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

class MaskedOperation : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

class InadmissibleExpansion : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

class MaskedKey : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

// Exponents of one monomial.  t[i] refers to the i-th t-variable of the
// owning profile; unused slots stay zero.  The defaulted ordering compares
// q first, then t-variables in declaration order, then z.
struct ExponentKey {
  int q = 0;
  std::array<int, kMaxTVars> t{};
  int z = 0;

  auto operator<=>(const ExponentKey&) const = default;
  bool operator==(const ExponentKey&) const = default;

  ExponentKey& operator+=(const ExponentKey& o) {
    q += o.q;
    for (std::size_t i = 0; i < kMaxTVars; ++i) t[i] += o.t[i];
    z += o.z;
    return *this;
  }
  friend ExponentKey operator+(ExponentKey a, const ExponentKey& b) { return a += b; }
  friend ExponentKey operator-(ExponentKey a, const ExponentKey& b) {
    a.q -= b.q;
    for (std::size_t i = 0; i < kMaxTVars; ++i) a.t[i] -= b.t[i];
    a.z -= b.z;
    return a;
  }
  bool is_zero() const { return *this == ExponentKey{}; }
};

struct TVar {
  std::string name;
  int band = 0;

  bool operator==(const TVar&) const = default;
};

struct TruncationProfile {
  std::string base = "q";
  int q_max = 0;
  std::vector<TVar> t_vars;
  int z_max = 0;

  bool operator==(const TruncationProfile&) const = default;

  // Throws ProfileMismatch for unknown names.
  std::size_t index_of(std::string_view var) const;
  bool contains(const ExponentKey& key) const;
  // Same variable names, every bound no larger than `outer`'s.
  bool within(const TruncationProfile& outer) const;
  bool same_variables(const TruncationProfile& other) const;

  ExponentKey key(int q, std::initializer_list<std::pair<std::string_view, int>> t = {},
                  int z = 0) const;

  TruncationProfile with_q_max(int n) const;
  TruncationProfile with_z_max(int n) const;
  TruncationProfile with_band(int m) const;
};

// A single-variable profile; the common case for one-point functions.
TruncationProfile make_profile(std::string base, int q_max, std::string var, int band,
                               int z_max = 0);

// qb_exp <= bound + sum_v coeff[v] * t_exp(v).  Keys violating a constraint
// carry coefficients that must never be read.
struct LinearConstraint {
  int bound = 0;
  std::array<int, kMaxTVars> coeff{};

  bool operator==(const LinearConstraint&) const = default;
  bool satisfied_by(const ExponentKey& key) const;
};

class Series {
 public:
  using Terms = std::map<ExponentKey, Rational>;

  Series() = default;
  explicit Series(TruncationProfile profile);

  static Series constant(const TruncationProfile& profile, const Rational& c);
  static Series monomial(const TruncationProfile& profile, const ExponentKey& key,
                         const Rational& c = 1);

  const TruncationProfile& profile() const { return profile_; }
  const Terms& terms() const { return terms_; }
  const std::vector<LinearConstraint>& mask() const { return mask_; }
  bool masked() const { return !mask_.empty(); }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // True when `key` satisfies every mask constraint.
  bool reliable(const ExponentKey& key) const;

  // Stored coefficient or zero.  Throws MaskedKey if the mask excludes
  // `key`, ProfileMismatch if the key lies outside the profile.
  Rational coeff(const ExponentKey& key) const;

  // Accumulates c into `key`; keys outside the profile are dropped and
  // zero results pruned.  For use while a series is being built.
  void add_term(const ExponentKey& key, const Rational& c);
  void add_constraint(const LinearConstraint& c);

  // Drop everything outside `smaller`, which must share variable names.
  Series restricted(const TruncationProfile& smaller) const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Rational& c);

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator-(Series a) { return a *= Rational(-1); }
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend Series operator*(const Rational& c, Series a) { return a *= c; }
  friend Series operator*(const Series& a, const Series& b);

  friend bool operator==(const Series& a, const Series& b) {
    return a.profile_ == b.profile_ && a.terms_ == b.terms_ && a.mask_ == b.mask_;
  }

 private:
  TruncationProfile profile_;
  Terms terms_;
  std::vector<LinearConstraint> mask_;
};

// Admissible expansion direction for 1/(1 - m): qb-degree >= 1, or
// qb-degree 0 with all t-degrees >= 0 and some t- or z-degree positive.
bool admissible(const ExponentKey& m);

// sum_{k>=0} (c*m)^k, the expansion of 1/(1 - c*m).
Series inverse_geometric(const ExponentKey& m, const TruncationProfile& profile,
                         const Rational& c = 1);

// prod_{i>=0} (1 + sign * a * qb^(i*step)).
Series pochhammer_inf(const ExponentKey& a, int sign, int step, const TruncationProfile& profile);

// 1/s for s with non-zero constant term and admissible remaining monomials.
Series inverse(const Series& s);

// t -> qb^a t in variable `var`.  The result is masked by
// qb_exp - a*t_exp(var) <= q_max: beyond that the source was truncated.
Series subst_qshift(const Series& s, std::string_view var, int a);

// t d/dt in variable `var`.
Series euler_derivative(const Series& s, std::string_view var);

struct SignedFactor {
  int sign = 1;
  Series factor;
};

// t d/dt sum_i sign_i ln(F_i), computed as sum_i sign_i (t d/dt F_i) / F_i.
Series log_derivative(std::span<const SignedFactor> factors, std::string_view var);

// t -> t^{-1}.
Series reflect(const Series& s, std::string_view var);

// Permute t-variable slots: slot i of the result takes slot perm[i] of s.
// All bands must agree.
Series permute_vars(const Series& s, std::span<const std::size_t> perm);

// z -> value; the result has z_max = 0.
Series substitute_z(const Series& s, const Rational& value);

// Boundary expansions of (t+1)/(2(t-1)): minus is |t| < 1, plus is |t| > 1.
Series correction_minus(std::string_view var, const TruncationProfile& profile);
Series correction_plus(std::string_view var, const TruncationProfile& profile);
// Boundary expansions of t^(1/2)/(t-1) in the hat variable th = t^(1/2).
Series correction_ns_minus(std::string_view var, const TruncationProfile& profile);
Series correction_ns_plus(std::string_view var, const TruncationProfile& profile);

// Compare every coefficient inside `window` that both masks allow; report
// the first disagreement in key order.
CheckReport eq_on_window(const Series& a, const Series& b, const TruncationProfile& window,
                         std::string identity = "eq_on_window");

std::string format_key(const ExponentKey& key, const TruncationProfile& profile);

// Canonical serialisations, terms in key order.  JSON:
// {"profile": {...}, "terms": [{"exponents": {"q": e, "t": j, "z": k}, "num": "..", "den": ".."}]}
// CSV: header with the variable names, then one row per term.
std::string to_json(const Series& s);
std::string to_csv(const Series& s);

}  // namespace twfock

#endif  // TWFOCK_SERIES_HPP
