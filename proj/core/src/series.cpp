#include "twfock/series.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace twfock {

namespace {

void require_same_profile(const Series& a, const Series& b, const char* op) {
  if (a.profile() != b.profile()) {
    throw ProfileMismatch(std::string(op) + ": operands have different truncation profiles");
  }
}

void require_unmasked(const Series& s, const char* op) {
  if (s.masked()) {
    throw MaskedOperation(std::string(op) + ": masked series are only valid for add, negate, "
                          "scale and comparison");
  }
}

// Multiply by (1 + c*m) in place of a general product.
Series times_binomial(const Series& s, const ExponentKey& m, const Rational& c) {
  Series out = s;
  Rational tmp;
  for (const auto& [key, coeff] : s.terms()) {
    tmp = coeff * c;
    out.add_term(key + m, tmp);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// TruncationProfile

std::size_t TruncationProfile::index_of(std::string_view var) const {
  for (std::size_t i = 0; i < t_vars.size(); ++i) {
    if (t_vars[i].name == var) return i;
  }
  throw ProfileMismatch("unknown t-variable '" + std::string(var) + "'");
}

bool TruncationProfile::contains(const ExponentKey& key) const {
  if (key.q < 0 || key.q > q_max || key.z < 0 || key.z > z_max) return false;
  for (std::size_t i = 0; i < kMaxTVars; ++i) {
    if (i < t_vars.size()) {
      if (key.t[i] < -t_vars[i].band || key.t[i] > t_vars[i].band) return false;
    } else if (key.t[i] != 0) {
      return false;
    }
  }
  return true;
}

bool TruncationProfile::same_variables(const TruncationProfile& other) const {
  if (base != other.base || t_vars.size() != other.t_vars.size()) return false;
  for (std::size_t i = 0; i < t_vars.size(); ++i) {
    if (t_vars[i].name != other.t_vars[i].name) return false;
  }
  return true;
}

bool TruncationProfile::within(const TruncationProfile& outer) const {
  if (!same_variables(outer)) return false;
  if (q_max > outer.q_max || z_max > outer.z_max) return false;
  for (std::size_t i = 0; i < t_vars.size(); ++i) {
    if (t_vars[i].band > outer.t_vars[i].band) return false;
  }
  return true;
}

ExponentKey TruncationProfile::key(int q, std::initializer_list<std::pair<std::string_view, int>> t,
                                   int z) const {
  ExponentKey k;
  k.q = q;
  k.z = z;
  for (const auto& [name, e] : t) k.t[index_of(name)] = e;
  return k;
}

TruncationProfile TruncationProfile::with_q_max(int n) const {
  TruncationProfile p = *this;
  p.q_max = n;
  return p;
}

TruncationProfile TruncationProfile::with_z_max(int n) const {
  TruncationProfile p = *this;
  p.z_max = n;
  return p;
}

TruncationProfile TruncationProfile::with_band(int m) const {
  TruncationProfile p = *this;
  for (auto& v : p.t_vars) v.band = m;
  return p;
}

TruncationProfile make_profile(std::string base, int q_max, std::string var, int band, int z_max) {
  if (q_max < 0 || band < 0 || z_max < 0) throw SeriesError("truncation bounds must be >= 0");
  TruncationProfile p;
  p.base = std::move(base);
  p.q_max = q_max;
  p.t_vars.push_back({std::move(var), band});
  p.z_max = z_max;
  return p;
}

bool LinearConstraint::satisfied_by(const ExponentKey& key) const {
  long rhs = bound;
  for (std::size_t i = 0; i < kMaxTVars; ++i) rhs += static_cast<long>(coeff[i]) * key.t[i];
  return key.q <= rhs;
}

// ---------------------------------------------------------------------------
// Series

Series::Series(TruncationProfile profile) : profile_(std::move(profile)) {
  if (profile_.q_max < 0 || profile_.z_max < 0) throw SeriesError("negative truncation bound");
  if (profile_.t_vars.size() > kMaxTVars) throw SeriesError("too many t-variables");
  for (const auto& v : profile_.t_vars) {
    if (v.band < 0) throw SeriesError("negative t-band");
  }
}

Series Series::constant(const TruncationProfile& profile, const Rational& c) {
  Series s(profile);
  s.add_term(ExponentKey{}, c);
  return s;
}

Series Series::monomial(const TruncationProfile& profile, const ExponentKey& key,
                        const Rational& c) {
  Series s(profile);
  s.add_term(key, c);
  return s;
}

bool Series::reliable(const ExponentKey& key) const {
  return std::all_of(mask_.begin(), mask_.end(),
                     [&](const LinearConstraint& c) { return c.satisfied_by(key); });
}

Rational Series::coeff(const ExponentKey& key) const {
  if (!profile_.contains(key)) {
    throw ProfileMismatch("coefficient requested outside the truncation profile: " +
                          format_key(key, profile_));
  }
  if (!reliable(key)) {
    throw MaskedKey("coefficient of " + format_key(key, profile_) + " is masked");
  }
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Series::add_term(const ExponentKey& key, const Rational& c) {
  if (sgn(c) == 0 || !profile_.contains(key)) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Series::add_constraint(const LinearConstraint& c) {
  if (std::find(mask_.begin(), mask_.end(), c) == mask_.end()) mask_.push_back(c);
}

Series Series::restricted(const TruncationProfile& smaller) const {
  if (!smaller.same_variables(profile_)) {
    throw ProfileMismatch("restricted: variable names differ");
  }
  Series out(smaller);
  for (const auto& [key, c] : terms_) {
    if (smaller.contains(key)) out.terms_.emplace_hint(out.terms_.end(), key, c);
  }
  out.mask_ = mask_;
  return out;
}

Series& Series::operator+=(const Series& o) {
  require_same_profile(*this, o, "add");
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  for (const auto& c : o.mask_) add_constraint(c);
  return *this;
}

Series& Series::operator-=(const Series& o) {
  require_same_profile(*this, o, "subtract");
  for (const auto& [key, c] : o.terms_) add_term(key, -c);
  for (const auto& c : o.mask_) add_constraint(c);
  return *this;
}

Series& Series::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  require_same_profile(a, b, "mul");
  require_unmasked(a, "mul");
  require_unmasked(b, "mul");
  const TruncationProfile& p = a.profile();
  Series out(p);
  Rational tmp;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      // Terms are ordered by q first.
      if (ka.q + kb.q > p.q_max) break;
      ExponentKey k = ka + kb;
      if (!p.contains(k)) continue;
      tmp = ca * cb;
      auto [it, inserted] = out.terms_.try_emplace(k, tmp);
      if (!inserted) it->second += tmp;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

// ---------------------------------------------------------------------------
// Expansions

bool admissible(const ExponentKey& m) {
  if (m.q < 0 || m.z < 0) return false;
  if (m.q >= 1) return true;
  bool positive = m.z > 0;
  for (int e : m.t) {
    if (e < 0) return false;
    if (e > 0) positive = true;
  }
  return positive;
}

Series inverse_geometric(const ExponentKey& m, const TruncationProfile& profile,
                         const Rational& c) {
  if (!admissible(m)) {
    throw InadmissibleExpansion("1/(1 - " + format_key(m, profile) +
                                ") has no expansion in the |q| < 1, |t| < 1 direction");
  }
  Series out(profile);
  ExponentKey power{};
  Rational coeff = 1;
  // Exponents move monotonically away from zero, so the first power that
  // leaves the profile ends the sum.
  while (profile.contains(power)) {
    out.add_term(power, coeff);
    power += m;
    coeff *= c;
  }
  return out;
}

Series pochhammer_inf(const ExponentKey& a, int sign, int step, const TruncationProfile& profile) {
  if (sign != 1 && sign != -1) throw SeriesError("pochhammer_inf: sign must be +1 or -1");
  if (step < 1) throw SeriesError("pochhammer_inf: step must be >= 1");
  if (!admissible(a)) {
    throw InadmissibleExpansion("pochhammer_inf: base " + format_key(a, profile) +
                                " does not stabilise coefficientwise");
  }
  Series out = Series::constant(profile, 1);
  const Rational c(sign);
  for (ExponentKey m = a; m.q <= profile.q_max; m.q += step) {
    if (!profile.contains(m)) {
      // A factor outside the window contributes nothing; later factors only
      // raise the q-degree further.
      continue;
    }
    out = times_binomial(out, m, c);
  }
  return out;
}

Series inverse(const Series& s) {
  require_unmasked(s, "inverse");
  const TruncationProfile& p = s.profile();
  auto it0 = s.terms().find(ExponentKey{});
  if (it0 == s.terms().end()) {
    throw SeriesError("inverse: series has zero constant term");
  }
  const Rational c0 = it0->second;

  std::vector<std::pair<ExponentKey, Rational>> rest;
  for (const auto& [key, c] : s.terms()) {
    if (key.is_zero()) continue;
    if (!admissible(key)) {
      throw InadmissibleExpansion("inverse: monomial " + format_key(key, p) +
                                  " has no convergent expansion direction");
    }
    rest.emplace_back(key, c);
  }

  // Every admissible monomial has positive weight, so solving in order of
  // weight only ever reads keys that are already final.
  long wq = 1;
  for (const auto& v : p.t_vars) wq += v.band;
  auto weight = [wq](const ExponentKey& k) {
    long w = static_cast<long>(k.q) * wq + k.z;
    for (int e : k.t) w += e;
    return w;
  };

  std::set<ExponentKey> reachable{ExponentKey{}};
  std::vector<ExponentKey> frontier{ExponentKey{}};
  while (!frontier.empty()) {
    std::vector<ExponentKey> next;
    for (const auto& r : frontier) {
      for (const auto& [g, c] : rest) {
        ExponentKey k = r + g;
        if (p.contains(k) && reachable.insert(k).second) next.push_back(k);
      }
    }
    frontier = std::move(next);
  }
  std::vector<ExponentKey> order(reachable.begin(), reachable.end());
  std::stable_sort(order.begin(), order.end(), [&](const ExponentKey& a, const ExponentKey& b) {
    return weight(a) < weight(b);
  });

  Series out(p);
  std::map<ExponentKey, Rational> h;
  const Rational inv_c0 = 1 / c0;
  Rational acc;
  for (const auto& k : order) {
    acc = k.is_zero() ? Rational(1) : Rational(0);
    for (const auto& [g, c] : rest) {
      auto it = h.find(k - g);
      if (it != h.end()) acc -= c * it->second;
    }
    if (sgn(acc) != 0) h.emplace(k, acc * inv_c0);
  }
  for (const auto& [k, c] : h) out.add_term(k, c);
  return out;
}

Series subst_qshift(const Series& s, std::string_view var, int a) {
  const TruncationProfile& p = s.profile();
  const std::size_t idx = p.index_of(var);
  if (a == 0) return s;
  Series out(p);
  for (const auto& [key, c] : s.terms()) {
    ExponentKey k = key;
    k.q += a * key.t[idx];
    out.add_term(k, c);
  }
  for (LinearConstraint c : s.mask()) {
    c.coeff[idx] += a;
    out.add_constraint(c);
  }
  LinearConstraint shift;
  shift.bound = p.q_max;
  shift.coeff[idx] = a;
  out.add_constraint(shift);
  return out;
}

Series euler_derivative(const Series& s, std::string_view var) {
  const std::size_t idx = s.profile().index_of(var);
  Series out(s.profile());
  for (const auto& [key, c] : s.terms()) {
    if (key.t[idx] != 0) out.add_term(key, c * key.t[idx]);
  }
  for (const auto& c : s.mask()) out.add_constraint(c);
  return out;
}

Series log_derivative(std::span<const SignedFactor> factors, std::string_view var) {
  if (factors.empty()) throw SeriesError("log_derivative: no factors");
  const TruncationProfile& p = factors.front().factor.profile();
  Series out(p);
  for (const auto& [sign, f] : factors) {
    if (sign != 1 && sign != -1) throw SeriesError("log_derivative: sign must be +1 or -1");
    if (f.profile() != p) throw ProfileMismatch("log_derivative: factors differ in profile");
    require_unmasked(f, "log_derivative");
    Series term = euler_derivative(f, var) * inverse(f);
    if (sign > 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  return out;
}

Series reflect(const Series& s, std::string_view var) {
  const std::size_t idx = s.profile().index_of(var);
  Series out(s.profile());
  for (const auto& [key, c] : s.terms()) {
    ExponentKey k = key;
    k.t[idx] = -k.t[idx];
    out.add_term(k, c);
  }
  for (LinearConstraint c : s.mask()) {
    c.coeff[idx] = -c.coeff[idx];
    out.add_constraint(c);
  }
  return out;
}

Series permute_vars(const Series& s, std::span<const std::size_t> perm) {
  const TruncationProfile& p = s.profile();
  const std::size_t n = p.t_vars.size();
  if (perm.size() != n) throw SeriesError("permute_vars: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (std::size_t i : perm) {
    if (i >= n || seen[i]) throw SeriesError("permute_vars: not a permutation");
    seen[i] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p.t_vars[i].band != p.t_vars[perm[i]].band) {
      throw ProfileMismatch("permute_vars: bands differ between permuted slots");
    }
  }
  auto move = [&](const std::array<int, kMaxTVars>& src) {
    std::array<int, kMaxTVars> dst{};
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[perm[i]];
    return dst;
  };
  Series out(p);
  for (const auto& [key, c] : s.terms()) {
    ExponentKey k = key;
    k.t = move(key.t);
    out.add_term(k, c);
  }
  for (LinearConstraint c : s.mask()) {
    c.coeff = move(c.coeff);
    out.add_constraint(c);
  }
  return out;
}

Series substitute_z(const Series& s, const Rational& value) {
  Series out(s.profile().with_z_max(0));
  for (const auto& [key, c] : s.terms()) {
    Rational v = c;
    for (int i = 0; i < key.z; ++i) v *= value;
    ExponentKey k = key;
    k.z = 0;
    out.add_term(k, v);
  }
  for (const auto& c : s.mask()) out.add_constraint(c);
  return out;
}

// ---------------------------------------------------------------------------
// Correction constants

Series correction_minus(std::string_view var, const TruncationProfile& profile) {
  const std::size_t idx = profile.index_of(var);
  Series out(profile);
  ExponentKey k{};
  out.add_term(k, Rational(-1, 2));
  for (int j = 1; j <= profile.t_vars[idx].band; ++j) {
    k.t[idx] = j;
    out.add_term(k, -1);
  }
  return out;
}

Series correction_plus(std::string_view var, const TruncationProfile& profile) {
  const std::size_t idx = profile.index_of(var);
  Series out(profile);
  ExponentKey k{};
  out.add_term(k, Rational(1, 2));
  for (int j = 1; j <= profile.t_vars[idx].band; ++j) {
    k.t[idx] = -j;
    out.add_term(k, 1);
  }
  return out;
}

Series correction_ns_minus(std::string_view var, const TruncationProfile& profile) {
  const std::size_t idx = profile.index_of(var);
  Series out(profile);
  ExponentKey k{};
  for (int j = 1; j <= profile.t_vars[idx].band; j += 2) {
    k.t[idx] = j;
    out.add_term(k, -1);
  }
  return out;
}

Series correction_ns_plus(std::string_view var, const TruncationProfile& profile) {
  const std::size_t idx = profile.index_of(var);
  Series out(profile);
  ExponentKey k{};
  for (int j = 1; j <= profile.t_vars[idx].band; j += 2) {
    k.t[idx] = -j;
    out.add_term(k, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison and printing

CheckReport eq_on_window(const Series& a, const Series& b, const TruncationProfile& window,
                         std::string identity) {
  if (!window.within(a.profile()) || !window.within(b.profile())) {
    throw ProfileMismatch("eq_on_window: window exceeds an operand's profile");
  }
  CheckReport report;
  report.identity = std::move(identity);
  report.param(window.base + "-order", std::to_string(window.q_max));
  for (const auto& v : window.t_vars) report.param(v.name + "-band", std::to_string(v.band));
  if (window.z_max > 0) report.param("z-order", std::to_string(window.z_max));

  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  const auto ea = a.terms().end();
  const auto eb = b.terms().end();
  const Rational zero(0);
  while (ia != ea || ib != eb) {
    const ExponentKey* key;
    const Rational* va = &zero;
    const Rational* vb = &zero;
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      key = &ia->first;
      va = &ia->second;
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      key = &ib->first;
      vb = &ib->second;
      ++ib;
    } else {
      key = &ia->first;
      va = &ia->second;
      vb = &ib->second;
      ++ia;
      ++ib;
    }
    if (!window.contains(*key) || !a.reliable(*key) || !b.reliable(*key)) continue;
    ++report.compared;
    if (*va != *vb) {
      report.pass = false;
      report.mismatch = Mismatch{format_key(*key, window), va->get_str(), vb->get_str()};
      return report;
    }
  }
  report.pass = true;
  return report;
}

std::string format_key(const ExponentKey& key, const TruncationProfile& profile) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const std::string& name, int e) {
    if (e == 0) return;
    if (!first) os << '*';
    first = false;
    os << name;
    if (e != 1) os << '^' << e;
  };
  emit(profile.base, key.q);
  for (std::size_t i = 0; i < kMaxTVars; ++i) {
    std::string name = i < profile.t_vars.size() ? profile.t_vars[i].name
                                                 : "t?" + std::to_string(i);
    emit(name, key.t[i]);
  }
  emit("z", key.z);
  if (first) os << '1';
  return os.str();
}

}  // namespace twfock
