#include "twfock/correlators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace twfock {

namespace {

// Allowed parts are first, first + stride, ... : 1,2,3,... or 1,3,5,...
int part_stride(PartitionKind kind) { return kind == PartitionKind::Strict ? 1 : 2; }

ExponentKey qz_key(int q, int z = 0) {
  ExponentKey k;
  k.q = q;
  k.z = z;
  return k;
}

ExponentKey qtz_key(int q, std::size_t slot, int t, int z = 0) {
  ExponentKey k = qz_key(q, z);
  k.t[slot] = t;
  return k;
}

void require_cutoff(int max_weight, const TruncationProfile& profile) {
  if (max_weight < profile.q_max) {
    throw std::invalid_argument("weight cutoff " + std::to_string(max_weight) +
                                " is below the q-order " + std::to_string(profile.q_max));
  }
}

void add_eigen_products(Series& out, std::span<const int> parts, std::size_t slot,
                        std::size_t arity, ExponentKey& key, int sign,
                        const TruncationProfile& profile) {
  if (slot == arity) {
    out.add_term(key, sign);
    return;
  }
  const int band = profile.t_vars[slot].band;
  for (int p : parts) {
    if (p > band) continue;
    key.t[slot] = p;
    add_eigen_products(out, parts, slot + 1, arity, key, sign, profile);
    key.t[slot] = -p;
    add_eigen_products(out, parts, slot + 1, arity, key, -sign, profile);
  }
  key.t[slot] = 0;
}

// sum_lambda qb^|lambda| [z^len] prod_i F(lambda; t_i)
Series partition_sum(PartitionKind kind, const TruncationProfile& profile, int max_weight,
                     bool z_weighted) {
  if (max_weight < 0) max_weight = profile.q_max;
  require_cutoff(max_weight, profile);
  Series out(profile);
  const std::size_t arity = profile.t_vars.size();
  for (const Partition& lambda : PartitionStream(kind, profile.q_max)) {
    if (lambda.empty()) continue;
    if (z_weighted && lambda.length() > profile.z_max) continue;
    ExponentKey key = qz_key(lambda.weight(), z_weighted ? lambda.length() : 0);
    add_eigen_products(out, lambda.parts(), 0, arity, key, 1, profile);
  }
  return out;
}

Series correction(PartitionKind kind, Convention convention, const TruncationProfile& profile) {
  const std::string var = profile.t_vars.front().name;
  if (kind == PartitionKind::Strict) {
    return convention == Convention::Minus ? correction_minus(var, profile)
                                           : correction_plus(var, profile);
  }
  return convention == Convention::Minus ? correction_ns_minus(var, profile)
                                         : correction_ns_plus(var, profile);
}

// 1 / ((1 - qb^s)(1 - qb^{2s}) ... (1 - qb^{ks}))
Series inverse_q_factorial(int k, int s, const TruncationProfile& profile) {
  Series out = Series::constant(profile, 1);
  for (int i = 1; i <= k; ++i) out = out * inverse_geometric(qz_key(i * s), profile);
  return out;
}

// First-row sum with t -> qb^k t: 1 + sum_n prod_{i<n}(1 + qb^{p_i}) qb^{p_n} (qb^k t)^{p_n}
// where p_1 < p_2 < ... run over the allowed parts.
Series first_row_closed_form(PartitionKind kind, int k, const TruncationProfile& profile) {
  const std::size_t slot = 0;
  Series out = Series::constant(profile, 1);
  Series running = Series::constant(profile, 1);
  const int stride = part_stride(kind);
  for (int p = 1; p * (1 + k) <= profile.q_max; p += stride) {
    out += times_monomial(running, qtz_key(p * (1 + k), slot, p));
    running = running + times_monomial(running, qz_key(p));
  }
  return out;
}

CheckReport compare(const SeriesPair& pair, const TruncationProfile& window, std::string identity,
                    PartitionKind kind) {
  CheckReport r = eq_on_window(pair.lhs, pair.rhs, window, std::move(identity));
  r.params.insert(r.params.begin(), {"kind", std::string(to_string(kind))});
  return r;
}

// Fold several reports of the same identity into one: the first failure wins.
CheckReport merge(std::vector<CheckReport> parts, std::string identity) {
  CheckReport out;
  out.identity = std::move(identity);
  out.pass = true;
  for (auto& r : parts) {
    out.compared += r.compared;
    if (!r.pass && out.pass) {
      out.pass = false;
      out.mismatch = r.mismatch;
      out.note = r.identity;
    }
  }
  if (!parts.empty()) out.params = parts.front().params;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string base_name(PartitionKind kind) { return kind == PartitionKind::Strict ? "q" : "qh"; }

std::string var_name(PartitionKind kind) { return kind == PartitionKind::Strict ? "t" : "th"; }

std::string var_name(PartitionKind kind, int slot, int arity) {
  if (arity == 1) return var_name(kind);
  return var_name(kind) + std::to_string(slot + 1);
}

TruncationProfile onepoint_profile(PartitionKind kind, int q_order, int band, int z_order) {
  return make_profile(base_name(kind), q_order, var_name(kind), band, z_order);
}

TruncationProfile npoint_profile(PartitionKind kind, int arity, int q_order, int band) {
  if (arity < 1 || static_cast<std::size_t>(arity) > kMaxTVars) {
    throw std::invalid_argument("arity must lie in [1, " + std::to_string(kMaxTVars) + "]");
  }
  if (q_order < 0 || band < 0) throw std::invalid_argument("orders must be >= 0");
  TruncationProfile p;
  p.base = base_name(kind);
  p.q_max = q_order;
  for (int i = 0; i < arity; ++i) p.t_vars.push_back({var_name(kind, i, arity), band});
  return p;
}

Series partition_generating_function(PartitionKind kind, const TruncationProfile& profile,
                                     bool z_weighted) {
  return pochhammer_inf(qz_key(1, z_weighted ? 1 : 0), 1, part_stride(kind), profile);
}

Series times_monomial(const Series& s, const ExponentKey& m, const Rational& c) {
  if (s.masked()) throw MaskedOperation("times_monomial: operand is masked");
  Series out(s.profile());
  for (const auto& [key, v] : s.terms()) out.add_term(key + m, v * c);
  return out;
}

Series expectation(PartitionKind kind, const std::function<Series(const Partition&)>& f,
                   int max_weight, const TruncationProfile& profile) {
  require_cutoff(max_weight, profile);
  Series sum(profile);
  for (const Partition& lambda : PartitionStream(kind, profile.q_max)) {
    sum += times_monomial(f(lambda), qz_key(lambda.weight()));
  }
  return sum * inverse(partition_generating_function(kind, profile));
}

Series normal_ordered_npoint(PartitionKind kind, const TruncationProfile& profile,
                             int max_weight) {
  if (profile.t_vars.empty()) throw std::invalid_argument("normal_ordered_npoint: no t-variables");
  return partition_sum(kind, profile, max_weight, false);
}

Series corrected_onepoint(PartitionKind kind, Convention convention,
                          const TruncationProfile& profile, bool z_weighted, int max_weight) {
  if (profile.t_vars.size() != 1) {
    throw std::invalid_argument("corrected series are built for one t-variable only");
  }
  Series out = partition_sum(kind, profile, max_weight, z_weighted);
  out += partition_generating_function(kind, profile, z_weighted) *
         correction(kind, convention, profile);
  return out;
}

Series build(const CorrelatorSpec& spec, const TruncationProfile& profile) {
  if (spec.arity < 1) throw std::invalid_argument("arity must be >= 1");
  if (static_cast<std::size_t>(spec.arity) != profile.t_vars.size()) {
    throw ProfileMismatch("profile does not have one t-variable per argument");
  }
  if (spec.normal_ordered) {
    if (spec.z_weighted) return partition_sum(spec.kind, profile, -1, true);
    return normal_ordered_npoint(spec.kind, profile);
  }
  if (spec.arity != 1) {
    throw std::invalid_argument("corrected exact series exist only for one argument");
  }
  return corrected_onepoint(spec.kind, spec.correction, profile, spec.z_weighted);
}

SeriesPair lemma_row_sums(PartitionKind kind, int k, const TruncationProfile& profile,
                          LemmaForm form) {
  if (k < 0) throw std::invalid_argument("lemma_row_sums: k must be >= 0");
  const std::size_t slot = 0;
  Series lhs(profile);
  for (const Partition& lambda : PartitionStream(kind, profile.q_max)) {
    if (lambda.length() < k) continue;
    lhs.add_term(qtz_key(lambda.weight(), slot, lambda.part(k + 1)), 1);
  }

  const int s = part_stride(kind);
  Series row = first_row_closed_form(kind, k, profile);
  if (form == LemmaForm::Corrected && kind == PartitionKind::OddStrict && k > 0) {
    // The empty remainder contributes qb^{-k} relative to the prefactor.
    row -= Series::constant(profile, 1);
    Series rhs = times_monomial(row, qz_key(s * k * (k + 1) / 2));
    rhs += Series::monomial(profile, qz_key(k * k));
    return {lhs, rhs * inverse_q_factorial(k, s, profile)};
  }
  Series rhs = times_monomial(row, qz_key(s * k * (k + 1) / 2)) * inverse_q_factorial(k, s, profile);
  return {lhs, rhs};
}

SeriesPair euler_identity(const TruncationProfile& profile) {
  TruncationProfile p = profile;
  p.t_vars.clear();
  Series lhs(p);
  Series denom = Series::constant(p, 1);
  for (int k = 0; k * (k + 1) / 2 <= p.q_max && k <= p.z_max; ++k) {
    if (k > 0) denom = denom * inverse_geometric(qz_key(k), p);
    lhs += times_monomial(denom, qz_key(k * (k + 1) / 2, k));
  }
  Series rhs = pochhammer_inf(qz_key(1, 1), 1, 1, p);
  return {lhs, rhs};
}

SeriesPair regularized_expectation_identity(PartitionKind kind, bool z_weighted,
                                            const TruncationProfile& profile) {
  const std::size_t slot = 0;
  Series lhs(profile);
  for (const Partition& lambda : PartitionStream(kind, profile.q_max)) {
    const int z = z_weighted ? lambda.length() : 0;
    for (int p : lambda.parts()) {
      lhs.add_term(qtz_key(lambda.weight(), slot, p, z), 1);
      lhs.add_term(qz_key(lambda.weight(), z), -1);
    }
  }
  const int zexp = z_weighted ? 1 : 0;
  Series sum(profile);
  for (int p = 1; p <= profile.q_max; p += part_stride(kind)) {
    Series geo = inverse_geometric(qz_key(p, zexp), profile, -1);
    sum += times_monomial(geo, qtz_key(p, slot, p, zexp));
    sum -= times_monomial(geo, qz_key(p, zexp));
  }
  return {lhs, partition_generating_function(kind, profile, z_weighted) * sum};
}

SeriesPair length_moment_identity(PartitionKind kind, bool z_weighted,
                                  const TruncationProfile& profile) {
  Series lhs(profile);
  for (const Partition& lambda : PartitionStream(kind, profile.q_max)) {
    lhs.add_term(qz_key(lambda.weight(), z_weighted ? lambda.length() : 0), lambda.length());
  }
  const int zexp = z_weighted ? 1 : 0;
  Series sum(profile);
  for (int p = 1; p <= profile.q_max; p += part_stride(kind)) {
    sum += times_monomial(inverse_geometric(qz_key(p, zexp), profile, -1), qz_key(p, zexp));
  }
  return {lhs, partition_generating_function(kind, profile, z_weighted) * sum};
}

Series closed_form_onepoint(PartitionKind kind, const TruncationProfile& profile) {
  const std::size_t slot = 0;
  Series sum(profile);
  for (int p = 1; p <= profile.q_max; p += part_stride(kind)) {
    Series geo = inverse_geometric(qz_key(p), profile, -1);
    sum += times_monomial(geo, qtz_key(p, slot, p));
    sum -= times_monomial(geo, qtz_key(p, slot, -p));
  }
  return partition_generating_function(kind, profile) * sum;
}

SeriesPair lambert_swap(PartitionKind kind, const TruncationProfile& profile) {
  const std::size_t slot = 0;
  const int stride = part_stride(kind);
  Series lhs(profile);
  for (int p = 1; p <= profile.q_max; p += stride) {
    lhs += times_monomial(inverse_geometric(qz_key(p), profile, -1), qtz_key(p, slot, p));
  }
  Series rhs(profile);
  for (int r = 0; r + 1 <= profile.q_max; ++r) {
    const Rational sign = r % 2 == 0 ? 1 : -1;
    // Strict: 1/(1 - q^{r+1} t).  Odd strict: 1/(1 - qh^{2r+2} th^2).
    Series geo = inverse_geometric(qtz_key(stride * (r + 1), slot, stride), profile);
    rhs += times_monomial(geo, qtz_key(r + 1, slot, 1), sign);
  }
  return {lhs, rhs};
}

Series theta_logderiv_form(PartitionKind kind, const TruncationProfile& profile) {
  const std::string var = profile.t_vars.front().name;
  const std::size_t slot = 0;
  auto poch = [&](int q, int t, int sign) {
    return pochhammer_inf(qtz_key(q, slot, t), sign, 2, profile);
  };
  if (kind == PartitionKind::Strict) {
    const std::vector<SignedFactor> factors{
        {1, poch(0, 1, -1)},
        {1, poch(2, -1, -1)},
        {-1, poch(1, 1, -1)},
        {-1, poch(1, -1, -1)},
    };
    Series inner = log_derivative(factors, var) + Series::constant(profile, Rational(-1, 2));
    return partition_generating_function(kind, profile) * inner;
  }
  // Ratio of the two theta quotients at th and -th; the prefactors cancel.
  const std::vector<SignedFactor> factors{
      {1, poch(0, 1, -1)},  {1, poch(2, -1, -1)},  {-1, poch(1, 1, -1)}, {-1, poch(1, -1, -1)},
      {-1, poch(0, 1, 1)},  {-1, poch(2, -1, 1)},  {1, poch(1, 1, 1)},   {1, poch(1, -1, 1)},
  };
  Series inner = log_derivative(factors, var) * Rational(1, 2);
  return partition_generating_function(kind, profile) * inner;
}

SeriesPair rminus_closed_form(const TruncationProfile& profile) {
  const TruncationProfile p = profile.with_z_max(0);
  const TruncationProfile pz = p.with_z_max(std::max(1, max_length(PartitionKind::Strict, p.q_max)));
  Series lhs =
      substitute_z(corrected_onepoint(PartitionKind::Strict, Convention::Minus, pz, true), -1);

  const std::string var = p.t_vars.front().name;
  const std::size_t slot = 0;
  const std::vector<SignedFactor> factors{
      {1, pochhammer_inf(qtz_key(0, slot, 1), -1, 1, p)},
      {1, pochhammer_inf(qtz_key(1, slot, -1), -1, 1, p)},
  };
  Series inner = log_derivative(factors, var) + Series::constant(p, Rational(-1, 2));
  Series rhs = pochhammer_inf(qz_key(1), -1, 1, p) * inner;
  return {lhs, rhs};
}

SeriesPair super_closed_form(const TruncationProfile& profile) {
  if (profile.z_max < 1) throw std::invalid_argument("super_closed_form: z-order must be >= 1");
  Series lhs = corrected_onepoint(PartitionKind::Strict, Convention::Minus, profile, true);
  const std::size_t slot = 0;
  Series sum = correction_minus(profile.t_vars.front().name, profile);
  for (int n = 1; n <= profile.q_max; ++n) {
    Series geo = inverse_geometric(qz_key(n, 1), profile, -1);
    sum += times_monomial(geo, qtz_key(n, slot, n, 1));
    sum -= times_monomial(geo, qtz_key(n, slot, -n, 1));
  }
  Series rhs = partition_generating_function(PartitionKind::Strict, profile, true) * sum;
  return {lhs, rhs};
}

CheckReport quasi_periodicity_exact(PartitionKind kind, int q_order, int band) {
  // A window monomial qb^e t^j with j >= -band comes from qb^{e-j} t^j.
  const TruncationProfile big = onepoint_profile(kind, q_order + band, band);
  const std::string var = var_name(kind);
  Series minus = corrected_onepoint(kind, Convention::Minus, big);
  Series plus = corrected_onepoint(kind, Convention::Plus, big);
  return compare({subst_qshift(minus, var, 1), -plus}, onepoint_profile(kind, q_order, band),
                 "quasi-periodicity-exact", kind);
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& series_target_names() {
  static const std::vector<std::string> names{
      "nr",        "ns",        "r-minus-conv",     "r-plus-conv",      "s-minus-conv",
      "s-plus-conv", "r-super", "closed-r",         "closed-s",         "theta-logderiv-r",
      "theta-logderiv-s", "euler-lhs", "euler-rhs",
  };
  return names;
}

Series series_target(const std::string& name, int q_order, int band, int z_order) {
  const auto sp = PartitionKind::Strict;
  const auto osp = PartitionKind::OddStrict;
  auto prof = [&](PartitionKind k) { return onepoint_profile(k, q_order, band); };
  if (name == "nr") return normal_ordered_npoint(sp, prof(sp));
  if (name == "ns") return normal_ordered_npoint(osp, prof(osp));
  if (name == "r-minus-conv") return corrected_onepoint(sp, Convention::Minus, prof(sp));
  if (name == "r-plus-conv") return corrected_onepoint(sp, Convention::Plus, prof(sp));
  if (name == "s-minus-conv") return corrected_onepoint(osp, Convention::Minus, prof(osp));
  if (name == "s-plus-conv") return corrected_onepoint(osp, Convention::Plus, prof(osp));
  if (name == "r-super") {
    return corrected_onepoint(sp, Convention::Minus, onepoint_profile(sp, q_order, band, z_order),
                              true);
  }
  if (name == "closed-r") return closed_form_onepoint(sp, prof(sp));
  if (name == "closed-s") return closed_form_onepoint(osp, prof(osp));
  if (name == "theta-logderiv-r") return theta_logderiv_form(sp, prof(sp));
  if (name == "theta-logderiv-s") return theta_logderiv_form(osp, prof(osp));
  if (name == "euler-lhs" || name == "euler-rhs") {
    SeriesPair e = euler_identity(TruncationProfile{"q", q_order, {}, z_order});
    return name == "euler-lhs" ? e.lhs : e.rhs;
  }
  throw std::invalid_argument("unknown series target '" + name + "'");
}

// ---------------------------------------------------------------------------

CheckReport check_partition_counts(PartitionKind kind, int max_weight) {
  const TruncationProfile p{base_name(kind), max_weight, {}, 0};
  Series counted(p);
  const auto counts = count_table(kind, max_weight);
  for (std::size_t n = 0; n < counts.size(); ++n) {
    counted.add_term(qz_key(static_cast<int>(n)), Rational(static_cast<unsigned long>(counts[n])));
  }
  return compare({counted, partition_generating_function(kind, p)}, p, "partition-counts", kind);
}

CheckReport check_euler(int q_order, int z_order) {
  const TruncationProfile p{"q", q_order, {}, z_order};
  const SeriesPair e = euler_identity(p);
  return eq_on_window(e.lhs, e.rhs, p, "euler-product");
}

CheckReport check_lemma(PartitionKind kind, int k, int q_order, LemmaForm form) {
  const TruncationProfile p = onepoint_profile(kind, q_order, q_order);
  CheckReport r = compare(lemma_row_sums(kind, k, p, form), p,
                          form == LemmaForm::Uncorrected ? "row-sum-lemma" : "row-sum-lemma-corrected",
                          kind);
  r.params.insert(r.params.begin() + 1, {"k", std::to_string(k)});
  return r;
}

CheckReport check_regularized(PartitionKind kind, bool z_weighted, int q_order, int z_order) {
  const TruncationProfile p = onepoint_profile(kind, q_order, q_order, z_weighted ? z_order : 0);
  return compare(regularized_expectation_identity(kind, z_weighted, p), p,
                 z_weighted ? "first-form-subtracted-z" : "first-form-subtracted", kind);
}

CheckReport check_length_moment(PartitionKind kind, bool z_weighted, int q_order, int z_order) {
  const TruncationProfile p = onepoint_profile(kind, q_order, 0, z_weighted ? z_order : 0);
  return compare(length_moment_identity(kind, z_weighted, p), p,
                 z_weighted ? "length-moment-z" : "length-moment", kind);
}

CheckReport check_closed_form(PartitionKind kind, int q_order, int band) {
  const TruncationProfile p = onepoint_profile(kind, q_order, band);
  return compare({normal_ordered_npoint(kind, p), closed_form_onepoint(kind, p)}, p,
                 "normal-ordered-closed-form", kind);
}

CheckReport check_lambert(PartitionKind kind, int q_order, int band) {
  const TruncationProfile p = onepoint_profile(kind, q_order, band);
  return compare(lambert_swap(kind, p), p, "lambert-swap", kind);
}

CheckReport check_theta_form(PartitionKind kind, int q_order, int band) {
  const TruncationProfile p = onepoint_profile(kind, q_order, band);
  return compare({corrected_onepoint(kind, Convention::Minus, p), theta_logderiv_form(kind, p)}, p,
                 "theta-logderiv", kind);
}

CheckReport check_rminus(int q_order, int band) {
  const TruncationProfile p = onepoint_profile(PartitionKind::Strict, q_order, band);
  return compare(rminus_closed_form(p), p, "signed-length-closed-form", PartitionKind::Strict);
}

CheckReport check_super(int q_order, int band, int z_order) {
  const TruncationProfile p = onepoint_profile(PartitionKind::Strict, q_order, band, z_order);
  return compare(super_closed_form(p), p, "z-graded-closed-form", PartitionKind::Strict);
}

CheckReport check_antisymmetry(PartitionKind kind, int arity, int q_order) {
  const TruncationProfile p = npoint_profile(kind, arity, q_order, q_order);
  const Series s = normal_ordered_npoint(kind, p);
  std::vector<CheckReport> parts;
  for (int i = 0; i < arity; ++i) {
    parts.push_back(eq_on_window(reflect(s, var_name(kind, i, arity)), -s, p,
                                 "reflect " + var_name(kind, i, arity)));
  }
  CheckReport r = merge(std::move(parts), "antisymmetry");
  r.params.insert(r.params.begin(), {"kind", std::string(to_string(kind))});
  r.params.insert(r.params.begin() + 1, {"n", std::to_string(arity)});
  return r;
}

CheckReport check_slot_symmetry(PartitionKind kind, int arity, int q_order) {
  const TruncationProfile p = npoint_profile(kind, arity, q_order, q_order);
  const Series s = normal_ordered_npoint(kind, p);
  std::vector<CheckReport> parts;
  for (int i = 1; i < arity; ++i) {
    std::vector<std::size_t> perm(static_cast<std::size_t>(arity));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::swap(perm[0], perm[static_cast<std::size_t>(i)]);
    parts.push_back(eq_on_window(permute_vars(s, perm), s, p, "swap slots 1," + std::to_string(i + 1)));
  }
  CheckReport r = merge(std::move(parts), "slot-symmetry");
  r.params.insert(r.params.begin(), {"kind", std::string(to_string(kind))});
  r.params.insert(r.params.begin() + 1, {"n", std::to_string(arity)});
  if (arity == 1) r.pass = true;
  return r;
}

}  // namespace twfock
