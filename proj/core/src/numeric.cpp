#include "twfock/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "twfock/correlators.hpp"
#include "twfock/partitions.hpp"

namespace twfock {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Complex ipow(Complex base, int e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  Complex out = 1.0;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

double spread(Complex t) {
  const double a = std::abs(t);
  return std::max(a, 1.0 / a);
}

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NumericError(std::string(what) + ": non-finite result");
  }
}

// Annulus and pole guard in full variables.
void check_annulus(Complex q, Complex t, double guard, const std::string& label) {
  const double aq = std::abs(q);
  const double at = std::abs(t);
  if (aq >= 1) throw NumericError("|q| must be < 1");
  if (at < aq + guard || (aq > 0 && at > 1 / aq - guard)) {
    throw NumericError(label + "=" + format_complex(t) + " lies outside the annulus |q|+" +
                       fmt(guard) + " <= |t| <= 1/|q|-" + fmt(guard));
  }
  if (std::abs(t - 1.0) < guard) {
    throw NumericError(label + "=" + format_complex(t) + " is within " + fmt(guard) +
                       " of the pole at t = 1");
  }
}

struct SumPlan {
  PartitionKind kind;
  Complex qb;
  std::vector<Complex> tbs;
  std::vector<Complex> corrections;
  bool signed_length = false;
  int cutoff = 0;      // base units
  int max_cutoff = 0;  // base units
  int window = 4;      // shells per tail estimate
  int units = 1;       // base units per q unit
  double tail_tol = 0;
};

double tail_estimate(const std::vector<double>& shell_abs, const std::vector<double>& counts,
                     int w, int window, double ratio) {
  if (ratio == 0) return 0;
  double last = 0;
  double recent = 0;
  double before = 0;
  for (int i = 0; i < window; ++i) {
    const int a = w - i;
    const int b = w - window - i;
    if (a >= 0) {
      last = std::max(last, shell_abs[static_cast<std::size_t>(a)]);
      recent += counts[static_cast<std::size_t>(a)];
    }
    if (b >= 0) before += counts[static_cast<std::size_t>(b)];
  }
  // Partition counts grow subexponentially; fold their local growth into
  // the geometric ratio.
  const double growth = std::pow((recent + 1) / (before + 1), 1.0 / window);
  const double r = ratio * std::max(1.0, growth);
  if (r >= 1) return kInf;
  return last * r / (1 - r);
}

EvalResult sum_partitions(const SumPlan& plan) {
  const int wmax = std::max(plan.cutoff, plan.max_cutoff);
  const std::size_t n = plan.tbs.size();
  const auto span = static_cast<std::size_t>(wmax + 1);

  std::vector<std::vector<Complex>> pos(n, std::vector<Complex>(span));
  std::vector<std::vector<Complex>> neg(n, std::vector<Complex>(span));
  for (std::size_t i = 0; i < n; ++i) {
    const Complex inv = 1.0 / plan.tbs[i];
    pos[i][0] = neg[i][0] = 1.0;
    for (std::size_t p = 1; p < span; ++p) {
      pos[i][p] = pos[i][p - 1] * plan.tbs[i];
      neg[i][p] = neg[i][p - 1] * inv;
    }
  }
  std::vector<Complex> qpow(span);
  qpow[0] = 1.0;
  for (std::size_t w = 1; w < span; ++w) qpow[w] = qpow[w - 1] * plan.qb;

  double ratio = std::abs(plan.qb);
  for (const Complex& t : plan.tbs) ratio *= spread(t);

  std::vector<double> shell_abs(span, 0.0);
  std::vector<double> counts(span, 0.0);
  Complex total = 0.0;
  int current = 0;
  EvalResult result;

  // Called once every partition of weight <= w has been summed.
  auto finished = [&](int w) {
    if (w < plan.cutoff) return false;
    const double tail = tail_estimate(shell_abs, counts, w, plan.window, ratio);
    result.tail = tail;
    result.cutoff = (w + plan.units - 1) / plan.units;
    return tail <= plan.tail_tol || w >= wmax;
  };

  PartitionStream stream(plan.kind, wmax);
  bool stopped = false;
  while (stream.next()) {
    const Partition& lambda = stream.current();
    const int w = lambda.weight();
    for (; current < w; ++current) {
      if (finished(current)) {
        stopped = true;
        break;
      }
    }
    if (stopped) break;
    Complex term = qpow[static_cast<std::size_t>(w)];
    if (plan.signed_length && lambda.length() % 2 == 1) term = -term;
    for (std::size_t i = 0; i < n; ++i) {
      Complex eig = plan.corrections[i];
      for (int p : lambda.parts()) {
        eig += pos[i][static_cast<std::size_t>(p)] - neg[i][static_cast<std::size_t>(p)];
      }
      term *= eig;
    }
    total += term;
    shell_abs[static_cast<std::size_t>(w)] += std::abs(term);
    counts[static_cast<std::size_t>(w)] += 1;
  }
  if (!stopped) {
    for (; current <= wmax; ++current) {
      if (finished(current)) break;
    }
  }

  require_finite(total, "eval");
  result.value = total;
  if (result.tail > plan.tail_tol) {
    throw NumericError("tail estimate " + fmt(result.tail) + " exceeds tolerance " +
                       fmt(plan.tail_tol) + " at weight cutoff " + std::to_string(result.cutoff));
  }
  return result;
}

void check_config(const EvalConfig& cfg) {
  if (cfg.weight_cutoff < 1) throw NumericError("weight cutoff must be >= 1");
  if (!(cfg.tail_tol > 0) || !(cfg.annulus_guard > 0)) {
    throw NumericError("tolerances must be positive");
  }
}

int auto_theta_cutoff(Complex q, double t_spread, double tol) {
  const double aq = std::abs(q);
  for (int c = 1; c < 400; ++c) {
    const double n = c + 1.0;
    if (std::pow(aq, n * n) * std::pow(t_spread, n) < tol) return c;
  }
  throw NumericError("theta series does not converge at these parameters");
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(Correlator f) {
  switch (f) {
    case Correlator::R:
      return "R";
    case Correlator::S:
      return "S";
    case Correlator::RMinus:
      return "R-";
  }
  return "?";
}

Correlator parse_correlator(const std::string& name) {
  if (name == "R") return Correlator::R;
  if (name == "S") return Correlator::S;
  if (name == "R-" || name == "Rminus") return Correlator::RMinus;
  throw std::invalid_argument("unknown function '" + name + "'");
}

Complex correction_value(Complex t) { return (t + 1.0) / (2.0 * (t - 1.0)); }

Complex correction_ns_value(Complex th) { return th / (th * th - 1.0); }

EvalResult eval_correlator(Correlator f, Complex q, std::span<const Complex> ts,
                           const EvalConfig& cfg) {
  if (f == Correlator::S) {
    std::vector<Complex> ths;
    for (const Complex& t : ts) ths.push_back(std::sqrt(t));
    return eval_s_hat(std::sqrt(q), ths, cfg);
  }
  check_config(cfg);
  SumPlan plan;
  plan.kind = PartitionKind::Strict;
  plan.qb = q;
  plan.signed_length = f == Correlator::RMinus;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    check_annulus(q, ts[i], cfg.annulus_guard, "t" + std::to_string(i + 1));
    plan.tbs.push_back(ts[i]);
    plan.corrections.push_back(correction_value(ts[i]));
  }
  if (std::abs(q) >= 1) throw NumericError("|q| must be < 1");
  plan.cutoff = cfg.weight_cutoff;
  plan.max_cutoff = cfg.max_cutoff;
  plan.window = 4;
  plan.units = 1;
  plan.tail_tol = cfg.tail_tol;
  return sum_partitions(plan);
}

EvalResult eval_s_hat(Complex qh, std::span<const Complex> ths, const EvalConfig& cfg) {
  check_config(cfg);
  const Complex q = qh * qh;
  if (std::abs(q) >= 1) throw NumericError("|q| must be < 1");
  SumPlan plan;
  plan.kind = PartitionKind::OddStrict;
  plan.qb = qh;
  for (std::size_t i = 0; i < ths.size(); ++i) {
    check_annulus(q, ths[i] * ths[i], cfg.annulus_guard, "t" + std::to_string(i + 1));
    plan.tbs.push_back(ths[i]);
    plan.corrections.push_back(correction_ns_value(ths[i]));
  }
  plan.cutoff = 2 * cfg.weight_cutoff;
  plan.max_cutoff = 2 * cfg.max_cutoff;
  plan.window = 8;
  plan.units = 2;
  plan.tail_tol = cfg.tail_tol;
  return sum_partitions(plan);
}

// ---------------------------------------------------------------------------

Complex theta_log(int j, Complex q, Complex log_t, int cutoff, double tail_tol) {
  if (j != 0 && j != 1) throw std::invalid_argument("theta: j must be 0 or 1");
  if (cutoff < 0) throw std::invalid_argument("theta: cutoff must be >= 0");
  const double aq = std::abs(q);
  if (aq >= 1) throw NumericError("theta: |q| must be < 1");
  if (aq == 0) return j == 0 ? Complex(1.0) : Complex(0.0);
  const Complex log_q = std::log(q);
  const double half = j == 0 ? 0.0 : 0.5;
  const double t_spread = std::exp(std::abs(log_t.real()));
  const double first_omitted = cutoff + 1 + half;
  if (std::pow(aq, first_omitted * first_omitted) * std::pow(t_spread, first_omitted) > tail_tol) {
    throw NumericError("theta: cutoff " + std::to_string(cutoff) + " leaves a tail above " +
                       fmt(tail_tol));
  }
  Complex sum = 0.0;
  const int lo = j == 0 ? -cutoff : -cutoff - 1;
  for (int m = lo; m <= cutoff; ++m) {
    const double nv = m + half;
    sum += std::exp(nv * nv * log_q + nv * log_t);
  }
  require_finite(sum, "theta");
  return sum;
}

Complex theta(int j, Complex q, Complex t, int cutoff, double tail_tol) {
  if (t == 0.0) throw NumericError("theta: t must be non-zero");
  return theta_log(j, q, std::log(t), cutoff, tail_tol);
}

namespace {

Complex theta_ratio_log(Complex q, Complex log_minus_t, const EvalConfig& cfg) {
  const double t_spread = std::exp(std::abs(log_minus_t.real()));
  const int cutoff = auto_theta_cutoff(q, t_spread, cfg.tail_tol * 1e-3);
  const Complex num = theta_log(1, q, log_minus_t, cutoff, cfg.tail_tol);
  const Complex den = theta_log(0, q, log_minus_t, cutoff, cfg.tail_tol);
  if (std::abs(den) < cfg.annulus_guard * 1e-6) {
    throw NumericError("theta_{0,1}(q,-t) is numerically zero");
  }
  return num / den;
}

}  // namespace

Complex b_function(Complex q, Complex t, const EvalConfig& cfg, BRoute route) {
  const double aq = std::abs(q);
  if (aq == 0 || aq >= 1) throw NumericError("b_function: need 0 < |q| < 1");
  if (t == 0.0) throw NumericError("b_function: t must be non-zero");
  if (route == BRoute::Theta) return theta_ratio_log(q, std::log(-t), cfg);

  const Complex prefactor = std::exp(-0.5 * std::log(-std::exp(-0.5 * std::log(q)) * t));
  Complex value = prefactor;
  const double reach = spread(t);
  Complex q2i = 1.0;  // q^{2i}
  for (int i = 0; i < 10000; ++i) {
    const Complex q_odd = q2i * q;
    const Complex zero_a = 1.0 - t * q2i;
    const Complex zero_b = 1.0 - q2i * q * q / t;
    const Complex pole_a = 1.0 - q_odd * t;
    const Complex pole_b = 1.0 - q_odd / t;
    if (std::abs(pole_a) < cfg.annulus_guard || std::abs(pole_b) < cfg.annulus_guard) {
      throw NumericError("b_function: t is within the guard of a pole");
    }
    value *= zero_a * zero_b / (pole_a * pole_b);
    q2i *= q * q;
    if (std::abs(q2i) * reach < 1e-18) break;
  }
  require_finite(value, "b_function");
  return value;
}

Complex b_function_log(Complex q, Complex log_t, const EvalConfig& cfg) {
  const double aq = std::abs(q);
  if (aq == 0 || aq >= 1) throw NumericError("b_function: need 0 < |q| < 1");
  return theta_ratio_log(q, log_t + Complex(0.0, std::numbers::pi), cfg);
}

// ---------------------------------------------------------------------------

int MergePattern::minus_count() const {
  return static_cast<int>(std::count(signs.begin(), signs.end(), -1));
}

std::vector<MergePattern> merge_patterns(int arity) {
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  std::vector<MergePattern> out;
  const int others = arity - 1;
  int total = 1;
  for (int i = 0; i < others; ++i) total *= 3;
  // Base-3 digit per position: 0 absent, 1 merged with +1, 2 merged with -1.
  for (int code = 0; code < total; ++code) {
    MergePattern m;
    int c = code;
    for (int i = 0; i < others; ++i) {
      const int digit = c % 3;
      c /= 3;
      if (digit == 0) continue;
      m.indices.push_back(i + 1);
      m.signs.push_back(digit == 1 ? 1 : -1);
    }
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

std::string pattern_label(const MergePattern& m) {
  std::string s = "t1";
  for (std::size_t a = 0; a < m.indices.size(); ++a) {
    s += "*t" + std::to_string(m.indices[a] + 1) + (m.signs[a] > 0 ? "" : "^-1");
  }
  return s;
}

void add_point_params(CheckReport& r, Complex q, std::span<const Complex> ts) {
  r.param("q", format_complex(q));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    r.param("t" + std::to_string(i + 1), format_complex(ts[i]));
  }
}

}  // namespace

CheckReport check_difference_equation(const DifferenceEquationSpec& spec, Complex q,
                                      std::span<const Complex> ts, const EvalConfig& cfg,
                                      double tolerance) {
  if (static_cast<int>(ts.size()) != spec.arity) {
    throw std::invalid_argument("difference equation: expected " + std::to_string(spec.arity) +
                                " arguments");
  }
  const bool hat = spec.func == Correlator::S;
  const Complex shift = hat ? std::sqrt(q) : q;
  std::vector<Complex> args(ts.begin(), ts.end());
  if (hat) {
    for (auto& a : args) a = std::sqrt(a);
  }

  int max_cutoff = 0;
  double max_tail = 0;
  auto eval = [&](const std::vector<Complex>& xs, const std::string& label) {
    try {
      EvalResult r = hat ? eval_s_hat(shift, xs, cfg) : eval_correlator(spec.func, q, xs, cfg);
      max_cutoff = std::max(max_cutoff, r.cutoff);
      max_tail = std::max(max_tail, r.tail);
      return r.value;
    } catch (const NumericError& e) {
      throw NumericError("pattern " + label + ": " + e.what());
    }
  };

  std::vector<Complex> shifted = args;
  shifted[0] *= shift;
  const Complex lhs = eval(shifted, "lhs");

  Complex rhs = 0.0;
  const bool signed_variant = spec.func == Correlator::RMinus;
  if (signed_variant) {
    rhs -= eval(std::vector<Complex>(args.begin() + 1, args.end()), "leading");
  }
  for (const MergePattern& m : merge_patterns(spec.arity)) {
    Complex merged = args[0];
    std::vector<bool> used(args.size(), false);
    for (std::size_t a = 0; a < m.indices.size(); ++a) {
      const auto idx = static_cast<std::size_t>(m.indices[a]);
      merged *= m.signs[a] > 0 ? args[idx] : 1.0 / args[idx];
      used[idx] = true;
    }
    std::vector<Complex> xs{merged};
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (!used[i]) xs.push_back(args[i]);
    }
    const int exponent = (signed_variant ? 0 : 1) + static_cast<int>(m.indices.size()) +
                         m.minus_count();
    const Complex value = eval(xs, pattern_label(m));
    rhs += exponent % 2 == 0 ? value : -value;
  }

  CheckReport r;
  r.identity = "difference-equation";
  r.param("func", to_string(spec.func)).param("n", std::to_string(spec.arity));
  add_point_params(r, q, ts);
  r.residual = std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.cutoff = max_cutoff;
  r.pass = *r.residual <= tolerance;
  r.note = "max tail " + fmt(max_tail);
  return r;
}

CheckReport check_pole_residue(Complex q, std::span<const Complex> rest, const EvalConfig& cfg,
                               double tolerance, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("pole residue: eps must be positive");
  EvalConfig near = cfg;
  near.annulus_guard = std::min(cfg.annulus_guard, eps / 4);
  int cutoff = 0;
  auto scaled = [&](double e) {
    std::vector<Complex> ts{Complex(1.0 + e)};
    ts.insert(ts.end(), rest.begin(), rest.end());
    EvalResult r = eval_correlator(Correlator::R, q, ts, near);
    cutoff = std::max(cutoff, r.cutoff);
    return e * r.value;
  };
  const Complex extrapolated = 2.0 * scaled(eps / 2) - scaled(eps);

  Complex target;
  if (rest.empty()) {
    target = 1.0;
    Complex qk = q;
    for (int k = 1; k <= 4000 && std::abs(qk) > 1e-18; ++k) {
      target *= 1.0 + qk;
      qk *= q;
    }
  } else {
    target = eval_correlator(Correlator::R, q, rest, cfg).value;
  }

  CheckReport r;
  r.identity = "pole-residue";
  r.param("n", std::to_string(rest.size() + 1)).param("q", format_complex(q));
  for (std::size_t i = 0; i < rest.size(); ++i) {
    r.param("t" + std::to_string(i + 2), format_complex(rest[i]));
  }
  r.param("eps", fmt(eps));
  r.residual = std::abs(extrapolated - target) / std::abs(target);
  r.tolerance = tolerance;
  r.cutoff = cutoff;
  r.pass = *r.residual <= tolerance;
  r.note = "limit " + format_complex(extrapolated) + " target " + format_complex(target);
  return r;
}

CheckReport check_quasi_periodicity(Correlator f, Complex q, Complex t, const EvalConfig& cfg,
                                    double tolerance) {
  if (f == Correlator::RMinus) {
    throw std::invalid_argument("quasi-periodicity is checked for R and S");
  }
  Complex a;
  Complex b;
  int cutoff;
  if (f == Correlator::S) {
    const Complex qh = std::sqrt(q);
    const Complex th = std::sqrt(t);
    const std::vector<Complex> shifted{qh * th};
    const std::vector<Complex> plain{th};
    EvalResult ra = eval_s_hat(qh, shifted, cfg);
    EvalResult rb = eval_s_hat(qh, plain, cfg);
    a = ra.value;
    b = rb.value;
    cutoff = std::max(ra.cutoff, rb.cutoff);
  } else {
    const std::vector<Complex> shifted{q * t};
    const std::vector<Complex> plain{t};
    EvalResult ra = eval_correlator(f, q, shifted, cfg);
    EvalResult rb = eval_correlator(f, q, plain, cfg);
    a = ra.value;
    b = rb.value;
    cutoff = std::max(ra.cutoff, rb.cutoff);
  }
  CheckReport r;
  r.identity = "quasi-periodicity";
  r.param("func", to_string(f)).param("q", format_complex(q)).param("t", format_complex(t));
  r.residual = std::abs(a + b);
  r.tolerance = tolerance;
  r.cutoff = cutoff;
  r.pass = *r.residual <= tolerance;
  return r;
}

Complex evaluate_series(const Series& s, Complex qb, std::span<const Complex> tbs, Complex z) {
  if (s.masked()) throw NumericError("evaluate_series: series is masked");
  const auto& vars = s.profile().t_vars;
  if (tbs.size() != vars.size()) {
    throw std::invalid_argument("evaluate_series: expected " + std::to_string(vars.size()) +
                                " t-values");
  }
  Complex sum = 0.0;
  for (const auto& [key, c] : s.terms()) {
    Complex term = c.get_d() * ipow(qb, key.q) * ipow(z, key.z);
    for (std::size_t i = 0; i < vars.size(); ++i) term *= ipow(tbs[i], key.t[i]);
    sum += term;
  }
  require_finite(sum, "evaluate_series");
  return sum;
}

// ---------------------------------------------------------------------------

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a complex number: '" + whole + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a complex number: '" + whole + "'");
  return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a complex number: '" + text + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not a complex number: '" + text + "'");
    return {v, 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(body, text)};
  const std::string re = body.substr(0, split);
  if (re.empty()) throw std::invalid_argument("not a complex number: '" + text + "'");
  std::size_t used = 0;
  double rv;
  try {
    rv = std::stod(re, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a complex number: '" + text + "'");
  }
  if (used != re.size()) throw std::invalid_argument("not a complex number: '" + text + "'");
  return {rv, parse_real(body.substr(split), text)};
}

std::string format_complex(Complex z, int digits) {
  char re[64];
  std::snprintf(re, sizeof re, "%.*g", digits, z.real());
  if (z.imag() == 0) return re;
  char im[64];
  std::snprintf(im, sizeof im, "%+.*g", digits, z.imag());
  return std::string(re) + im + "i";
}

}  // namespace twfock

// ---------------------------------------------------------------------------

namespace twfock {

NumericGrid default_b_grid() {
  return {
      {0.05, Complex(0.1, 0.05), 0.15, Complex(0.2, -0.1), 0.3},
      {1.3, Complex(0.7, 0.4), -1.2, std::polar(1.5, 1.0), Complex(0.0, 0.9)},
  };
}

namespace {

CheckReport grid_report(std::string identity, const NumericGrid& grid, double residual,
                        double tolerance) {
  CheckReport r;
  r.identity = std::move(identity);
  r.param("grid", std::to_string(grid.qs.size()) + "x" + std::to_string(grid.ts.size()));
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  return r;
}

}  // namespace

CheckReport check_theta_reflection(const NumericGrid& grid, const EvalConfig& cfg,
                                   double tolerance) {
  double worst = 0;
  for (const Complex& q : grid.qs) {
    for (const Complex& t : grid.ts) {
      const int cutoff = auto_theta_cutoff(q, spread(t), cfg.tail_tol * 1e-3);
      for (int j = 0; j <= 1; ++j) {
        const Complex a = theta(j, q, t, cutoff, cfg.tail_tol);
        const Complex b = theta(j, q, 1.0 / t, cutoff, cfg.tail_tol);
        worst = std::max(worst, std::abs(a - b));
      }
    }
  }
  return grid_report("theta-reflection", grid, worst, tolerance);
}

CheckReport check_triple_product_squared(const NumericGrid& grid, const EvalConfig& cfg,
                                         double tolerance) {
  double worst = 0;
  int plus = 0;
  int minus = 0;
  for (const Complex& q : grid.qs) {
    for (const Complex& t : grid.ts) {
      const Complex a = b_function(q, t, cfg, BRoute::Theta);
      const Complex b = b_function(q, t, cfg, BRoute::Product);
      worst = std::max(worst, std::abs(a * a - b * b));
      const Complex ratio = a / b;
      if (std::abs(ratio - 1.0) < 1e-6) ++plus;
      if (std::abs(ratio + 1.0) < 1e-6) ++minus;
    }
  }
  CheckReport r = grid_report("triple-product-squared", grid, worst, tolerance);
  r.note = "theta/product ratio +1 at " + std::to_string(plus) + " points, -1 at " +
           std::to_string(minus);
  return r;
}

CheckReport check_b_shift(const NumericGrid& grid, const EvalConfig& cfg, BShiftForm form,
                          double tolerance) {
  double worst = 0;
  Complex sample = 0.0;
  for (const Complex& q : grid.qs) {
    for (const Complex& t : grid.ts) {
      Complex p;
      if (form == BShiftForm::Consistent) {
        const Complex log_t = std::log(t);
        p = b_function_log(q, log_t + std::log(q), cfg) * b_function_log(q, log_t, cfg);
      } else {
        p = b_function(q, q * t, cfg, BRoute::Theta) * b_function(q, t, cfg, BRoute::Theta);
      }
      double dev;
      switch (form) {
        case BShiftForm::Literal:
          dev = std::abs(p + 1.0);
          break;
        case BShiftForm::Squared:
          dev = std::abs(p * p - 1.0);
          break;
        default:
          dev = std::abs(p - 1.0);
          break;
      }
      if (dev >= worst) {
        worst = dev;
        sample = p;
      }
    }
  }
  const char* name = form == BShiftForm::Literal   ? "b-shift-product"
                     : form == BShiftForm::Squared ? "b-shift-product-squared"
                                                   : "b-shift-product-consistent-branch";
  CheckReport r = grid_report(name, grid, worst, tolerance);
  r.note = "B(q,qt)B(q,t) = " + format_complex(sample, 10) + " at the worst point";
  return r;
}

CheckReport check_exact_vs_numeric(Correlator f, bool plus_convention, Complex q, Complex t,
                                   int q_order, const EvalConfig& cfg, double tolerance) {
  const Convention conv = plus_convention ? Convention::Plus : Convention::Minus;
  if (f == Correlator::RMinus && plus_convention) {
    throw std::invalid_argument("the signed-length series is built with the Minus expansion");
  }
  Complex exact;
  EvalResult numeric;
  const std::vector<Complex> ts{t};
  if (f == Correlator::S) {
    const int order = 2 * q_order;
    const Complex qh = std::sqrt(q);
    const std::vector<Complex> ths{std::sqrt(t)};
    const Series s =
        corrected_onepoint(PartitionKind::OddStrict, conv,
                           onepoint_profile(PartitionKind::OddStrict, order, 2 * order));
    exact = evaluate_series(s, qh, ths);
    numeric = eval_s_hat(qh, ths, cfg);
  } else {
    const TruncationProfile p = onepoint_profile(PartitionKind::Strict, q_order, 2 * q_order);
    const Series s = f == Correlator::R ? corrected_onepoint(PartitionKind::Strict, conv, p)
                                        : rminus_closed_form(p).lhs;
    exact = evaluate_series(s, q, ts);
    numeric = eval_correlator(f, q, ts, cfg);
  }
  CheckReport r;
  r.identity = "exact-vs-numeric";
  r.param("func", to_string(f))
      .param("convention", plus_convention ? "plus" : "minus")
      .param("q", format_complex(q))
      .param("t", format_complex(t))
      .param("q-order", std::to_string(q_order));
  r.residual = std::abs(exact - numeric.value);
  r.tolerance = tolerance;
  r.cutoff = numeric.cutoff;
  r.pass = *r.residual <= tolerance;
  return r;
}

}  // namespace twfock
