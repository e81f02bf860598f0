#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "suites.hpp"
#include "twfock/correlators.hpp"
#include "twfock/numeric.hpp"
#include "twfock/partitions.hpp"

namespace twfock::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string render_suite(const SuiteResult& result, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    ordered_json j;
    j["suite"] = result.name;
    j["pass"] = result.pass;
    j["reports"] = ordered_json::array();
    for (const auto& r : result.reports) j["reports"].push_back(ordered_json::parse(to_json(r)));
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    os << "identity,params,pass,compared,residual,tolerance,cutoff,mismatch,note\n";
    for (const auto& r : result.reports) {
      std::string params;
      for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + v;
      std::string mismatch;
      if (r.mismatch) mismatch = r.mismatch->monomial + ": " + r.mismatch->lhs + " vs " + r.mismatch->rhs;
      os << csv_field(r.identity) << ',' << csv_field(params) << ',' << (r.pass ? "true" : "false")
         << ',' << r.compared << ',' << (r.residual ? format_double(*r.residual) : "") << ','
         << (r.tolerance ? format_double(*r.tolerance) : "") << ','
         << (r.cutoff ? std::to_string(*r.cutoff) : "") << ',' << csv_field(mismatch) << ','
         << csv_field(r.note) << '\n';
    }
  } else {
    std::size_t failed = 0;
    for (const auto& r : result.reports) {
      os << to_text(r) << '\n';
      if (!r.pass) ++failed;
    }
    os << result.name << ": " << result.reports.size() - failed << '/' << result.reports.size()
       << " passed\n";
  }
  return os.str();
}

std::string render_series(const Series& s, const std::string& format) {
  if (format == "json") return to_json(s) + "\n";
  if (format == "csv") return to_csv(s);
  std::ostringstream os;
  for (const auto& [key, c] : s.terms()) os << c.get_str() << '\t' << format_key(key, s.profile()) << '\n';
  return os.str();
}

Complex parse_complex_arg(const std::string& text) {
  try {
    return parse_complex(text);
  } catch (const std::exception&) {
    throw UsageError("not a complex number: '" + text + "'");
  }
}

std::vector<Complex> parse_complex_list(const std::vector<std::string>& texts) {
  std::vector<Complex> out;
  for (const auto& t : texts) out.push_back(parse_complex_arg(t));
  return out;
}

struct NumericFlags {
  std::optional<std::string> q;
  std::vector<std::string> ts;
  int cutoff = 60;
  int max_cutoff = 160;
  double tail_tol = 1e-10;
  double guard = 1e-3;

  void attach(CLI::App* app) {
    app->add_option("--q", q, "nome, as a+bi");
    app->add_option("--t", ts, "argument t_i, as a+bi (repeatable)")->allow_extra_args(false);
    app->add_option("--cutoff", cutoff, "weight cutoff L")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--max-cutoff", max_cutoff, "adaptive cutoff ceiling (0: fixed cutoff)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--tail-tol", tail_tol, "bound on the estimated truncation tail")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--guard", guard, "distance kept from the annulus boundary and t = 1")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }

  EvalConfig config() const {
    EvalConfig cfg;
    cfg.weight_cutoff = cutoff;
    cfg.max_cutoff = max_cutoff;
    cfg.tail_tol = tail_tol;
    cfg.annulus_guard = guard;
    return cfg;
  }
};

struct Options {
  // verify
  std::string suite;
  std::optional<int> q_order;
  std::optional<int> t_band;
  int z_order = 10;
  std::optional<double> tol;
  NumericFlags numeric;
  // series
  std::string target;
  // eval
  std::string func = "R";
  int j = 0;
  std::string route = "theta";
  // partitions
  std::string kind = "strict";
  int max_weight = 10;
  bool count = false;

  std::string format = "text";
  std::optional<std::string> output;
};

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (!o.output) {
    out << text;
    return;
  }
  std::ofstream file(*o.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + *o.output + "'");
  file << text;
}

int run_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw UsageError("unknown suite '" + o.suite + "' (expected one of: " + list + ")");
  }
  SuiteOptions so;
  so.q_order = o.q_order;
  so.t_band = o.t_band;
  so.z_order = o.z_order;
  if (o.numeric.q) so.q = parse_complex_arg(*o.numeric.q);
  so.ts = parse_complex_list(o.numeric.ts);
  so.tolerance = o.tol;
  so.eval = o.numeric.config();

  const SuiteResult result = run_suite(o.suite, so);
  emit(render_suite(result, o.format), o, out);
  err << o.suite << " finished in " << std::fixed << std::setprecision(3) << result.seconds
      << " s\n";
  return result.pass ? kPass : kFail;
}

int run_series(const Options& o, std::ostream& out) {
  const auto& names = series_target_names();
  if (std::find(names.begin(), names.end(), o.target) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw UsageError("unknown target '" + o.target + "' (expected one of: " + list + ")");
  }
  const int n = o.q_order.value_or(20);
  const Series s = series_target(o.target, n, o.t_band.value_or(n), o.z_order);
  emit(render_series(s, o.format), o, out);
  return kPass;
}

int run_eval(const Options& o, std::ostream& out) {
  if (!o.numeric.q) throw UsageError("eval needs --q");
  const Complex q = parse_complex_arg(*o.numeric.q);
  const std::vector<Complex> ts = parse_complex_list(o.numeric.ts);
  const EvalConfig cfg = o.numeric.config();

  EvalResult r;
  if (o.func == "theta") {
    if (ts.size() != 1) throw UsageError("theta takes exactly one --t");
    if (o.j != 0 && o.j != 1) throw UsageError("--j must be 0 or 1");
    r.value = theta(o.j, q, ts.front(), cfg.weight_cutoff, cfg.tail_tol);
    r.cutoff = cfg.weight_cutoff;
  } else if (o.func == "B") {
    if (ts.size() != 1) throw UsageError("B takes exactly one --t");
    r.value = b_function(q, ts.front(), cfg, o.route == "product" ? BRoute::Product : BRoute::Theta);
    r.cutoff = cfg.weight_cutoff;
  } else {
    r = eval_correlator(parse_correlator(o.func), q, ts, cfg);
  }

  std::string text;
  if (o.format == "json") {
    ordered_json j;
    j["func"] = o.func;
    j["q"] = format_complex(q);
    j["t"] = ordered_json::array();
    for (Complex t : ts) j["t"].push_back(format_complex(t));
    j["value"] = format_complex(r.value);
    j["re"] = r.value.real();
    j["im"] = r.value.imag();
    j["tail"] = r.tail;
    j["cutoff"] = r.cutoff;
    text = j.dump(2) + "\n";
  } else if (o.format == "csv") {
    text = "value,re,im,tail,cutoff\n" + format_complex(r.value) + "," +
           format_complex(r.value.real()) + "," + format_complex(r.value.imag()) + "," +
           format_double(r.tail) + "," + std::to_string(r.cutoff) + "\n";
  } else {
    text = format_complex(r.value) + "\n";
  }
  emit(text, o, out);
  return kPass;
}

int run_partitions(const Options& o, std::ostream& out) {
  PartitionKind kind;
  try {
    kind = parse_partition_kind(o.kind);
  } catch (const std::exception&) {
    throw UsageError("unknown partition kind '" + o.kind + "'");
  }
  std::ostringstream os;
  if (o.count) {
    const auto counts = count_table(kind, o.max_weight);
    for (std::size_t n = 0; n < counts.size(); ++n) os << n << ',' << counts[n] << '\n';
  } else {
    for (const Partition& p : PartitionStream(kind, o.max_weight)) os << p.to_string() << '\n';
  }
  emit(os.str(), o, out);
  return kPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact and numeric checks for twisted Fock-space trace functions", "twfock"};
  app.set_config("--config", "", "read options from a TOML or INI file");
  app.require_subcommand(1, 1);

  const std::vector<std::string> formats{"text", "json", "csv"};

  auto* verify = app.add_subcommand("verify", "run a registered identity suite");
  verify->add_option("--suite", o.suite, "suite name, or 'all'")->required();
  verify->add_option("--q-order", o.q_order, "q-order N of exact checks")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--t-band", o.t_band, "t-band M of exact checks")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--z-order", o.z_order, "z-order of graded checks")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--tol", o.tol, "tolerance override for numeric checks")
      ->check(CLI::PositiveNumber);
  o.numeric.attach(verify);
  verify->add_option("--format", o.format)->check(CLI::IsMember(formats))->capture_default_str();
  verify->add_option("--output", o.output, "write the report to a file");

  auto* series = app.add_subcommand("series", "emit an exact series");
  series->add_option("--target", o.target, "series name")->required();
  series->add_option("--q-order", o.q_order, "order in the series' base variable (default 20)")
      ->check(CLI::NonNegativeNumber);
  series->add_option("--t-band", o.t_band, "t-band (default: the q-order)")
      ->check(CLI::NonNegativeNumber);
  series->add_option("--z-order", o.z_order)->check(CLI::NonNegativeNumber)->capture_default_str();
  series->add_option("--format", o.format)->check(CLI::IsMember(formats))->default_str("json");
  series->add_option("--output", o.output, "write the series to a file");

  auto* eval = app.add_subcommand("eval", "evaluate R, S, R-, theta or B at a point");
  eval->add_option("--func", o.func)
      ->check(CLI::IsMember({"R", "S", "R-", "theta", "B"}))
      ->capture_default_str();
  eval->add_option("--j", o.j, "theta index (0 or 1)")->capture_default_str();
  eval->add_option("--route", o.route, "B route")
      ->check(CLI::IsMember({"theta", "product"}))
      ->capture_default_str();
  o.numeric.attach(eval);
  eval->add_option("--format", o.format)->check(CLI::IsMember(formats))->capture_default_str();
  eval->add_option("--output", o.output, "write the value to a file");

  auto* partitions = app.add_subcommand("partitions", "list or count partitions");
  partitions->add_option("--kind", o.kind, "strict | odd-strict")->capture_default_str();
  partitions->add_option("--max-weight", o.max_weight)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  partitions->add_flag("--count", o.count, "print n,count rows");
  partitions->add_option("--output", o.output, "write to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  if (series->parsed() && series->get_option("--format")->count() == 0) o.format = "json";

  try {
    if (verify->parsed()) return run_verify(o, out, err);
    if (series->parsed()) return run_series(o, out);
    if (eval->parsed()) return run_eval(o, out);
    return run_partitions(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
}

}  // namespace twfock::cli
