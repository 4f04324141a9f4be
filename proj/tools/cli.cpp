#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsandor/error.hpp"
#include "qsandor/qspecial.hpp"
#include "qsandor/sandor_classic.hpp"
#include "qsandor/sandor_q.hpp"
#include "qsandor/series_lab.hpp"
#include "qsandor/verify.hpp"

namespace qsandor::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Function { S, SStar, Z, ZStar, P, PStar, Zq, ZqStar, Pq, PqStar, QGamma, QFactorial, QPoch };

const std::map<std::string, Function, std::less<>>& function_names() {
  static const std::map<std::string, Function, std::less<>> names{
      {"S", Function::S},         {"S*", Function::SStar},       {"Z", Function::Z},
      {"Z*", Function::ZStar},    {"P", Function::P},            {"P*", Function::PStar},
      {"Zq", Function::Zq},       {"Zq*", Function::ZqStar},     {"Pq", Function::Pq},
      {"Pq*", Function::PqStar},  {"qgamma", Function::QGamma},  {"qfactorial", Function::QFactorial},
      {"qpoch", Function::QPoch},
      // Spellings that survive an unquoted shell.
      {"Sstar", Function::SStar}, {"Zstar", Function::ZStar},    {"Pstar", Function::PStar},
      {"Zqstar", Function::ZqStar}, {"Pqstar", Function::PqStar},
  };
  return names;
}

Function parse_function(const std::string& name) {
  const auto& names = function_names();
  auto it = names.find(name);
  if (it == names.end()) throw UsageError("unknown function '" + name + "'");
  return it->second;
}

struct Params {
  std::optional<double> q;
  std::optional<double> p;
  std::optional<double> precision;
  std::optional<double> max_terms;

  QParam require_q() const {
    if (!q) throw UsageError("this function needs --q");
    return QParam(*q);
  }
  double require_p() const {
    if (!p) throw UsageError("this function needs --p");
    return *p;
  }
  Precision prec() const {
    Precision out;
    if (precision) out.rel_tol = *precision;
    if (max_terms) {
      if (*max_terms != std::floor(*max_terms) || *max_terms > 1e12) throw UsageError("--max-terms must be an integer");
      out.max_terms = static_cast<std::int64_t>(*max_terms);
    }
    return Precision(out.rel_tol, out.max_terms);
  }
};

// Validates the parameters a function needs before any evaluation, so a
// missing flag is a usage error even when every sweep point would fail.
void require_params(Function f, const Params& params) {
  switch (f) {
    case Function::P:
    case Function::PStar: params.require_p(); break;
    case Function::Pq:
    case Function::PqStar:
      params.require_p();
      params.require_q();
      break;
    case Function::Zq:
    case Function::ZqStar:
    case Function::QGamma:
    case Function::QFactorial:
    case Function::QPoch: params.require_q(); break;
    default: break;
  }
}

struct Evaluation {
  double value = 0.0;
  bool integral = false;
  std::optional<QBoundPair> bounds;
  std::optional<double> asymptote;
  std::optional<double> ratio;
};

bool has_bounds(Function f) { return f == Function::Zq || f == Function::ZqStar; }
bool has_asymptote(Function f) {
  switch (f) {
    case Function::S:
    case Function::SStar:
    case Function::Z:
    case Function::ZStar:
    case Function::P:
    case Function::PStar:
    case Function::Pq:
    case Function::PqStar: return true;
    default: return false;
  }
}

template <class F>
std::optional<double> optional_value(F&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::int64_t require_integer(double x) {
  if (x != std::floor(x) || std::abs(x) > 9e15) throw Error(Errc::DomainError, "argument must be an integer");
  return static_cast<std::int64_t>(x);
}

Evaluation evaluate(Function f, double x, const Params& params) {
  Evaluation e;
  auto integer = [&](std::int64_t v) {
    e.value = static_cast<double>(v);
    e.integral = true;
  };
  switch (f) {
    case Function::S: integer(s_of(x)); break;
    case Function::SStar: integer(s_star(x)); break;
    case Function::Z: integer(z_of(x)); break;
    case Function::ZStar: integer(z_star(x)); break;
    case Function::P: integer(p_of(x, params.require_p())); break;
    case Function::PStar: integer(p_star(x, params.require_p())); break;
    case Function::Zq: e.value = z_q(x, params.require_q()); break;
    case Function::ZqStar: e.value = z_q_star(x, params.require_q()); break;
    case Function::Pq: integer(p_q(x, params.require_q(), params.require_p(), params.prec())); break;
    case Function::PqStar: integer(p_q_star(x, params.require_q(), params.require_p(), params.prec())); break;
    case Function::QGamma: e.value = log_q_gamma(x, params.require_q(), params.prec()).value(); break;
    case Function::QFactorial: {
      const std::int64_t n = require_integer(x);
      e.value = q_factorial(n, params.require_q()).value();
      break;
    }
    case Function::QPoch: e.value = q_pochhammer_inf(x, params.require_q(), params.prec()).value(); break;
  }

  if (has_bounds(f)) e.bounds = [&]() -> std::optional<QBoundPair> {
      try {
        return z_q_star_bounds(x, params.require_q());
      } catch (const Error&) {
        return std::nullopt;
      }
    }();

  switch (f) {
    case Function::S:
    case Function::SStar: e.asymptote = optional_value([&] { return asymptote(AsymptoticKind::T11, x); }); break;
    case Function::Z:
    case Function::ZStar: e.asymptote = optional_value([&] { return asymptote(AsymptoticKind::T13, x); }); break;
    case Function::P:
    case Function::PStar:
      // log P(x) against log x.
      e.asymptote = optional_value([&] { return asymptote(AsymptoticKind::T15, x); });
      if (e.asymptote) e.ratio = std::log(e.value) / *e.asymptote;
      break;
    case Function::Pq:
    case Function::PqStar:
      e.asymptote = optional_value([&] { return p_q_star_asymptote(x, params.require_q(), params.require_p()); });
      break;
    default: break;
  }
  if (e.asymptote && !e.ratio) e.ratio = e.value / *e.asymptote;
  return e;
}

std::string format_value(const Evaluation& e) {
  return e.integral ? std::to_string(static_cast<std::int64_t>(e.value)) : format_double(e.value);
}

json value_json(const Evaluation& e) {
  if (e.integral) return static_cast<std::int64_t>(e.value);
  return e.value;
}

std::int64_t to_count(double v, const char* flag) {
  if (!(v >= 0) || v != std::floor(v) || v > 9e15)
    throw UsageError(std::string(flag) + " must be a non-negative integer");
  return static_cast<std::int64_t>(v);
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string function;
  double x = 0.0;
  Params params;
  std::string format = "text";
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Function f = parse_function(a.function);
  require_params(f, a.params);
  const Evaluation e = evaluate(f, a.x, a.params);

  if (a.format == "json") {
    json j{{"function", a.function}, {"x", a.x}, {"value", value_json(e)}};
    if (a.params.q) j["q"] = *a.params.q;
    if (a.params.p) j["p"] = *a.params.p;
    if (e.bounds) {
      j["lower_bound"] = e.bounds->lower;
      j["upper_bound"] = e.bounds->upper;
    }
    if (e.asymptote) j["asymptote"] = *e.asymptote;
    if (e.ratio) j["ratio"] = *e.ratio;
    out << j.dump() << '\n';
    return kExitOk;
  }
  out << format_value(e) << '\n';
  if (e.bounds) {
    out << "lower_bound " << format_double(e.bounds->lower) << '\n';
    out << "upper_bound " << format_double(e.bounds->upper) << '\n';
  }
  return kExitOk;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::string function;
  double lo = 0.0;
  double hi = 0.0;
  double steps = 0.0;
  std::string spacing = "linear";
  Params params;
  std::string format = "csv";
};

std::vector<double> sweep_grid(const SweepArgs& a) {
  const std::int64_t steps = to_count(a.steps, "--steps");
  if (steps < 1) throw UsageError("--steps must be at least 1");
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.hi < a.lo) throw UsageError("need finite --lo <= --hi");
  const bool log = a.spacing == "log";
  if (log && !(a.lo > 0.0)) throw UsageError("log spacing needs --lo > 0");

  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
    xs.push_back(log ? a.lo * std::exp(t * std::log(a.hi / a.lo)) : a.lo + (a.hi - a.lo) * t);
  }
  if (steps > 1) xs.back() = a.hi;
  return xs;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const Function f = parse_function(a.function);
  require_params(f, a.params);
  const auto xs = sweep_grid(a);

  std::vector<std::string> columns{"x", "value"};
  if (has_bounds(f)) columns.insert(columns.end(), {"lower_bound", "upper_bound"});
  if (has_asymptote(f)) columns.insert(columns.end(), {"asymptote", "ratio"});
  columns.push_back("flag");

  // One row per grid point; a failed point keeps its row with empty cells.
  std::vector<std::map<std::string, std::string>> rows;
  json json_rows = json::array();
  for (double x : xs) {
    std::map<std::string, std::string> row{{"x", format_double(x)}};
    json jrow{{"x", x}};
    try {
      const Evaluation e = evaluate(f, x, a.params);
      row["value"] = format_value(e);
      jrow["value"] = value_json(e);
      if (e.bounds) {
        row["lower_bound"] = format_double(e.bounds->lower);
        row["upper_bound"] = format_double(e.bounds->upper);
        jrow["lower_bound"] = e.bounds->lower;
        jrow["upper_bound"] = e.bounds->upper;
      }
      if (e.asymptote) {
        row["asymptote"] = format_double(*e.asymptote);
        jrow["asymptote"] = *e.asymptote;
      }
      if (e.ratio) {
        row["ratio"] = format_double(*e.ratio);
        jrow["ratio"] = *e.ratio;
      }
    } catch (const Error& err) {
      row["flag"] = std::string(err.name());
      jrow["flag"] = err.name();
    }
    rows.push_back(std::move(row));
    json_rows.push_back(std::move(jrow));
  }

  if (a.format == "json") {
    out << json{{"function", a.function}, {"columns", columns}, {"rows", json_rows}}.dump() << '\n';
    return kExitOk;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      auto it = row.find(columns[i]);
      out << (i ? "," : "") << (it == row.end() ? "" : it->second);
    }
    out << '\n';
  }
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string theorem;
  std::optional<double> x_max;
  std::optional<int> points;
  std::optional<double> n_max;
  Params params;
  VerifyOptions options;
};

int cmd_verify(VerifyArgs a, std::ostream& out) {
  const auto id = parse_theorem(a.theorem);
  if (!id) throw UsageError("unknown theorem id '" + a.theorem + "'");
  VerifyOptions& o = a.options;
  o.x_max = a.x_max;
  o.points = a.points;
  if (a.points && *a.points < 1) throw UsageError("--points must be at least 1");
  if (a.n_max) o.n_max = to_count(*a.n_max, "--n-max");
  o.q = a.params.q;
  o.p = a.params.p;
  if (a.params.precision || a.params.max_terms) o.precision = a.params.prec();

  const VerifyReport report = verify(*id, o);
  out << to_json(report).dump() << '\n';
  return report.passed() ? kExitOk : kExitFailure;
}

// ---- series ---------------------------------------------------------------

struct SeriesArgs {
  std::string kind;
  double alpha = 1.0;
  double p = 2.0;
  double n_max = 1e6;
  std::vector<double> checkpoints;
  VerdictThresholds thresholds;
  std::string format = "json";
};

int cmd_series(const SeriesArgs& a, std::ostream& out, std::ostream& err) {
  const auto kind = parse_series_kind(a.kind);
  if (!kind) throw UsageError("unknown series kind '" + a.kind + "'");
  SeriesSpec spec{*kind, a.alpha, a.p, to_count(a.n_max, "--n-max")};
  validate(spec);

  std::vector<std::int64_t> checkpoints;
  for (double c : a.checkpoints) checkpoints.push_back(to_count(c, "--checkpoints"));
  if (checkpoints.empty()) checkpoints = default_checkpoints(spec.n_max);

  const SeriesReport report = partial_sums(spec, checkpoints, a.thresholds);
  std::map<std::int64_t, double> delta_at;
  for (const auto& d : report.doubling_deltas) delta_at[d.n] = d.delta;

  if (a.format == "csv") {
    out << "N,partial_sum,doubling_delta\n";
    for (const auto& c : report.checkpoints) {
      out << c.n << ',' << format_double(c.partial_sum) << ',';
      if (auto it = delta_at.find(c.n); it != delta_at.end()) out << format_double(it->second);
      out << '\n';
    }
    err << "verdict_hint " << to_string(report.verdict_hint) << '\n';
    return kExitOk;
  }

  json cps = json::array();
  for (const auto& c : report.checkpoints) cps.push_back({{"N", c.n}, {"partial_sum", c.partial_sum}});
  json deltas = json::array();
  for (const auto& d : report.doubling_deltas) deltas.push_back({{"N", d.n}, {"delta", d.delta}});
  json j{{"kind", to_string(spec.kind)},
         {"alpha", spec.alpha},
         {"n_max", spec.n_max},
         {"start", report.start},
         {"checkpoints", cps},
         {"doubling_deltas", deltas},
         {"total", report.total},
         {"verdict_hint", to_string(report.verdict_hint)}};
  if (spec.kind == SeriesKind::PStarLogLog) j["p"] = spec.p;
  out << j.dump() << '\n';
  return kExitOk;
}

void add_params(CLI::App* sub, Params& params, bool with_precision = true) {
  sub->add_option("--q", params.q, "deformation parameter q");
  sub->add_option("--p", params.p, "base p > 1 for the P family");
  if (!with_precision) return;
  sub->add_option("--precision", params.precision, "relative truncation tolerance");
  sub->add_option("--max-terms", params.max_terms, "cap on product/sum terms");
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-gamma and Sandor-type function toolkit", "qsandor"};
  app.set_config("--config", "", "key=value file; [eval]/[sweep]/[verify]/[series] sections set subcommand defaults");
  app.require_subcommand(1, 1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate one function at one point");
  eval->add_option("function", eval_args.function, "S S* Z Z* P P* Zq Zq* Pq Pq* qgamma qfactorial qpoch")->required();
  eval->add_option("--x", eval_args.x, "argument")->required();
  add_params(eval, eval_args.params);
  eval->add_option("--format", eval_args.format)->check(CLI::IsMember({"text", "json"}));

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "evaluate a function on a grid, CSV or JSON");
  sweep->add_option("function", sweep_args.function)->required();
  sweep->add_option("--lo", sweep_args.lo, "first grid point")->required();
  sweep->add_option("--hi", sweep_args.hi, "last grid point")->required();
  sweep->add_option("--steps", sweep_args.steps, "number of grid points")->required();
  sweep->add_option("--spacing", sweep_args.spacing)->check(CLI::IsMember({"linear", "log"}));
  add_params(sweep, sweep_args.params);
  sweep->add_option("--format", sweep_args.format)->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "check one theorem on its parameter grid, JSON report");
  std::vector<std::string> ids;
  for (auto id : all_theorems()) ids.emplace_back(to_string(id));
  ver->add_option("theorem", verify_args.theorem)->required()->check(CLI::IsMember(ids));
  ver->add_option("--x-max", verify_args.x_max, "upper end of the x grid");
  ver->add_option("--points", verify_args.points, "grid size for T21 / SANDWICH_Z / SANDWICH_P");
  ver->add_option("--n-max", verify_args.n_max, "series length for T12 / T14 / T16");
  add_params(ver, verify_args.params);
  auto& tol = verify_args.options.tolerances;
  ver->add_option("--tol-recurrence", tol.recurrence_abs);
  ver->add_option("--tol-classical-limit", tol.classical_limit_rel);
  ver->add_option("--tol-t13", tol.t13_final);
  ver->add_option("--tol-t22-coarse", tol.t22_coarse);
  ver->add_option("--tol-t22-fine", tol.t22_fine);
  ver->add_option("--tol-limit-q1", tol.limit_q1_z);
  ver->add_option("--shrink-factor", verify_args.options.thresholds.shrink_factor);
  ver->add_option("--persistence-band", verify_args.options.thresholds.persistence_band);
  ver->add_option("--samples", verify_args.options.random_samples, "random samples for the T13 closed-form check");
  std::string verify_format = "json";
  ver->add_option("--format", verify_format, "json (only format)")->check(CLI::IsMember({"json"}));

  SeriesArgs series_args;
  auto* ser = app.add_subcommand("series", "partial sums and doubling-delta diagnostics");
  std::vector<std::string> kinds;
  for (auto k : {SeriesKind::SStarWeighted, SeriesKind::ZStarPlain, SeriesKind::ZStarWeighted, SeriesKind::PStarLogLog})
    kinds.emplace_back(to_string(k));
  ser->add_option("kind", series_args.kind)->required()->check(CLI::IsMember(kinds));
  ser->add_option("--alpha", series_args.alpha)->required();
  ser->add_option("--p", series_args.p);
  ser->add_option("--n-max", series_args.n_max);
  ser->add_option("--checkpoints", series_args.checkpoints, "increasing list of N")->delimiter(',');
  ser->add_option("--shrink-factor", series_args.thresholds.shrink_factor);
  ser->add_option("--persistence-band", series_args.thresholds.persistence_band);
  ser->add_option("--format", series_args.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.get_name() << ": " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_args, out);
    if (sweep->parsed()) return cmd_sweep(sweep_args, out);
    if (ver->parsed()) return cmd_verify(verify_args, out);
    if (ser->parsed()) return cmd_series(series_args, out, err);
  } catch (const UsageError& e) {
    err << "UsageError: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qsandor::cli
