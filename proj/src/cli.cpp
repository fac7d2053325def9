#include "levelpath/cli.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "levelpath/expr.hpp"
#include "levelpath/io.hpp"
#include "levelpath/tracer.hpp"

namespace levelpath::cli {

namespace {

constexpr const char* kSyntaxHelp = R"(Expression syntax (variable z, imaginary unit i):
  expr   := term (('+'|'-') term)*
  term   := factor (('*'|'/') factor)*
  factor := '-' factor | atom ('^' INT)?
  atom   := NUMBER | 'i' | 'z' | NAME '(' expr ')' | '(' expr ')'
  NAME is one of exp, log, sin, cos, tan, sinh, cosh, tanh (lowercase).
  '^' binds tighter than unary minus (-z^2 is -(z^2)) and takes only an
  integer literal, optionally negated (z^-2). Write general powers as
  exp(w*log(z)). No implicit multiplication: write 2*z and 2*i.
  log is the principal branch.

Complex literals (--seed, --seeds, --at): A, Bi, A+Bi, A-Bi, i, -i with no
whitespace, e.g. 1.5+0.5i. --seeds separates literals with ';'.

Exit codes: 0 success, 1 usage/parse/configuration error, 2 trace failure
(partial output still written), 3 output write failure.)";

struct Options {
  std::string function;
  std::string seed;
  std::string seeds;
  std::string at;
  double step = 0.01;
  double length = 10.0;
  std::string method = "rk4";
  std::string orientation = "+1";
  std::string form = "direct";
  std::string corrector = "on";
  std::string format = "csv";
  std::string out_path;
};

void add_function_options(CLI::App& sub, Options& opt) {
  sub.add_option("-f,--function", opt.function, "Analytic function of z")->required();
  sub.add_option("--form", opt.form, "direct: expression is f; log: expression is g with f = exp(g)")
      ->check(CLI::IsMember({"direct", "log"}))
      ->capture_default_str();
}

void add_trace_options(CLI::App& sub, Options& opt) {
  add_function_options(sub, opt);
  sub.add_option("--step", opt.step, "Arc-length step h")->capture_default_str();
  sub.add_option("--length", opt.length, "Arc-length budget L")->capture_default_str();
  sub.add_option("--method", opt.method, "Integrator")
      ->check(CLI::IsMember({"euler", "rk4", "taylor2"}))
      ->capture_default_str();
  sub.add_option("--orientation", opt.orientation, "+1 or -1 (direction of travel)")
      ->check(CLI::IsMember({"+1", "-1", "1"}))
      ->capture_default_str();
  sub.add_option("--corrector", opt.corrector, "Newton projection back onto the level set")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  sub.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
  sub.add_option("--out", opt.out_path, "Output file (default: standard output)");
}

Method method_from(const std::string& name) {
  if (name == "euler") return Method::Euler;
  if (name == "taylor2") return Method::Taylor2;
  return Method::RK4;
}

OutputFormat format_from(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "svg") return OutputFormat::Svg;
  return OutputFormat::Csv;
}

TraceConfig base_config(const Options& opt, ExprPtr function) {
  TraceConfig cfg;
  cfg.function = std::move(function);
  cfg.form = opt.form == "log" ? Form::Log : Form::Direct;
  cfg.orientation = opt.orientation == "-1" ? Orientation::Negative : Orientation::Positive;
  cfg.step = opt.step;
  cfg.arc_budget = opt.length;
  cfg.method = method_from(opt.method);
  cfg.corrector_enabled = opt.corrector == "on";
  return cfg;
}

TraceRecord make_record(int index, const Options& opt, const TraceConfig& cfg, TraceResult result) {
  TraceRecord rec;
  rec.trace_index = index;
  rec.function = opt.function;
  rec.seed = format_complex_literal(cfg.seed);
  rec.method = cfg.method;
  rec.orientation = cfg.orientation;
  rec.result = std::move(result);
  return rec;
}

int emit(const Options& opt, std::span<const TraceRecord> records, bool json_array, std::ostream& out,
         std::ostream& err) {
  std::ostringstream buffer;
  switch (format_from(opt.format)) {
    case OutputFormat::Csv: write_csv(buffer, records); break;
    case OutputFormat::Json: write_json(buffer, records, json_array); break;
    case OutputFormat::Svg: write_svg(buffer, records); break;
  }
  if (opt.out_path.empty()) {
    out << buffer.str();
    out.flush();
    if (!out) {
      err << "error: failed writing to standard output\n";
      return kWriteFailed;
    }
    return kOk;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  file << buffer.str();
  file.close();
  if (!file) {
    err << "error: cannot write " << opt.out_path << '\n';
    return kWriteFailed;
  }
  return kOk;
}

int run_trace(const Options& opt, std::ostream& out, std::ostream& err) {
  std::optional<LevelProblem> problem;
  try {
    TraceConfig cfg = base_config(opt, parse(opt.function));
    cfg.seed = parse_complex_literal(opt.seed);
    problem.emplace(std::move(cfg));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  TraceResult result = trace(*problem);
  const bool ok = is_success(result.termination);
  if (!ok) err << "trace stopped: " << to_string(result.termination) << ": " << result.message << '\n';
  const TraceRecord rec = make_record(0, opt, problem->config(), std::move(result));
  if (const int rc = emit(opt, std::span(&rec, 1), false, out, err); rc != kOk) return rc;
  return ok ? kOk : kTraceFailed;
}

std::vector<std::string> split_seeds(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t end = std::min(text.find(';', begin), text.size());
    parts.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
  return parts;
}

int run_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  ExprPtr function;
  try {
    function = parse(opt.function);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  std::vector<std::string> seeds = split_seeds(opt.seeds);
  if (seeds.size() == 1 && seeds.front().empty()) {
    err << "error: --seeds is empty\n";
    return kUsageError;
  }
  const TraceConfig base = base_config(opt, function);

  struct Outcome {
    std::optional<TraceRecord> record;
    std::string warning;
    bool succeeded = false;
  };
  std::vector<std::future<Outcome>> pending;
  pending.reserve(seeds.size());
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    pending.push_back(std::async(std::launch::async, [&, k]() {
      Outcome outcome;
      try {
        TraceConfig cfg = base;
        cfg.seed = parse_complex_literal(seeds[k]);
        const LevelProblem problem(std::move(cfg));
        TraceResult result = trace(problem);
        outcome.succeeded = is_success(result.termination);
        if (!outcome.succeeded) {
          outcome.warning = std::string(to_string(result.termination)) + ": " + result.message;
        }
        outcome.record = make_record(static_cast<int>(k), opt, problem.config(), std::move(result));
      } catch (const Error& e) {
        outcome.warning = e.what();
      }
      return outcome;
    }));
  }

  std::vector<TraceRecord> records;
  bool any_success = false;
  for (std::size_t k = 0; k < pending.size(); ++k) {
    Outcome outcome = pending[k].get();
    if (!outcome.warning.empty()) err << "warning: seed " << k << " (" << seeds[k] << "): " << outcome.warning << '\n';
    if (outcome.record) records.push_back(std::move(*outcome.record));
    any_success = any_success || outcome.succeeded;
  }
  if (const int rc = emit(opt, records, true, out, err); rc != kOk) return rc;
  return any_success ? kOk : kTraceFailed;
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

int run_probe(const Options& opt, std::ostream& out, std::ostream& err) {
  ExprPtr function;
  Complex at;
  try {
    function = parse(opt.function);
    at = parse_complex_literal(opt.at);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  try {
    const Orientation sigma = opt.orientation == "-1" ? Orientation::Negative : Orientation::Positive;
    JetEvaluator f;
    Complex t;
    if (opt.form == "log") {
      const JetEvaluator g = jet_evaluator(function);
      f = [g](Complex z) { return exp(g(z)); };
      t = tangent_log(g, at, sigma);
    } else {
      f = jet_evaluator(function);
      t = tangent(f, at, sigma);
    }
    const double c = std::abs(f(at).v);
    nlohmann::json j;
    j["tangent"] = complex_json(t);
    j["curvature"] = complex_json(curvature(f, at, t, c));
    j["residual"] = squared_relation_residual(f, at, t, c);
    j["modulus"] = c;
    out << j.dump(2) << '\n';
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kTraceFailed;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace arc-length level paths |f(z)| = const of an analytic function", "levelpath"};
  app.footer(kSyntaxHelp);
  app.require_subcommand(1);

  Options opt;
  CLI::App* trace_cmd = app.add_subcommand("trace", "Trace one level path from --seed");
  add_trace_options(*trace_cmd, opt);
  trace_cmd->add_option("--seed", opt.seed, "Starting point z0")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Trace one level path per seed");
  add_trace_options(*sweep_cmd, opt);
  sweep_cmd->add_option("--seeds", opt.seeds, "';'-separated starting points")->required();

  CLI::App* probe_cmd = app.add_subcommand("probe", "Print tangent, curvature, residual and modulus at a point");
  add_function_options(*probe_cmd, opt);
  probe_cmd->add_option("--at", opt.at, "Evaluation point")->required();
  probe_cmd->add_option("--orientation", opt.orientation, "+1 or -1")
      ->check(CLI::IsMember({"+1", "-1", "1"}))
      ->capture_default_str();

  std::vector<const char*> argv{"levelpath"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  if (trace_cmd->parsed()) return run_trace(opt, out, err);
  if (sweep_cmd->parsed()) return run_sweep(opt, out, err);
  return run_probe(opt, out, err);
}

}  // namespace levelpath::cli
