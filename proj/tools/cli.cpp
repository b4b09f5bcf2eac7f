#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "thiele/core.hpp"
#include "thiele/io.hpp"
#include "thiele/version.hpp"

namespace thiele::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(s);
  while (std::getline(is, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double resolve_tol(const std::optional<double>& flag, const std::optional<std::string>& env) {
  double tol = 5e-15;
  if (flag) {
    tol = *flag;
  } else if (env) {
    if (!io::parse_double(*env, tol)) throw UsageError("THIELE_TOL is not a number: " + *env);
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw UsageError("tolerance must be a positive number");
  return tol;
}

// Writes to the named file, or to `fallback` when the path is "-".
template <typename Fn>
void with_sink(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot open " + path + " for writing");
  fn(file);
  file.close();
  if (!file) throw Error("write to " + path + " failed");
}

struct FitArgs {
  std::string input;
  std::string output;
  std::optional<double> tol;
  std::optional<std::size_t> max_order;
  bool fixed_order = false;
};

int cmd_fit(const FitArgs& a, const std::optional<std::string>& env_tol, std::ostream& out) {
  const double tol = resolve_tol(a.tol, env_tol);
  const SampleSet data = io::read_samples(std::filesystem::path(a.input));
  const FitConfig cfg{tol, a.max_order};

  std::optional<ThieleModel> model;
  bool stopped_early = false;
  if (a.fixed_order) {
    model = fit_fixed_order(data);
  } else {
    FitResult fit = fit_adaptive(data, cfg);
    stopped_early = fit.report.stopped_early;
    model = std::move(fit.model);
  }

  with_sink(a.output, out, [&](std::ostream& os) {
    io::write_model(*model, io::ModelMetadata{std::string(kVersion), cfg, stopped_early}, os);
  });

  double max_err = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    max_err = std::max(max_err, std::abs(eval_cfrac(*model, data.xs()[i]) - data.fs()[i]));
  out << "order=" << model->order() << " max_node_error=" << io::format_double(max_err)
      << " stopped_early=" << (stopped_early ? "true" : "false") << '\n';
  return kOk;
}

struct EvalArgs {
  std::string model;
  std::string grid;
  std::string output = "-";
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto grid = parse_grid(a.grid);
  if (!grid) throw UsageError("grid must be lo:hi:count with lo < hi and count >= 2");
  const ThieleModel model = io::read_model(std::filesystem::path(a.model)).model;
  with_sink(a.output, out, [&](std::ostream& os) {
    os << "x,Cx\n";
    for (std::size_t i = 0; i < grid->count; ++i) {
      const double x = i + 1 == grid->count
                           ? grid->hi
                           : grid->lo + (grid->hi - grid->lo) * static_cast<double>(i) /
                                            static_cast<double>(grid->count - 1);
      os << io::format_double(x) << ',' << io::format_double(eval_cfrac(model, x)) << '\n';
    }
  });
  return kOk;
}

struct NewmanArgs {
  int n_min = 5;
  int n_max = 50;
  std::string report = "-";
  std::string grid = "0:0.01:10000";
  bool full_grid = false;
  std::optional<double> tol;
  std::size_t pole_samples = 20001;
  std::size_t max_failures = 0;
};

int cmd_newman(const NewmanArgs& a, const std::optional<std::string>& env_tol, std::ostream& out,
               std::ostream& err) {
  if (a.n_min < 1 || a.n_max < a.n_min) throw UsageError("need 1 <= n-min <= n-max");
  if (a.pole_samples < 2) throw UsageError("pole-samples must be >= 2");
  newman::StudyConfig cfg;
  cfg.n_min = a.n_min;
  cfg.n_max = a.n_max;
  cfg.tol = resolve_tol(a.tol, env_tol);
  cfg.pole_samples = a.pole_samples;
  if (a.full_grid) {
    cfg.grid = {-1.0, 1.0, 10000};
  } else {
    const auto grid = parse_grid(a.grid);
    if (!grid) throw UsageError("grid must be lo:hi:count with lo < hi and count >= 2");
    cfg.grid = *grid;
  }

  const auto rows = newman::run_newman_study(cfg);
  with_sink(a.report, out, [&](std::ostream& os) { io::write_study_csv(rows, os); });

  std::size_t failures = 0;
  for (const auto& r : rows) {
    if (r.failed()) {
      ++failures;
      err << "n=" << r.n << ": fit failed: " << *r.error << '\n';
    }
  }
  // Summary goes to stderr when the report itself is on stdout.
  std::ostream& summary = a.report == "-" ? err : out;
  if (const auto slope = newman::even_n_trend_slope(rows)) {
    summary << "even-n trend: slope of log10(sup_err) vs sqrt(n) = " << io::format_double(*slope)
            << '\n';
  } else {
    summary << "even-n trend: fewer than two even n, no slope\n";
  }
  if (failures > a.max_failures) {
    err << failures << " row(s) failed (allowed " << a.max_failures << ")\n";
    return kRuntimeError;
  }
  return kOk;
}

int cmd_demo_breakdown(int n, const std::optional<std::string>& env_tol, std::ostream& out) {
  if (n < 1) throw UsageError("n must be >= 1");
  const SampleSet data = newman::newman_points(n);
  out << "Newman points n=" << n << " (" << data.size() << " points), |x|\n";
  try {
    const ThieleModel m = fit_fixed_order(data);
    out << "fixed order: succeeded with order " << m.order() << '\n';
  } catch (const BreakdownError& e) {
    out << "fixed order: " << e.what() << '\n';
  }
  const FitResult fit = fit_adaptive(data, FitConfig{resolve_tol(std::nullopt, env_tol), std::nullopt});
  out << "adaptive: order " << fit.model.order() << ", node error 2-norm "
      << io::format_double(newman::node_error_norm(fit.model, data)) << '\n';
  return kOk;
}

}  // namespace

std::optional<newman::GridSpec> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) return std::nullopt;
  newman::GridSpec g;
  double count = 0.0;
  if (!io::parse_double(parts[0], g.lo) || !io::parse_double(parts[1], g.hi) ||
      !io::parse_double(parts[2], count))
    return std::nullopt;
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !(g.lo < g.hi)) return std::nullopt;
  if (!(count >= 2.0) || count != std::floor(count) || count > 1e9) return std::nullopt;
  g.count = static_cast<std::size_t>(count);
  return g;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_tol) {
  CLI::App app{"Adaptive Thiele continued-fraction interpolation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a continued fraction to x,f samples");
  fit_cmd->add_option("--input", fit.input, "Sample CSV")->required();
  fit_cmd->add_option("--output", fit.output, "Model JSON ('-' for stdout)")->required();
  fit_cmd->add_option("--tol", fit.tol, "Relative stopping tolerance (default 5e-15)");
  fit_cmd->add_option("--max-order", fit.max_order, "Upper bound on the model order");
  fit_cmd->add_flag("--fixed-order", fit.fixed_order, "Take points in file order (may break down)");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a uniform grid");
  eval_cmd->add_option("--model", ev.model, "Model JSON")->required();
  eval_cmd->add_option("--grid", ev.grid, "lo:hi:count")->required();
  eval_cmd->add_option("--output", ev.output, "Output CSV ('-' for stdout)");

  NewmanArgs nw;
  auto* newman_cmd = app.add_subcommand("newman", "Run the Newman |x| convergence study");
  newman_cmd->add_option("--n-min", nw.n_min)->capture_default_str();
  newman_cmd->add_option("--n-max", nw.n_max)->capture_default_str();
  newman_cmd->add_option("--report", nw.report, "Study CSV ('-' for stdout)");
  newman_cmd->add_option("--grid", nw.grid, "Sup-error grid lo:hi:count")->capture_default_str();
  newman_cmd->add_flag("--full-grid", nw.full_grid, "Use -1:1:10000 for the sup error");
  newman_cmd->add_option("--tol", nw.tol, "Relative stopping tolerance (default 5e-15)");
  newman_cmd->add_option("--pole-samples", nw.pole_samples)->capture_default_str();
  newman_cmd->add_option("--max-failures", nw.max_failures, "Failed rows tolerated before exit 1")
      ->capture_default_str();

  int demo_n = 5;
  auto* demo_cmd = app.add_subcommand("demo-breakdown",
                                      "Contrast fixed-order and adaptive fits on Newman points");
  demo_cmd->add_option("--n", demo_n)->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit, env_tol, out);
    if (eval_cmd->parsed()) return cmd_eval(ev, out);
    if (newman_cmd->parsed()) return cmd_newman(nw, env_tol, out, err);
    if (demo_cmd->parsed()) return cmd_demo_breakdown(demo_n, env_tol, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace thiele::cli
