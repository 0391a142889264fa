#include "qie/cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qie/cli/config.hpp"
#include "qie/cli/exit_codes.hpp"
#include "qie/cli/figures.hpp"
#include "qie/cli/parallel.hpp"
#include "qie/cli/simulate.hpp"
#include "qie/cli/svg.hpp"
#include "qie/cli/sweep.hpp"
#include "qie/cli/validate.hpp"
#include "qie/errors.hpp"

namespace qie::cli {
namespace {

struct GlobalOptions {
  std::optional<double> omega;
  std::string out;
  unsigned threads = 0;
  std::string format = "csv";
};

/// Writes to --out when given, else to `out`.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

int cmd_sweep(const GlobalOptions& g, const std::string& config_path, std::ostream& out,
              std::ostream& err) {
  SweepConfig cfg;
  try {
    cfg = load_sweep_config(config_path);
    if (g.omega) {
      cfg.omega = *g.omega;
      cfg.validate();
    }
  } catch (const ConfigError& e) {
    err << "qie sweep: " << config_path << ": " << e.what() << "\n";
    return kExitUsage;
  }
  const auto result = run_sweep(cfg, resolve_threads(g.threads));
  std::ostringstream buf;
  write_table(result.table, parse_output_format(g.format), buf);
  emit(buf.str(), g.out, out);
  if (result.failed_rows > 0) {
    err << "qie sweep: " << result.failed_rows << " row(s) failed; see the status column\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_figure(const GlobalOptions& g, const std::string& id, bool no_svg, std::ostream& out,
               std::ostream& err) {
  if (g.omega && *g.omega != 1.0) {
    err << "qie figure: figures are defined at omega = 1; --omega is ignored\n";
  }
  FigureOptions opts;
  opts.out_dir = g.out.empty() ? "figures" : g.out;
  opts.threads = resolve_threads(g.threads);
  opts.svg = !no_svg;
  opts.format = parse_output_format(g.format);
  std::vector<std::string> ids;
  if (id == "all") {
    ids = figure_ids();
  } else if (std::find(figure_ids().begin(), figure_ids().end(), id) != figure_ids().end()) {
    ids = {id};
  } else {
    err << "qie figure: unknown figure id '" << id << "'\n";
    return kExitUsage;
  }
  bool ok = true;
  for (const auto& f : ids) {
    const auto result = run_figure(f, opts);
    for (const auto& c : result.claims) {
      out << f << ' ' << (c.passed ? "PASS " : "FAIL ") << c.id;
      if (!c.detail.empty()) out << "  (" << c.detail << ")";
      out << "\n";
    }
    ok = ok && result.all_passed();
  }
  return ok ? kExitOk : kExitValidation;
}

int cmd_validate(const GlobalOptions& g, const std::string& level, std::ostream& out) {
  ValidateOptions opts;
  opts.level = parse_validation_level(level);
  opts.threads = resolve_threads(g.threads);
  const auto report = run_validation(opts);
  emit(report.to_json(), g.out, out);
  if (!g.out.empty()) {
    for (const auto& c : report.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.id << "  worst=" << format_number(c.worst)
          << " tol=" << format_number(c.tolerance) << "\n";
    }
  }
  return report.all_passed() ? kExitOk : kExitValidation;
}

int cmd_simulate(const GlobalOptions& g, SimulateOptions opts, const std::string& mode, bool json,
                 std::ostream& out) {
  opts.spec.omega = g.omega.value_or(1.0);
  opts.mode = parse_coupling_mode(mode);
  opts.threads = resolve_threads(g.threads);
  const auto outcome = run_simulation(opts);
  emit(json ? format_json(outcome, opts) : format_key_value(outcome, opts), g.out, out);
  return kExitOk;
}

}  // namespace

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Work statistics, dynamics and Monte Carlo cycles of collective and independent "
               "multi-qubit information engines"};
  app.name("qie");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--omega", g.omega, "Level splitting omega (default 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out,
                 "Output file (sweep, validate, simulate) or directory (figure; default figures/)");
  app.add_option("--threads", g.threads,
                 "Worker threads; 0 = all cores. QIE_MAX_THREADS caps the value");
  app.add_option("--format", g.format, "Table format for sweep and figure data")
      ->check(CLI::IsMember({"csv", "jsonl"}));

  auto* sweep = app.add_subcommand("sweep", "Evaluate statistics over an (n, beta, mode) grid");
  std::string config_path;
  sweep->add_option("config", config_path, "YAML sweep configuration")->required();

  auto* figure = app.add_subcommand("figure", "Regenerate figure data, SVG previews and claim checks");
  std::string figure_id;
  bool no_svg = false;
  figure->add_option("id", figure_id, "fig2, fig3a, fig3b, fig4, fig5, fig6 or all")->required();
  figure->add_flag("--no-svg", no_svg, "Skip the SVG previews");

  auto* validate = app.add_subcommand("validate", "Run the cross-validation suite");
  std::string level = "quick";
  validate->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo engine cycles");
  SimulateOptions sim;
  std::string mode = "collective";
  bool json = false;
  simulate->add_option("--n", sim.spec.n, "Number of qubits")->capture_default_str();
  simulate->add_option("--beta", sim.spec.beta, "Inverse temperature")->capture_default_str();
  simulate->add_option("--mode", mode, "collective or independent")->capture_default_str();
  simulate->add_option("--cycles", sim.cycles, "Number of cycles")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "64-bit seed")->capture_default_str();
  simulate->add_option("--records", sim.records_path, "Write per-cycle records to this CSV");
  simulate->add_flag("--dynamical", sim.dynamical,
                     "Thermalize by Lindblad evolution between cycles (collective, n <= 12)");
  simulate->add_option("--gamma", sim.gamma, "Bath rate Gamma(omega) for --dynamical")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--t-therm", sim.thermalization_time,
                       "Thermalization time per cycle for --dynamical")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simulate->add_flag("--json", json, "Write the report as JSON instead of key=value lines");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qie: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (*sweep) return cmd_sweep(g, config_path, out, err);
    if (*figure) return cmd_figure(g, figure_id, no_svg, out, err);
    if (*validate) return cmd_validate(g, level, out);
    if (*simulate) return cmd_simulate(g, sim, mode, json, out);
  } catch (const DomainError& e) {
    err << "qie: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "qie: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConsistencyError& e) {
    err << "qie: consistency failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "qie: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace qie::cli
