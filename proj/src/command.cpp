#include "ecochain/command.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "ecochain/config.hpp"
#include "ecochain/csv.hpp"
#include "ecochain/equilibria.hpp"
#include "ecochain/figures.hpp"
#include "ecochain/simulate.hpp"
#include "ecochain/stability.hpp"
#include "ecochain/svg.hpp"

namespace ecochain {

namespace {

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunConfig load_config(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return parse_config(read_all(in));
  std::ifstream file(path);
  if (!file) throw ValidationError("cannot open config file " + path);
  return parse_config(read_all(file));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + path);
  file << content;
}

std::string complex_text(const Complex& z) {
  if (z.imag() == 0.0) return format_number(z.real());
  return format_number(z.real()) + (z.imag() < 0 ? "-" : "+") + format_number(std::abs(z.imag())) + "i";
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto traj = integrate(cfg.variant, cfg.params, cfg.initial, cfg.integrator);
  const std::string csv = emit_csv(traj);
  if (cfg.out) {
    write_file(*cfg.out, csv);
    out << "wrote " << traj.size() << " states to " << *cfg.out << "\n";
  } else {
    out << csv;
  }
  if (cfg.svg) write_file(*cfg.svg, emit_svg(traj, std::string(variant_name(cfg.variant))));
  if (!traj.completed) {
    err << "error: " << traj.termination_reason << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_equilibria(const RunConfig& cfg, std::ostream& out) {
  out << "variant," << variant_name(cfg.variant) << "\n";
  if (!is_malthus(cfg.variant)) {
    const auto rho = thresholds(cfg.params);
    out << "rho1," << format_number(rho.rho1) << "\nrho2," << format_number(rho.rho2) << "\n";
  }
  out << "label,P,S,I,V,feasible,provenance,residual,note\n";
  for (const auto& eq : equilibria(cfg.variant, cfg.params)) {
    out << label_name(eq.label);
    for (Eigen::Index i = 0; i < 4; ++i) out << ',' << format_number(eq.state[i]);
    out << ',' << (eq.feasible ? 1 : 0) << ',' << provenance_name(eq.provenance) << ','
        << format_number(eq.residual) << ',' << eq.note << "\n";
  }
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg, std::ostream& out) {
  out << "variant " << variant_name(cfg.variant) << "\n";
  for (const auto& eq : equilibria(cfg.variant, cfg.params)) {
    out << "\n[" << label_name(eq.label) << "] ";
    if (eq.provenance == Provenance::Absent) {
      out << eq.note << "\n";
      continue;
    }
    out << (eq.feasible ? "feasible" : "infeasible") << " state (";
    for (Eigen::Index i = 0; i < 4; ++i) out << (i ? ", " : "") << format_number(eq.state[i]);
    out << ")\n";
    const auto sc = classify(cfg.variant, cfg.params, eq);
    out << "  eigenvalues:";
    for (const auto& z : sc.eigenvalues) out << ' ' << complex_text(z);
    out << "\n  char poly:";
    for (double a : sc.char_poly.coeffs) out << ' ' << format_number(a);
    out << "\n  routh-hurwitz: " << outcome_name(sc.routh_hurwitz.outcome);
    if (!sc.routh_hurwitz.condition.empty()) out << " at " << sc.routh_hurwitz.condition;
    out << "\n  class: " << kind_name(sc.kind);
    if (sc.nonhyperbolic && sc.kind != StabilityKind::Nonhyperbolic) out << " (also nonhyperbolic)";
    out << "\n";
  }
  if (cfg.variant == Variant::MalthusEpidemic) {
    try {
      const auto cert = malthus_coexistence_certificate(cfg.params);
      out << "\ncoexistence trace " << format_number(cert.trace) << " (scale " << format_number(cert.scale)
          << "), routh-hurwitz " << outcome_name(cert.routh_hurwitz.outcome) << " at "
          << cert.routh_hurwitz.condition << "\n";
    } catch (const ValidationError&) {
      out << "\ncoexistence point infeasible; no certificate\n";
    }
  }
  return kExitOk;
}

int cmd_sweep(RunConfig cfg, std::ostream& out) {
  if (!cfg.sweep_param || !cfg.sweep_lo || !cfg.sweep_hi || !cfg.sweep_n) {
    throw ValidationError("sweep needs --param, --lo, --hi and --n (or sweep_* config keys)");
  }
  const auto table =
      bifurcation_sweep(cfg.variant, cfg.params, *cfg.sweep_param, *cfg.sweep_lo, *cfg.sweep_hi, *cfg.sweep_n);
  const std::string csv = emit_csv(table);
  if (cfg.out) {
    write_file(*cfg.out, csv);
    out << "wrote " << table.rows.size() << " rows to " << *cfg.out << "\n";
    for (const auto& c : table.crossings) {
      out << c.threshold << " = 1 at " << table.param << " = " << format_number(c.value) << "\n";
    }
  } else {
    out << csv;
  }
  return kExitOk;
}

int cmd_reproduce(const std::string& name, const std::string& out_dir, std::ostream& out) {
  const Figure fig = parse_figure(name);
  const auto report = reproduce(fig);
  out << "reproduce " << figure_name(fig) << " (" << variant_name(figure_variant(fig)) << ")\n";
  for (const auto& note : report.notes) out << note << "\n";
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  if (!out_dir.empty()) {
    const std::string stem = out_dir + "/" + std::string(figure_name(fig));
    write_file(stem + ".csv", emit_csv(report.trajectory));
    write_file(stem + ".svg", emit_svg(report.trajectory, std::string(figure_name(fig))));
  }
  out << (report.passed() ? "PASS" : "FAIL") << " " << figure_name(fig) << "\n";
  return report.passed() ? kExitOk : kExitNumerical;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ecoepidemic food chain: equilibria, stability, sweeps and simulation", "ecochain"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path, svg_path, sweep_param, figure, out_dir;
  double lo = 0.0, hi = 0.0;
  int n = 0;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat JSON config (default: stdin)");
  };
  auto* simulate = app.add_subcommand("simulate", "integrate a trajectory and write t,P,S,I,V CSV");
  add_config(simulate);
  simulate->add_option("--out", out_path, "CSV output path (default: stdout)");
  simulate->add_option("--svg", svg_path, "SVG plot output path");
  auto* equilibria_cmd = app.add_subcommand("equilibria", "print equilibria with feasibility and residuals");
  add_config(equilibria_cmd);
  auto* stability = app.add_subcommand("stability", "eigenvalues, Routh-Hurwitz and classification per equilibrium");
  add_config(stability);
  auto* sweep = app.add_subcommand("sweep", "one-parameter sweep with threshold crossings");
  add_config(sweep);
  auto* param_opt = sweep->add_option("--param", sweep_param, "parameter to vary");
  auto* lo_opt = sweep->add_option("--lo", lo, "lower end");
  auto* hi_opt = sweep->add_option("--hi", hi, "upper end");
  auto* n_opt = sweep->add_option("--n", n, "number of grid values");
  sweep->add_option("--out", out_path, "CSV output path (default: stdout)");
  auto* reproduce_cmd = app.add_subcommand("reproduce", "run a published figure's parameter set and check it");
  reproduce_cmd->add_option("figure", figure, "fig1, fig2, fig3 or fig4")->required();
  reproduce_cmd->add_option("--out-dir", out_dir, "also write <fig>.csv and <fig>.svg here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (reproduce_cmd->parsed()) return cmd_reproduce(figure, out_dir, out);

    RunConfig cfg = load_config(config_path, in);
    if (!out_path.empty()) cfg.out = out_path;
    if (!svg_path.empty()) cfg.svg = svg_path;
    if (simulate->parsed()) return cmd_simulate(cfg, out, err);
    if (equilibria_cmd->parsed()) return cmd_equilibria(cfg, out);
    if (stability->parsed()) return cmd_stability(cfg, out);
    if (sweep->parsed()) {
      if (param_opt->count()) cfg.sweep_param = sweep_param;
      if (lo_opt->count()) cfg.sweep_lo = lo;
      if (hi_opt->count()) cfg.sweep_hi = hi;
      if (n_opt->count()) cfg.sweep_n = n;
      return cmd_sweep(cfg, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace ecochain
