#include <spinpair/cli_app.hpp>

#include <spinpair/cli_io.hpp>
#include <spinpair/errors.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <stdexcept>

namespace spinpair {

namespace {

enum class Command { chempot, sweep, compare, spectrum, experiment };

struct Flags {
  RunConfig config;
  std::string format = "csv";
  std::string model;
  CLI::Option* temp_opt = nullptr;
};

void add_point_flags(CLI::App& app, Flags& f) {
  app.add_option("--alpha-mev", f.config.alpha_mev, "Exchange coupling alpha in meV")
      ->capture_default_str();
  f.temp_opt = app.add_option("--temp-k", f.config.temperature_k, "Temperature in K")
                   ->capture_default_str();
  app.add_flag("--quantum-limit", f.config.quantum_limit, "Use beta -> infinity instead of --temp-k");
  app.add_option("--output", f.config.output_path, "Output file, '-' for stdout (prefix for tsv-plot)")
      ->capture_default_str();
  app.add_option("--format", f.format, "csv, json or tsv-plot")->capture_default_str();
}

void add_linewidth_flag(CLI::App& app, Flags& f) {
  app.add_option("--linewidth-mev", f.config.linewidth_mev,
                 "Half-width of the resonance window in meV (default alpha/10)");
}

void add_model_flag(CLI::App& app, Flags& f, const char* help) {
  app.add_option("--model", f.model, help)->check(CLI::IsMember({"qsm", "lshv"}));
}

void finish_config(Flags& f) {
  if (f.config.quantum_limit && f.temp_opt && f.temp_opt->count() > 0) {
    throw std::invalid_argument("--quantum-limit and --temp-k are mutually exclusive");
  }
  f.config.format = parse_format(f.format);
  if (!f.model.empty()) f.config.model = f.model == "qsm" ? Model::qsm : Model::lshv;
}

void emit(const Flags& f, std::ostream& out, const std::function<void(std::ostream&)>& csv,
          const std::function<nlohmann::ordered_json()>& to_json,
          const std::function<std::vector<PlotFile>()>& plots) {
  const RunConfig& c = f.config;
  switch (c.format) {
    case OutputFormat::csv:
      write_output(c.output_path, out, csv);
      break;
    case OutputFormat::json: {
      const auto doc = to_json();
      write_output(c.output_path, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
      break;
    }
    case OutputFormat::tsv_plot:
      if (!plots) throw std::invalid_argument("--format tsv-plot is not available for this command");
      write_plot_files(c.output_path, plots());
      break;
  }
}

int dispatch(Command cmd, Flags& f, std::ostream& out) {
  finish_config(f);
  const RunConfig& c = f.config;
  switch (cmd) {
    case Command::chempot: {
      const auto r = run_chempot(c);
      emit(f, out, [&](std::ostream& o) { write_chempot_csv(o, r); },
           [&] { return chempot_to_json(r); }, nullptr);
      break;
    }
    case Command::sweep: {
      const auto rows = run_sweep(c);
      emit(f, out, [&](std::ostream& o) { write_sweep_csv(o, rows); },
           [&] { return sweep_to_json(c.alpha_mev, rows); },
           [&] { return sweep_plot_files(rows); });
      break;
    }
    case Command::compare: {
      const auto report = run_compare(c);
      emit(f, out, [&](std::ostream& o) { write_report_csv(o, report); },
           [&] { return report_to_json(report); }, [&] { return report_plot_files(report); });
      break;
    }
    case Command::spectrum: {
      const auto spectra = run_spectrum(c);
      emit(f, out, [&](std::ostream& o) { write_spectrum_csv(o, spectra); },
           [&] { return spectrum_to_json(c, spectra); },
           [&] { return spectrum_plot_files(spectra); });
      break;
    }
    case Command::experiment: {
      const auto outcome = run_experiment(c);
      emit(f, out, [&](std::ostream& o) { write_experiment_csv(o, c, outcome); },
           [&] { return experiment_to_json(c, outcome); }, nullptr);
      break;
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Thermodynamics and spectra of two exchange-coupled spin-1/2 particles: entangled "
      "(quantum-statistical) versus separable (local hidden-variable) descriptions.\n"
      "Without a subcommand, runs 'chempot' at the given point.",
      "spinpair"};
  app.require_subcommand(0, 1);

  Flags top, sweep, compare, spectrum, experiment, chempot;
  add_point_flags(app, top);

  auto* chempot_cmd = app.add_subcommand("chempot", "Partition functions and chemical potentials at one temperature");
  add_point_flags(*chempot_cmd, chempot);

  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate both models over a geometric temperature grid");
  add_point_flags(*sweep_cmd, sweep);
  sweep_cmd->add_option("--tmin-k", sweep.config.t_min_k, "Lowest temperature in K")->capture_default_str();
  sweep_cmd->add_option("--tmax-k", sweep.config.t_max_k, "Highest temperature in K")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep.config.steps, "Number of temperatures (>= 2)")->capture_default_str();

  auto* compare_cmd = app.add_subcommand("compare", "Photon energies absorbed by only one of the models");
  add_point_flags(*compare_cmd, compare);
  add_linewidth_flag(*compare_cmd, compare);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Energy levels, populations and transition lines");
  add_point_flags(*spectrum_cmd, spectrum);
  add_model_flag(*spectrum_cmd, spectrum, "Restrict to qsm or lshv (default both)");

  auto* experiment_cmd = app.add_subcommand("experiment", "Monte Carlo photon-absorption run");
  add_point_flags(*experiment_cmd, experiment);
  add_linewidth_flag(*experiment_cmd, experiment);
  add_model_flag(*experiment_cmd, experiment, "qsm (default) or lshv");
  experiment_cmd->add_option("--photon-mev", experiment.config.photon_mev,
                             "Photon energy in meV (default 3 alpha)");
  experiment_cmd->add_option("--photons", experiment.config.photons, "Number of photons fired")
      ->capture_default_str();
  experiment_cmd->add_option("--seed", experiment.config.seed, "Random seed")->capture_default_str();

  // CLI11 parses in reverse order from a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "spinpair: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (chempot_cmd->parsed()) return dispatch(Command::chempot, chempot, out);
    if (sweep_cmd->parsed()) return dispatch(Command::sweep, sweep, out);
    if (compare_cmd->parsed()) return dispatch(Command::compare, compare, out);
    if (spectrum_cmd->parsed()) return dispatch(Command::spectrum, spectrum, out);
    if (experiment_cmd->parsed()) return dispatch(Command::experiment, experiment, out);
    return dispatch(Command::chempot, top, out);
  } catch (const PhysicsGuardError& e) {
    err << "spinpair: " << e.what() << "\n";
    return kExitPhysicsGuard;
  } catch (const IoError& e) {
    err << "spinpair: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "spinpair: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "spinpair: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace spinpair
