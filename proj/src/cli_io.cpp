#include <spinpair/cli_io.hpp>

#include <spinpair/errors.hpp>
#include <spinpair/lshv_model.hpp>
#include <spinpair/operator_core.hpp>
#include <spinpair/qsm_ensemble.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spinpair {

namespace {

using json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

json json_real(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_real(v));
}

void require_positive_flag(double v, const char* flag) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(flag) + " must be a positive number, got " +
                                format_real(v));
  }
}

json levels_json(const PatternSpectrum& s) {
  json levels = json::array();
  for (std::size_t k = 0; k < s.pattern.size(); ++k) {
    const auto& l = s.pattern[k];
    levels.push_back({{"energy_mev", json_real(l.energy_mev)},
                      {"degeneracy", l.degeneracy},
                      {"label", l.label},
                      {"population", json_real(s.populations[k])}});
  }
  return levels;
}

json lines_json(const std::vector<TransitionLine>& lines) {
  json out = json::array();
  for (const auto& l : lines) {
    out.push_back({{"gap_mev", json_real(l.gap_mev)},
                   {"multiplicity", l.multiplicity},
                   {"from", l.from_label},
                   {"to", l.to_label}});
  }
  return out;
}

json spectrum_json(const PatternSpectrum& s) {
  return {{"model", to_string(s.pattern.model())},
          {"levels", levels_json(s)},
          {"lines", lines_json(s.lines)}};
}

void put_beta(json& j, const Beta& beta) {
  j["quantum_limit"] = beta.is_quantum_limit();
  if (beta.is_quantum_limit()) {
    j["temperature_k"] = nullptr;
    j["beta_per_mev"] = nullptr;
  } else {
    j["temperature_k"] = json_real(1.0 / (kBoltzmannMeVPerK * beta.value()));
    j["beta_per_mev"] = json_real(beta.value());
  }
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "tsv-plot") return OutputFormat::tsv_plot;
  throw std::invalid_argument("--format must be one of csv, json, tsv-plot; got '" + s + "'");
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::tsv_plot: return "tsv-plot";
  }
  return "?";
}

Beta RunConfig::beta() const {
  if (quantum_limit) return Beta::quantum_limit();
  return Beta::finite(beta_from_temperature(temperature_k, "--temp-k"));
}

void RunConfig::validate() const {
  require_positive_flag(alpha_mev, "--alpha-mev");
  if (!quantum_limit) beta_from_temperature(temperature_k, "--temp-k");
  if (linewidth_mev) require_positive_flag(*linewidth_mev, "--linewidth-mev");
  if (photon_mev) require_positive_flag(*photon_mev, "--photon-mev");
  if (photons < 1) throw std::invalid_argument("--photons must be >= 1");
  if (format == OutputFormat::tsv_plot && (output_path.empty() || output_path == "-")) {
    throw std::invalid_argument("--format tsv-plot writes several files; give a prefix with --output");
  }
}

void RunConfig::validate_sweep() const {
  validate();
  beta_from_temperature(t_min_k, "--tmin-k");
  beta_from_temperature(t_max_k, "--tmax-k");
  if (!(t_min_k < t_max_k)) {
    throw std::invalid_argument("--tmin-k must be smaller than --tmax-k");
  }
  if (steps < 2) throw std::invalid_argument("--steps must be >= 2");
}

SweepRow sweep_row(double alpha_mev, double temperature_k) {
  const double beta = beta_from_temperature(temperature_k);
  const CouplingParams params(alpha_mev, Beta::finite(beta));
  const double x = params.x();
  return {temperature_k,
          beta,
          x,
          pair_partition_qsm(x),
          pair_log_partition_lshv(alpha_mev, beta),
          chemical_potential_qsm(params),
          chemical_potential_lshv(params),
          entropy_over_k(x),
          s_coefficient(x)};
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
  config.validate_sweep();
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(config.steps));
  const double log_ratio = std::log(config.t_max_k / config.t_min_k);
  for (int i = 0; i < config.steps; ++i) {
    double t = config.t_min_k * std::exp(log_ratio * i / (config.steps - 1));
    if (i == 0) t = config.t_min_k;
    if (i == config.steps - 1) t = config.t_max_k;
    rows.push_back(sweep_row(config.alpha_mev, t));
  }
  return rows;
}

ChemPotRecord run_chempot(const RunConfig& config) {
  config.validate();
  const CouplingParams params(config.alpha_mev, config.beta());
  ChemPotRecord r{};
  r.alpha_mev = config.alpha_mev;
  r.quantum_limit = params.is_quantum_limit();
  r.temperature_k = r.quantum_limit ? 0.0 : config.temperature_k;
  r.beta_per_mev = r.quantum_limit ? kInf : params.beta().value();
  r.x = params.x();
  r.ln_z_qsm = pair_partition_qsm(r.x);
  r.ln_z_lshv = r.quantum_limit ? kInf : pair_log_partition_lshv(r.alpha_mev, r.beta_per_mev);
  r.mu_qsm_mev = chemical_potential_qsm(params);
  r.mu_lshv_mev = chemical_potential_lshv(params);
  r.mu_pair_sum_qsm_mev = 2.0 * r.mu_qsm_mev;
  r.entropy_over_k = entropy_over_k(r.x);
  r.s_coefficient = s_coefficient(r.x);
  return r;
}

std::vector<PatternSpectrum> run_spectrum(const RunConfig& config) {
  config.validate();
  const Beta beta = config.beta();
  std::vector<PatternSpectrum> out;
  auto add = [&](EnergyPattern p) {
    auto lines = transition_lines(p);
    auto pops = boltzmann_populations(p, beta);
    out.push_back({std::move(p), std::move(lines), std::move(pops)});
  };
  if (!config.model || *config.model == Model::qsm) add(qsm_pattern(config.alpha_mev));
  if (!config.model || *config.model == Model::lshv) add(lshv_pattern(config.alpha_mev));
  return out;
}

ComparisonReport run_compare(const RunConfig& config) {
  config.validate();
  return distinguish(config.alpha_mev, config.beta(), config.linewidth());
}

AbsorptionOutcome run_experiment(const RunConfig& config) {
  config.validate();
  const Model model = config.model.value_or(Model::qsm);
  const EnergyPattern pattern =
      model == Model::qsm ? qsm_pattern(config.alpha_mev) : lshv_pattern(config.alpha_mev);
  return simulate_photon_stream(pattern, config.beta(), config.photon(), config.linewidth(),
                                config.photons, config.seed);
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_real(r.temperature_k) << ',' << format_real(r.beta_per_mev) << ','
        << format_real(r.x) << ',' << format_real(r.ln_z_qsm) << ',' << format_real(r.ln_z_lshv)
        << ',' << format_real(r.mu_qsm_mev) << ',' << format_real(r.mu_lshv_mev) << ','
        << format_real(r.entropy_over_k) << ',' << format_real(r.s_coefficient) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw std::invalid_argument("read_sweep_csv: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 9> v{};
    std::istringstream fields(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(fields, cell, ',')) {
      if (k >= v.size()) throw std::invalid_argument("read_sweep_csv: too many columns");
      v[k++] = std::stod(cell);
    }
    if (k != v.size()) throw std::invalid_argument("read_sweep_csv: too few columns");
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
  }
  return rows;
}

json sweep_to_json(double alpha_mev, const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"temperature_k", json_real(r.temperature_k)},
                   {"beta_per_mev", json_real(r.beta_per_mev)},
                   {"x", json_real(r.x)},
                   {"ln_z_qsm", json_real(r.ln_z_qsm)},
                   {"ln_z_lshv", json_real(r.ln_z_lshv)},
                   {"mu_qsm_mev", json_real(r.mu_qsm_mev)},
                   {"mu_lshv_mev", json_real(r.mu_lshv_mev)},
                   {"entropy_over_k", json_real(r.entropy_over_k)},
                   {"s_coefficient", json_real(r.s_coefficient)}});
  }
  return {{"alpha_mev", json_real(alpha_mev)}, {"rows", std::move(arr)}};
}

json chempot_to_json(const ChemPotRecord& r) {
  return {{"alpha_mev", json_real(r.alpha_mev)},
          {"quantum_limit", r.quantum_limit},
          {"temperature_k", r.quantum_limit ? json(nullptr) : json_real(r.temperature_k)},
          {"beta_per_mev", json_real(r.beta_per_mev)},
          {"x", json_real(r.x)},
          {"ln_z_qsm", json_real(r.ln_z_qsm)},
          {"ln_z_lshv", json_real(r.ln_z_lshv)},
          {"mu_qsm_mev", json_real(r.mu_qsm_mev)},
          {"mu_lshv_mev", json_real(r.mu_lshv_mev)},
          {"mu_pair_sum_qsm_mev", json_real(r.mu_pair_sum_qsm_mev)},
          {"entropy_over_k", json_real(r.entropy_over_k)},
          {"s_coefficient", json_real(r.s_coefficient)}};
}

json report_to_json(const ComparisonReport& report) {
  json j;
  j["alpha_mev"] = json_real(report.alpha_mev);
  put_beta(j, report.beta);
  j["linewidth_mev"] = json_real(report.linewidth_mev);
  j["qsm"] = spectrum_json(report.qsm);
  j["lshv"] = spectrum_json(report.lshv);
  json disc = json::array();
  for (const auto& d : report.discriminating_energies) {
    disc.push_back({{"energy_mev", json_real(d.energy_mev)}, {"absorbed_by", to_string(d.absorbed_by)}});
  }
  j["discriminating_energies"] = std::move(disc);
  return j;
}

json spectrum_to_json(const RunConfig& config, const std::vector<PatternSpectrum>& spectra) {
  json j;
  j["alpha_mev"] = json_real(config.alpha_mev);
  put_beta(j, config.beta());
  json arr = json::array();
  for (const auto& s : spectra) arr.push_back(spectrum_json(s));
  j["patterns"] = std::move(arr);
  return j;
}

json experiment_to_json(const RunConfig& config, const AbsorptionOutcome& o) {
  json j;
  j["model"] = to_string(config.model.value_or(Model::qsm));
  j["photon_mev"] = json_real(config.photon());
  j["alpha_mev"] = json_real(config.alpha_mev);
  put_beta(j, config.beta());
  j["linewidth_mev"] = json_real(config.linewidth());
  j["seed"] = config.seed;
  j["photons_fired"] = o.photons_fired;
  j["photons_absorbed"] = o.photons_absorbed;
  j["resonant"] = o.resonant;
  j["absorption_probability"] = json_real(o.initial_population);
  return j;
}

void write_chempot_csv(std::ostream& out, const ChemPotRecord& r) {
  out << "alpha_mev,quantum_limit,temperature_k,beta_per_mev,x,ln_z_qsm,ln_z_lshv,mu_qsm_mev,"
         "mu_lshv_mev,mu_pair_sum_qsm_mev,entropy_over_k,s_coefficient\n";
  out << format_real(r.alpha_mev) << ',' << (r.quantum_limit ? "true" : "false") << ','
      << format_real(r.temperature_k) << ',' << format_real(r.beta_per_mev) << ','
      << format_real(r.x) << ',' << format_real(r.ln_z_qsm) << ',' << format_real(r.ln_z_lshv)
      << ',' << format_real(r.mu_qsm_mev) << ',' << format_real(r.mu_lshv_mev) << ','
      << format_real(r.mu_pair_sum_qsm_mev) << ',' << format_real(r.entropy_over_k) << ','
      << format_real(r.s_coefficient) << '\n';
}

void write_report_csv(std::ostream& out, const ComparisonReport& report) {
  out << "energy_mev,absorbed_by\n";
  for (const auto& d : report.discriminating_energies) {
    out << format_real(d.energy_mev) << ',' << to_string(d.absorbed_by) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const std::vector<PatternSpectrum>& spectra) {
  out << "model,energy_mev,degeneracy,label,population\n";
  for (const auto& s : spectra) {
    for (std::size_t k = 0; k < s.pattern.size(); ++k) {
      out << to_string(s.pattern.model()) << ',' << format_real(s.pattern[k].energy_mev) << ','
          << s.pattern[k].degeneracy << ',' << s.pattern[k].label << ','
          << format_real(s.populations[k]) << '\n';
    }
  }
}

void write_experiment_csv(std::ostream& out, const RunConfig& config, const AbsorptionOutcome& o) {
  out << "model,photon_mev,alpha_mev,quantum_limit,temperature_k,linewidth_mev,seed,"
         "photons_fired,photons_absorbed,resonant,absorption_probability\n";
  out << to_string(config.model.value_or(Model::qsm)) << ',' << format_real(config.photon()) << ','
      << format_real(config.alpha_mev) << ',' << (config.quantum_limit ? "true" : "false") << ','
      << format_real(config.quantum_limit ? 0.0 : config.temperature_k) << ','
      << format_real(config.linewidth()) << ',' << config.seed << ',' << o.photons_fired << ','
      << o.photons_absorbed << ',' << (o.resonant ? "true" : "false") << ','
      << format_real(o.initial_population) << '\n';
}

std::vector<PlotFile> sweep_plot_files(const std::vector<SweepRow>& rows) {
  struct Column {
    const char* name;
    double SweepRow::*field;
  };
  static constexpr Column kColumns[] = {
      {"beta_per_mev", &SweepRow::beta_per_mev}, {"x", &SweepRow::x},
      {"ln_z_qsm", &SweepRow::ln_z_qsm},         {"ln_z_lshv", &SweepRow::ln_z_lshv},
      {"mu_qsm_mev", &SweepRow::mu_qsm_mev},     {"mu_lshv_mev", &SweepRow::mu_lshv_mev},
      {"entropy_over_k", &SweepRow::entropy_over_k},
      {"s_coefficient", &SweepRow::s_coefficient}};
  std::vector<PlotFile> files;
  for (const auto& c : kColumns) {
    PlotFile f{c.name, {}};
    for (const auto& r : rows) f.series.emplace_back(r.temperature_k, r.*(c.field));
    files.push_back(std::move(f));
  }
  return files;
}

std::vector<PlotFile> spectrum_plot_files(const std::vector<PatternSpectrum>& spectra) {
  std::vector<PlotFile> files;
  for (const auto& s : spectra) {
    const std::string model = to_string(s.pattern.model());
    PlotFile levels{model + "_levels", {}};
    for (std::size_t k = 0; k < s.pattern.size(); ++k) {
      levels.series.emplace_back(s.pattern[k].energy_mev, s.populations[k]);
    }
    PlotFile lines{model + "_lines", {}};
    for (const auto& l : s.lines) lines.series.emplace_back(l.gap_mev, l.multiplicity);
    files.push_back(std::move(levels));
    files.push_back(std::move(lines));
  }
  return files;
}

std::vector<PlotFile> report_plot_files(const ComparisonReport& report) {
  return spectrum_plot_files({report.qsm, report.lshv});
}

void write_output(const std::string& path, std::ostream& stdout_stream,
                  const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(stdout_stream);
    stdout_stream.flush();
    return;
  }
  std::ofstream file(path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  body(file);
  file.flush();
  if (!file) throw IoError("failed while writing '" + path + "'");
}

std::vector<std::string> write_plot_files(const std::string& prefix,
                                          const std::vector<PlotFile>& files) {
  std::vector<std::string> written;
  for (const auto& f : files) {
    const std::string path = prefix + "_" + f.suffix + ".tsv";
    std::ostringstream unused;
    write_output(path, unused, [&](std::ostream& out) {
      for (const auto& [x, y] : f.series) out << format_real(x) << '\t' << format_real(y) << '\n';
    });
    written.push_back(path);
  }
  return written;
}

}  // namespace spinpair
