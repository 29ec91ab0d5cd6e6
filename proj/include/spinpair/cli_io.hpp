// Run configuration, temperature sweeps and the CSV / JSON / TSV writers used
// by the spinpair command-line tool.

#pragma once

#include <spinpair/energy_pattern.hpp>
#include <spinpair/spectroscopy.hpp>
#include <spinpair/units.hpp>

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spinpair {

enum class OutputFormat { csv, json, tsv_plot };

OutputFormat parse_format(const std::string& s);
const char* to_string(OutputFormat f);

struct RunConfig {
  double alpha_mev = 0.05;
  double temperature_k = 0.2;
  bool quantum_limit = false;
  double t_min_k = 0.1;
  double t_max_k = 10.0;
  int steps = 50;
  std::optional<double> linewidth_mev;  // defaults to alpha / 10
  std::uint64_t photons = 100000;
  std::uint64_t seed = 42;
  std::optional<Model> model;          // experiment defaults to qsm, spectrum to both
  std::optional<double> photon_mev;     // defaults to 3 alpha
  std::string output_path = "-";        // "-" is stdout; tsv-plot treats it as a file prefix
  OutputFormat format = OutputFormat::csv;

  Beta beta() const;
  double linewidth() const { return linewidth_mev.value_or(0.1 * alpha_mev); }
  double photon() const { return photon_mev.value_or(3.0 * alpha_mev); }

  /// Single-point checks (alpha, temperature, photons, linewidth > 0, output).
  void validate() const;
  /// validate() plus the sweep bounds.
  void validate_sweep() const;
};

struct SweepRow {
  double temperature_k;
  double beta_per_mev;
  double x;
  double ln_z_qsm;
  double ln_z_lshv;
  double mu_qsm_mev;
  double mu_lshv_mev;
  double entropy_over_k;
  double s_coefficient;
};

inline constexpr const char* kSweepCsvHeader =
    "temperature_k,beta_per_mev,x,ln_z_qsm,ln_z_lshv,mu_qsm_mev,mu_lshv_mev,entropy_over_k,"
    "s_coefficient";

SweepRow sweep_row(double alpha_mev, double temperature_k);

/// `steps` rows on a geometric grid from t_min_k to t_max_k inclusive.
std::vector<SweepRow> run_sweep(const RunConfig& config);

/// Thermodynamics at the configured single temperature (or the quantum limit).
struct ChemPotRecord {
  double alpha_mev;
  bool quantum_limit;
  double temperature_k;  // 0 in the quantum limit
  double beta_per_mev;   // +inf in the quantum limit
  double x;
  double ln_z_qsm;
  double ln_z_lshv;
  double mu_qsm_mev;
  double mu_lshv_mev;
  double mu_pair_sum_qsm_mev;
  double entropy_over_k;
  double s_coefficient;
};

ChemPotRecord run_chempot(const RunConfig& config);
/// Level structure, lines and populations of the selected model(s).
std::vector<PatternSpectrum> run_spectrum(const RunConfig& config);
ComparisonReport run_compare(const RunConfig& config);
AbsorptionOutcome run_experiment(const RunConfig& config);

/// %.12g; "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double v);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

nlohmann::ordered_json sweep_to_json(double alpha_mev, const std::vector<SweepRow>& rows);
nlohmann::ordered_json chempot_to_json(const ChemPotRecord& r);
nlohmann::ordered_json report_to_json(const ComparisonReport& report);
nlohmann::ordered_json spectrum_to_json(const RunConfig& config,
                                        const std::vector<PatternSpectrum>& spectra);
nlohmann::ordered_json experiment_to_json(const RunConfig& config, const AbsorptionOutcome& o);

void write_chempot_csv(std::ostream& out, const ChemPotRecord& r);
void write_report_csv(std::ostream& out, const ComparisonReport& report);
void write_spectrum_csv(std::ostream& out, const std::vector<PatternSpectrum>& spectra);
void write_experiment_csv(std::ostream& out, const RunConfig& config, const AbsorptionOutcome& o);

/// Two-column (x, y) data without header.
using PlotSeries = std::vector<std::pair<double, double>>;
struct PlotFile {
  std::string suffix;  // appended to the output prefix as "<prefix>_<suffix>.tsv"
  PlotSeries series;
};

std::vector<PlotFile> sweep_plot_files(const std::vector<SweepRow>& rows);
std::vector<PlotFile> spectrum_plot_files(const std::vector<PatternSpectrum>& spectra);
std::vector<PlotFile> report_plot_files(const ComparisonReport& report);

/// Writes through `body` to path, or to `stdout_stream` when path is "-".
/// Throws IoError when the file cannot be written.
void write_output(const std::string& path, std::ostream& stdout_stream,
                  const std::function<void(std::ostream&)>& body);

/// One file per series; returns the paths written.
std::vector<std::string> write_plot_files(const std::string& prefix,
                                          const std::vector<PlotFile>& files);

}  // namespace spinpair
