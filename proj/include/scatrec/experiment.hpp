#pragma once

// Experiment configuration, presets and runners behind the scatrec CLI.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scatrec/geometry.hpp"
#include "scatrec/measurement.hpp"
#include "scatrec/phased.hpp"
#include "scatrec/phaseless.hpp"
#include "scatrec/stability.hpp"

namespace scatrec {

enum class ReconMode { Phased, Phaseless };
enum class ForwardModel { Born, Linearized };

struct ExperimentConfig {
  std::string name = "custom";

  // domain: r = R (1 + delta sum F(l) e^{il theta}), F(1..) below
  double R = 0.2;
  double delta = 0.1;
  std::vector<std::complex<double>> modes;
  double contrast = 0.05;

  ForwardModel forward = ForwardModel::Born;
  int forward_band = 50;

  PlanKind plan_kind = PlanKind::Set1;
  int plan_N = 3;  // angle count for Sets 2/3 and optimal plans
  int N0 = 50;     // Set 1 grid
  int m0 = 10;
  int j_first = 5;
  int j_last = 10;
  int u_count = 5;

  NoiseSpec::Model noise_model = NoiseSpec::Model::MultiplicativeUniform;
  double sigma = 0.0;
  std::uint64_t seed = 1;
  int seeds = 1;

  ReconMode mode = ReconMode::Phaseless;
  int band = 6;
  double alpha = 1e-3;
  double beta = 0.05;

  // condition sweep
  int sweep_N = 51;
  int sweep_m0_first = 1;
  int sweep_m0_last = 20;

  StarDomain domain() const;
  std::vector<double> wavenumbers() const;
  MeasurementPlan plan(PlanKind kind) const;
  MeasurementPlan plan() const { return plan(plan_kind); }
};

// Throws ConfigError on unknown keys, wrong types or values outside the
// preconditions of the modules they feed. A run manifest (object with a
// "config" member) is accepted as well.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& c);

// example1, example2, example3, figure-kappa
std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

std::uint64_t fnv1a(const std::string& s);

// Clean data for the configured plan of kind `kind`; Born matrices are
// computed once per wavenumber.
FarFieldData synthesize_clean(const ExperimentConfig& c, PlanKind kind);
FarFieldData synthesize_clean(const ExperimentConfig& c, const MeasurementPlan& plan);

// Noise for seed `seed`, converted to magnitudes first in phaseless mode.
FarFieldData noisy_copy(const ExperimentConfig& c, const FarFieldData& clean, std::uint64_t seed);

struct ReconOutcome {
  CoefficientEstimate coeffs;
  double R_est = 0.0;
  double eps_est = 0.0;
  std::optional<StarDomain> domain_out;
  std::optional<double> rel_error;
  std::optional<double> kappa_TE;
  std::optional<double> kappa_L_alpha;
  int iterations = 0;
  bool converged = true;

  int peak_mode() const;                  // |l| with the largest |coeff|, 0 if all vanish
  std::pair<int, int> top_two() const;    // two largest, larger first
};

ReconOutcome reconstruct(const ExperimentConfig& c, const FarFieldData& data);

struct SetSummary {
  PlanKind kind = PlanKind::Set1;
  std::vector<std::uint64_t> seeds;
  std::vector<ReconOutcome> runs;  // same order as seeds
  double median = 0.0;             // of rel_error, NaN if none defined
  double q1 = 0.0;
  double q3 = 0.0;
};

// One set, seeds c.seed .. c.seed + c.seeds - 1, in parallel; results in
// seed order.
SetSummary run_set(const ExperimentConfig& c, PlanKind kind);

std::vector<ConditionReport> run_condition_sweep(const ExperimentConfig& c);

struct Manifest {
  std::string command;
  ExperimentConfig config;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> outputs;
  nlohmann::json extra = nlohmann::json::object();
};

void write_manifest(const std::filesystem::path& path, const Manifest& m);

// Minimal SVG 1.1 line plot; each series is (label, x, y).
struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};
void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<Series>& series, bool log_y = false);

// Writers used by the CLI subcommands; each returns the files written.
std::vector<std::string> write_reconstruction(const std::filesystem::path& dir, const std::string& stem,
                                              const ExperimentConfig& c, const ReconOutcome& r);
std::vector<std::string> write_sweep(const std::filesystem::path& dir, const std::vector<ConditionReport>& reports);
std::vector<std::string> write_experiment(const std::filesystem::path& dir, const ExperimentConfig& c,
                                          const std::vector<SetSummary>& sets);

std::string to_string(ReconMode m);

}  // namespace scatrec
