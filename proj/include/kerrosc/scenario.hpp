#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kerrosc/dynamics.hpp"
#include "kerrosc/fock.hpp"

namespace kerrosc {

struct InitialStateSpec {
  enum class Kind { Coherent, Fock, Superposition };
  std::string label;
  Kind kind = Kind::Coherent;
  Complex alpha = 0.0;                       ///< Coherent
  int n = 0;                                 ///< Fock
  std::vector<CoherentComponent> components;  ///< Superposition
};

struct TimeSpec {
  double t_max = 0.0;
  int sample_count = 2;
  std::vector<double> snapshot_times;
};

struct AxisSpec {
  double min = -6.0;
  double max = 6.0;
  int count = 121;
};

struct GridSpec {
  enum class Source { Snapshots, SteadyEigenstates };
  double s = 0.0;
  AxisSpec re;
  AxisSpec im;
  Source source = Source::Snapshots;
  int components = 3;  ///< SteadyEigenstates only
};

struct OutputSpec {
  enum class Kind { Timeseries, QuasiGrid, SteadyReport, GaussianReport, DistanceToSteady, AmplitudePath };
  Kind kind = Kind::Timeseries;
  GridSpec grid;  ///< QuasiGrid only
};

struct ScenarioConfig {
  std::string name;
  std::vector<InitialStateSpec> initial_states;
  OscillatorParams params{};
  std::optional<int> cutoff;
  TimeSpec time;
  EvolveOptions tolerances;
  std::vector<OutputSpec> outputs;
};

struct ConfigIssue {
  int line;  ///< 1-based, 0 when no position is known
  std::string message;
};

struct ConfigResult {
  std::optional<ScenarioConfig> config;
  std::vector<ConfigIssue> issues;
};

/// Parses and validates a YAML scenario. Never throws; problems come back as issues.
ConfigResult validate_config(const std::string& text);

/// Canonical YAML form with fixed field order; parsing it again yields the same text.
std::string canonical_form(const ScenarioConfig& config);

std::string_view to_string(OutputSpec::Kind kind);

/// Cutoff used for a run: the override, or one sized for the initial states and the
/// classical steady amplitude.
FockCutoff scenario_cutoff(const ScenarioConfig& config);

struct StateSummary {
  std::string label;
  double t_final;
  double entropy;
  double linear_entropy;
  double fano;
  double squeezing;
  double mean_n;
  double max_trace_error;
  double max_tail_mass;
};

struct RunSummary {
  std::string scenario;
  int n_cut;
  std::vector<std::filesystem::path> files;
  std::vector<StateSummary> states;
};

/// Runs every declared output into out_dir (created if missing).
RunSummary run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir);

/// Report for the `steady` subcommand and the steady_report output.
std::string steady_report_csv(const OscillatorParams& params, const FockCutoff& cutoff,
                              const std::string& header);

}  // namespace kerrosc
