#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "degdiff/config.hpp"
#include "degdiff/diagnostics.hpp"
#include "degdiff/errors.hpp"

namespace degdiff {

/// Aggregate of the post-processing checks for one trajectory.
struct DiagnosticsReport {
  FrontTrace front;
  std::optional<FrontFit> fit;  // absent when the fit window is not covered
  std::string fit_note;
  double nu = 0.0;
  double mass_initial = 0.0;
  double mass_drift = 0.0;
  MaxPrincipleVerdict max_principle;
  double min_before_clamp = 0.0;
  std::optional<double> mapping_residual_max;
  std::optional<ShiftedDistance> selfsim_final;
  std::optional<DeGiorgiReport> degiorgi;
};

/// Runs every diagnostic on `traj`; checks whose inputs are unavailable are left empty.
DiagnosticsReport diagnose(const Trajectory& traj, const ExperimentConfig& cfg);

/// JSON text for a DiagnosticsReport (stable key order).
std::string diagnostics_json(const DiagnosticsReport& report);

struct ExperimentOutcome {
  ExitCode code = ExitCode::success;
  std::string message;
};

/// Executes cfg.mode and writes its artifacts (CSV tables and summary.json)
/// into cfg.output_dir. Errors are reported in summary.json under "error"
/// and in the returned code; nothing is thrown for module errors.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// Writes a summary.json that only carries an error (used when the
/// configuration itself could not be parsed).
void write_error_summary(const std::filesystem::path& dir, ExitCode code, const std::string& message);

/// Builds the initial condition named by the config.
Snapshot make_initial_condition(const ExperimentConfig& cfg, const Grid& grid);

}  // namespace degdiff
