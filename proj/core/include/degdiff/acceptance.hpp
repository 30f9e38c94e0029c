#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "degdiff/config.hpp"

namespace degdiff {

enum class CriterionStatus { pass, fail, insufficient_window };

std::string_view status_name(CriterionStatus s);

struct CriterionResult {
  int id = 0;
  std::string name;
  CriterionStatus status = CriterionStatus::fail;
  std::vector<std::pair<std::string, double>> measured;
  std::vector<std::pair<std::string, double>> limits;
  std::string detail;
  double seconds = 0.0;  // wall time; printed, never written to disk
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool passed() const;
  /// One line per criterion, e.g. "[PASS] C1 ...".
  std::string summary_lines() const;
  /// Deterministic JSON (no timings).
  std::string to_json() const;
};

/// Runs the acceptance criteria. Reference runs use the grid and schedule of
/// `cfg` (n_cells, x_max, t_end, dt_max); convergence studies use fixed
/// refinement ladders. Artifacts go to cfg.output_dir/artifacts; with
/// cfg.determinism_check the artifact tree is regenerated under
/// cfg.output_dir/rerun and compared byte for byte.
AcceptanceReport acceptance_suite(const ExperimentConfig& cfg);

/// Byte-wise comparison of two directory trees; returns the first
/// difference found, or an empty string when identical.
std::string compare_trees(const std::filesystem::path& a, const std::filesystem::path& b);

/// Exact heat-kernel evolution of the unit mound (3/(4 x0))(1-(x/x0)^2) under
/// v_t = v_xx, evaluated at (x, t > 0).
double heat_mound_exact(double x, double t, double x0 = 1.0);

}  // namespace degdiff
