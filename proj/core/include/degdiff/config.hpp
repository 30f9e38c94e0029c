#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "degdiff/grid.hpp"
#include "degdiff/params.hpp"

namespace degdiff {

enum class Mode { simulate, selfsim, front_fit, verify_mapping, degiorgi, acceptance };
enum class InitialCondition { mound, point_source };

std::string_view mode_name(Mode mode);
/// Throws ConfigError for unknown names.
Mode parse_mode(std::string_view name);

/// Fully validated experiment description. Defaults reproduce the
/// reference runs: x_max = 12, 2400 cells, t_end = 10, log-spaced output.
struct ExperimentConfig {
  Mode mode = Mode::simulate;

  bool nondiv_input = false;
  NonDivParams nondiv;  // as given, when nondiv_input
  DivParams params;     // always set; mapped from nondiv when nondiv_input

  double x_max = 12.0;
  std::size_t n_cells = 2400;
  Schedule schedule;
  double snapshot_t_min = 1e-2;
  int snapshots_per_decade = 20;

  InitialCondition ic = InitialCondition::mound;
  double x0 = 1.0;
  double width = 0.1;

  std::string output_dir = "degdiff_out";
  double front_threshold = 1e-10;
  double fit_t_lo = 1.0;
  double fit_t_hi = 10.0;
  int profile_points = 201;

  double theta = 1.0;
  double r = 2.2;
  double support_radius = 1.0;
  int n_max = 6;
  double degiorgi_T = 0.0;  // 0 selects t_end

  int workers = 3;
  bool determinism_check = true;

  Grid grid() const { return Grid(x_max, n_cells); }
  /// Non-divergence parameters: the given ones, or the inverse mapping of `params`.
  NonDivParams nondiv_params() const;
};

/// Parses a YAML mapping of flat keys (see docs/config.md), applies
/// `key=value` overrides (values are YAML scalars or flow sequences; they
/// replace file values), fills defaults and validates everything. Unknown
/// and duplicate keys are errors; messages carry line/column and key.
ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Names of all accepted configuration keys.
const std::vector<std::string>& config_keys();

}  // namespace degdiff
