#include "degdiff/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "degdiff/acceptance.hpp"
#include "degdiff/io.hpp"
#include "degdiff/selfsim.hpp"
#include "degdiff/solver.hpp"

namespace degdiff {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw NumericalError("cannot write " + path.string());
  os << text;
}

template <class Writer>
void write_with(const fs::path& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw NumericalError("cannot write " + path.string());
  writer(os);
}

json div_json(const DivParams& p) {
  return {{"gamma0", p.gamma0}, {"m", p.m}, {"q0", p.q0}, {"alpha", p.alpha}};
}

json nondiv_json(const NonDivParams& p) {
  return {{"gamma", p.gamma}, {"beta", p.beta}, {"sigma2", p.sigma2}, {"tau0", p.tau0}, {"drift", p.drift}};
}

json params_json(const ExperimentConfig& cfg) {
  json j;
  j["input_form"] = cfg.nondiv_input ? "non-divergence" : "divergence";
  j["divergence"] = div_json(cfg.params);
  j["non_divergence"] = cfg.nondiv_input ? nondiv_json(cfg.nondiv) : json(nullptr);
  return j;
}

json fit_json(const FrontFit& f) {
  return {{"slope", f.slope},     {"intercept", f.intercept}, {"r_squared", f.r_squared},
          {"t_lo", f.t_lo},       {"t_hi", f.t_hi},           {"points", f.points}};
}

json diagnostics_to_json(const DiagnosticsReport& r) {
  json j;
  j["front"] = {{"threshold", r.front.threshold}, {"relative", r.front.relative},
                {"times", r.front.times}, {"x_front", r.front.x_front}};
  j["nu"] = r.nu;
  j["front_fit"] = r.fit ? fit_json(*r.fit) : json(nullptr);
  if (!r.fit_note.empty()) j["front_fit_note"] = r.fit_note;
  j["mass_initial"] = r.mass_initial;
  j["mass_drift"] = r.mass_drift;
  json mp = {{"pass", r.max_principle.pass},
             {"boundary_min", r.max_principle.boundary_min},
             {"interior_min", r.max_principle.interior_min}};
  if (r.max_principle.witness_x) {
    mp["witness"] = {{"x", *r.max_principle.witness_x}, {"t", *r.max_principle.witness_t}};
  }
  j["max_principle"] = mp;
  j["min_before_clamp"] = r.min_before_clamp;
  j["mapping_residual_max"] = r.mapping_residual_max ? json(*r.mapping_residual_max) : json(nullptr);
  j["selfsim_distance_final"] =
      r.selfsim_final ? json{{"distance", r.selfsim_final->distance}, {"shift", r.selfsim_final->shift}} : json(nullptr);
  j["degiorgi"] = r.degiorgi ? json::parse(degiorgi_report_json(*r.degiorgi)) : json(nullptr);
  return j;
}

json stats_json(const SolverStats& s) {
  json per_step;
  std::vector<double> t, dt, res, minc;
  std::vector<int> it;
  int max_it = 0;
  for (const auto& st : s.steps) {
    t.push_back(st.t);
    dt.push_back(st.dt);
    it.push_back(st.iterations);
    res.push_back(st.residual);
    minc.push_back(st.min_before_clamp);
    max_it = std::max(max_it, st.iterations);
  }
  per_step["t"] = t;
  per_step["dt"] = dt;
  per_step["iterations"] = it;
  per_step["residual"] = res;
  per_step["min_before_clamp"] = minc;
  return {{"steps", s.steps.size()},
          {"rejected_steps", s.rejected_steps},
          {"max_iterations", max_it},
          {"min_before_clamp", s.min_before_clamp},
          {"per_step", per_step}};
}

json run_context_json(const ExperimentConfig& cfg, const Trajectory& traj) {
  json j;
  j["params"] = params_json(cfg);
  j["grid"] = {{"x_max", cfg.x_max}, {"n_cells", cfg.n_cells}, {"dx", traj.grid.dx()}};
  if (cfg.ic == InitialCondition::mound) j["initial_condition"] = {{"type", "mound"}, {"x0", cfg.x0}};
  else j["initial_condition"] = {{"type", "point_source"}, {"width", cfg.width}};
  j["schedule"] = {{"t_end", cfg.schedule.t_end},           {"dt_initial", cfg.schedule.dt_initial},
                   {"dt_max", cfg.schedule.dt_max},         {"picard_tol", cfg.schedule.picard_tol},
                   {"picard_max_iters", cfg.schedule.picard_max_iters}};
  std::vector<double> t_solver, t_phys;
  for (const auto& s : traj.snapshots) {
    t_solver.push_back(s.t);
    t_phys.push_back(s.t / traj.params.q0);
  }
  j["time_rescaling"] = {{"q0", traj.params.q0},
                         {"solver_time", "t' = q0 * t"},
                         {"t_end_solver", cfg.schedule.t_end},
                         {"t_end_physical", cfg.schedule.t_end / traj.params.q0},
                         {"snapshot_times_solver", t_solver},
                         {"snapshot_times_physical", t_phys}};
  j["solver_stats"] = stats_json(traj.stats);
  j["mass_drift"] = max_relative_mass_drift(traj);
  return j;
}

Trajectory simulate(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid();
  return run(make_initial_condition(cfg, grid), cfg.params, grid, cfg.schedule);
}

json selfsim_mode(const ExperimentConfig& cfg, const fs::path& dir) {
  const double g0 = cfg.params.gamma0, m = cfg.params.m;
  const auto s = SelfSimilarSolution::make(g0, m);
  write_with(dir / "profile.csv", [&](std::ostream& os) { write_profile_csv(os, g0, m, cfg.profile_points); });
  const ProfileSlope front = profile_fprime(1.0, g0, m);
  const char* kind = front.kind == SlopeKind::finite ? "finite" : front.kind == SlopeKind::vanishing ? "vanishing" : "singular";
  json j;
  j["nu"] = s.nu();
  j["eta_f"] = s.eta_f();
  j["eta_f_quadrature"] = front_constant_quadrature(g0, m);
  j["amplitude_V"] = s.amplitude();
  j["mass"] = s.mass();
  j["front_slope"] = {{"kind", kind}, {"value", std::isfinite(front.value) ? json(front.value) : json(nullptr)}};
  j["artifacts"] = {"profile.csv"};
  return j;
}

}  // namespace

Snapshot make_initial_condition(const ExperimentConfig& cfg, const Grid& grid) {
  return cfg.ic == InitialCondition::mound ? mound_ic(grid, cfg.x0) : point_source_ic(grid, cfg.width);
}

DiagnosticsReport diagnose(const Trajectory& traj, const ExperimentConfig& cfg) {
  DiagnosticsReport r;
  r.front = detect_front(traj, cfg.front_threshold, true);
  r.nu = exponent_nu(traj.params.gamma0, traj.params.m);
  try {
    if (traj.snapshots.back().t < cfg.fit_t_hi * (1.0 - 1e-12)) throw DomainError("run ends before the fit window closes");
    r.fit = fit_front_exponent(r.front, cfg.fit_t_lo, cfg.fit_t_hi);
  } catch (const DomainError& e) {
    r.fit_note = std::string("insufficient window: ") + e.what();
  }
  r.mass_initial = mass(traj.snapshots.front(), traj.grid);
  r.mass_drift = max_relative_mass_drift(traj);
  r.max_principle = max_principle_check(traj);
  r.min_before_clamp = traj.stats.min_before_clamp;
  try {
    const auto res = mapping_residual(traj, cfg.nondiv_params(), cfg.front_threshold);
    if (!res.residual.empty()) r.mapping_residual_max = *std::max_element(res.residual.begin(), res.residual.end());
  } catch (const DomainError&) {
  }
  if (traj.params.gamma0 + traj.params.m > 0.0) {
    r.selfsim_final = selfsim_distance(traj, SelfSimilarSolution::make(traj.params), traj.snapshots.back().t);
  }
  try {
    DeGiorgiConfig dg{cfg.theta, cfg.r, cfg.support_radius, cfg.n_max, cfg.nondiv_params()};
    const double T = cfg.degiorgi_T > 0.0 ? cfg.degiorgi_T : traj.snapshots.back().t;
    r.degiorgi = degiorgi_energies(traj, dg, T);
  } catch (const DomainError&) {
  }
  return r;
}

std::string diagnostics_json(const DiagnosticsReport& report) { return diagnostics_to_json(report).dump(2); }

void write_error_summary(const fs::path& dir, ExitCode code, const std::string& message) {
  fs::create_directories(dir);
  json j;
  j["status"] = "error";
  j["error"] = {{"code", static_cast<int>(code)},
                {"kind", code == ExitCode::config_error ? "config_error" : "numerical_failure"},
                {"message", message}};
  write_text(dir / "summary.json", j.dump(2) + "\n");
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  try {
    fs::create_directories(dir);
    json summary;
    summary["mode"] = std::string(mode_name(cfg.mode));
    summary["status"] = "ok";

    switch (cfg.mode) {
      case Mode::selfsim: {
        summary["params"] = params_json(cfg);
        summary["selfsim"] = selfsim_mode(cfg, dir);
        break;
      }
      case Mode::simulate:
      case Mode::front_fit: {
        const Trajectory traj = simulate(cfg);
        const DiagnosticsReport diag = diagnose(traj, cfg);
        summary.update(run_context_json(cfg, traj));
        std::vector<std::string> artifacts = {"front.csv", "front_loglog.csv", "diagnostics.json"};
        if (cfg.mode == Mode::simulate) {
          write_with(dir / "snapshots.csv", [&](std::ostream& os) { write_snapshots_csv(os, traj); });
          artifacts.insert(artifacts.begin(), "snapshots.csv");
        }
        write_with(dir / "front.csv", [&](std::ostream& os) { write_front_csv(os, diag.front); });
        if (diag.fit) {
          write_with(dir / "front_loglog.csv",
                     [&](std::ostream& os) { write_loglog_front_csv(os, diag.front, *diag.fit, diag.nu); });
        } else {
          artifacts.erase(std::find(artifacts.begin(), artifacts.end(), "front_loglog.csv"));
        }
        write_text(dir / "diagnostics.json", diagnostics_json(diag) + "\n");
        summary["front_fit"] = {{"theory_slope", diag.nu},
                                {"fitted_slope", diag.fit ? json(diag.fit->slope) : json(nullptr)},
                                {"note", diag.fit_note}};
        summary["artifacts"] = artifacts;
        break;
      }
      case Mode::verify_mapping: {
        if (!cfg.nondiv_input) throw ConfigError("verify-mapping needs non-divergence parameters (gamma, beta, sigma2)");
        const Trajectory traj = simulate(cfg);
        const auto res = mapping_residual(traj, cfg.nondiv, cfg.front_threshold);
        summary.update(run_context_json(cfg, traj));
        write_with(dir / "mapping_residual.csv", [&](std::ostream& os) {
          os << "t,t_physical,residual,cells\n";
          for (std::size_t k = 0; k < res.times.size(); ++k) {
            os << format_double(res.times[k]) << ',' << format_double(res.times[k] / traj.params.q0) << ','
               << format_double(res.residual[k]) << ',' << res.cells_used[k] << '\n';
          }
        });
        summary["mapping_residual_max"] =
            res.residual.empty() ? 0.0 : *std::max_element(res.residual.begin(), res.residual.end());
        summary["artifacts"] = {"mapping_residual.csv"};
        break;
      }
      case Mode::degiorgi: {
        const Trajectory traj = simulate(cfg);
        DeGiorgiConfig dg{cfg.theta, cfg.r, cfg.support_radius, cfg.n_max, cfg.nondiv_params()};
        const double T = cfg.degiorgi_T > 0.0 ? cfg.degiorgi_T : traj.snapshots.back().t;
        const DeGiorgiReport rep = degiorgi_energies(traj, dg, T);
        summary.update(run_context_json(cfg, traj));
        write_text(dir / "degiorgi.json", degiorgi_report_json(rep) + "\n");
        summary["degiorgi"] = json::parse(degiorgi_report_json(rep));
        summary["artifacts"] = {"degiorgi.json"};
        break;
      }
      case Mode::acceptance: {
        const AcceptanceReport rep = acceptance_suite(cfg);
        summary["acceptance"] = json::parse(rep.to_json());
        summary["status"] = rep.passed() ? "ok" : "failed";
        write_text(dir / "summary.json", summary.dump(2) + "\n");
        return {rep.passed() ? ExitCode::success : ExitCode::acceptance_failure, rep.summary_lines()};
      }
    }
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    return {ExitCode::success, "ok"};
  } catch (const ConfigError& e) {
    write_error_summary(dir, ExitCode::config_error, e.what());
    return {ExitCode::config_error, e.what()};
  } catch (const DomainError& e) {
    write_error_summary(dir, ExitCode::config_error, e.what());
    return {ExitCode::config_error, e.what()};
  } catch (const std::exception& e) {
    write_error_summary(dir, ExitCode::numerical_failure, e.what());
    return {ExitCode::numerical_failure, e.what()};
  }
}

}  // namespace degdiff
