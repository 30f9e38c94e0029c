#include "degdiff/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/rational.hpp>
#include <json.hpp>

#include "degdiff/diagnostics.hpp"
#include "degdiff/errors.hpp"
#include "degdiff/experiment.hpp"
#include "degdiff/io.hpp"
#include "degdiff/selfsim.hpp"
#include "degdiff/solver.hpp"

namespace degdiff {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Tolerances, one per criterion.
constexpr double kFirstIntegralTol = 1e-10;
constexpr double kEtaAgreementTol = 1e-8;
constexpr double kEtaExactTol = 1e-10;
constexpr double kHeatOrderMin = 1.9;
constexpr double kMassDriftTol = 1e-8;
constexpr double kSlopeRelTol = 0.05;
constexpr double kLocalizationLevel = 1e-10;
constexpr double kVisibleFrontLevel = 1e-6;
constexpr int kLocalizationCells = 10;
constexpr double kAttractorMassFraction = 0.05;
constexpr double kMappingOrderMin = 1.0;
constexpr double kUndershootFloor = -1e-12;
constexpr double kQuadratureFloor = 1e-14;
constexpr double kExactRelTol = 1e-15;

struct RefPair {
  double gamma0;
  double m;
};
constexpr RefPair kRefPairs[] = {{1.0, 0.0}, {2.0, 1.0}, {1.0, 1.0}};

std::string tag(const RefPair& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "g%g_m%g", p.gamma0, p.m);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw NumericalError("cannot write " + path.string());
  os << text;
}

// Least-squares slope of log(err) against log(h).
double observed_order(const std::vector<double>& h, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct RefRun {
  RefPair pair;
  std::optional<Trajectory> traj;
  std::string error;
};

Schedule reference_schedule(const ExperimentConfig& cfg) {
  Schedule s = cfg.schedule;
  std::vector<double> times = Schedule::log_spaced(cfg.snapshot_t_min, s.t_end, cfg.snapshots_per_decade);
  for (double t : {1.0, 10.0}) {
    if (t <= s.t_end) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  s.snapshot_times = times;
  return s;
}

std::vector<RefRun> reference_runs(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid();
  const Schedule sched = reference_schedule(cfg);
  const Snapshot ic = mound_ic(grid, cfg.x0);
  auto job = [&](RefPair p) {
    RefRun r{p, std::nullopt, {}};
    try {
      r.traj = run(ic, DivParams{p.gamma0, p.m, 1.0, 0.0}, grid, sched);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    return r;
  };
  std::vector<RefRun> out;
  const std::size_t workers = static_cast<std::size_t>(std::max(1, cfg.workers));
  const std::size_t total = std::size(kRefPairs);
  for (std::size_t start = 0; start < total; start += workers) {
    std::vector<std::future<RefRun>> batch;
    for (std::size_t k = start; k < std::min(total, start + workers); ++k) {
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, job, kRefPairs[k]));
    }
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Runs `body` and converts exceptions into a failed criterion.
CriterionResult guarded(int id, std::string name, const std::function<void(CriterionResult&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.status = CriterionStatus::fail;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult criterion_first_integral(const fs::path& dir) {
  return guarded(1, "self-similar first integral", [&](CriterionResult& r) {
    const RefPair pairs[] = {{1, 0}, {1, 1}, {2, 1}, {0.5, 2}};
    std::ostringstream csv;
    csv << "gamma0,m,max_ratio\n";
    double worst = 0.0;
    for (const auto& p : pairs) {
      const double nu = exponent_nu(p.gamma0, p.m);
      double local = 0.0;
      for (int k = 0; k < 1000; ++k) {
        const double xi = 0.999 * (k + 0.5) / 1000.0;
        const double f = profile_f(xi, p.gamma0, p.m);
        const double res = std::abs(first_integral_residual(xi, p.gamma0, p.m));
        local = std::max(local, res / std::max(1.0, nu * xi * f));
      }
      worst = std::max(worst, local);
      csv << format_double(p.gamma0) << ',' << format_double(p.m) << ',' << format_double(local) << '\n';
    }
    write_file(dir / "c1_first_integral.csv", csv.str());
    r.measured = {{"max_scaled_residual", worst}};
    r.limits = {{"max_scaled_residual", kFirstIntegralTol}};
    r.status = worst <= kFirstIntegralTol ? CriterionStatus::pass : CriterionStatus::fail;
  });
}

CriterionResult criterion_front_constant(const fs::path& dir) {
  return guarded(2, "front constant oracle agreement", [&](CriterionResult& r) {
    std::ostringstream csv;
    csv << "gamma0,m,eta_gamma,eta_quadrature,rel_diff\n";
    double worst = 0.0;
    for (double g0 : {0.5, 1.0, 2.0, 3.0}) {
      for (double m : {0.0, 0.5, 1.0, 2.0}) {
        const double a = front_constant_gamma(g0, m);
        const double b = front_constant_quadrature(g0, m);
        const double rel = std::abs(a - b) / std::abs(a);
        worst = std::max(worst, rel);
        csv << format_double(g0) << ',' << format_double(m) << ',' << format_double(a) << ',' << format_double(b)
            << ',' << format_double(rel) << '\n';
      }
    }
    write_file(dir / "c2_front_constant.csv", csv.str());
    const double exact = std::cbrt(4.5);
    const double e1 = std::abs(front_constant_gamma(1, 0) - exact) / exact;
    const double e2 = std::abs(front_constant_quadrature(1, 0) - exact) / exact;
    r.measured = {{"max_rel_diff", worst}, {"gamma_vs_exact", e1}, {"quadrature_vs_exact", e2}};
    r.limits = {{"max_rel_diff", kEtaAgreementTol}, {"gamma_vs_exact", kEtaExactTol}, {"quadrature_vs_exact", kEtaExactTol}};
    const bool ok = worst <= kEtaAgreementTol && e1 <= kEtaExactTol && e2 <= kEtaExactTol;
    r.status = ok ? CriterionStatus::pass : CriterionStatus::fail;
  });
}

CriterionResult criterion_heat(const fs::path& dir, std::vector<Trajectory>& checked) {
  return guarded(3, "linear-limit spatial order", [&](CriterionResult& r) {
    // x_max = 12.5 puts the mound's kink on a cell face at every level, so the
    // O(dx^2) sampling error of the initial data has the same constant throughout.
    const double x_max = 12.5, x0 = 1.0, t = 1.0;
    std::vector<double> h, err;
    std::ostringstream csv;
    csv << "n_cells,dx,dt,max_error\n";
    for (std::size_t n : {300u, 600u, 1200u}) {
      const Grid grid(x_max, n);
      const double dx = grid.dx();
      Schedule s;
      s.t_end = t;
      s.dt_initial = s.dt_max = 0.5 * dx * dx;
      s.snapshot_times = {t};
      s.picard_tol = 1e-13;
      Trajectory traj = run(mound_ic(grid, x0), DivParams{0, 0, 1, 0}, grid, s);
      const auto& v = traj.snapshots.back().values;
      double e = 0.0;
      for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(v[i] - heat_mound_exact(grid.center(i), t, x0)));
      h.push_back(dx);
      err.push_back(e);
      csv << n << ',' << format_double(dx) << ',' << format_double(s.dt_max) << ',' << format_double(e) << '\n';
      checked.push_back(std::move(traj));
    }
    write_file(dir / "c3_heat_convergence.csv", csv.str());
    const double order = observed_order(h, err);
    r.measured = {{"order", order}, {"error_n300", err[0]}, {"error_n1200", err[2]}};
    r.limits = {{"order_min", kHeatOrderMin}};
    r.status = order >= kHeatOrderMin ? CriterionStatus::pass : CriterionStatus::fail;
  });
}

CriterionResult criterion_mass(const std::vector<RefRun>& runs, const fs::path& dir) {
  return guarded(4, "mass conservation", [&](CriterionResult& r) {
    bool ok = true;
    double worst = 0.0;
    for (const auto& run : runs) {
      if (!run.traj) {
        ok = false;
        r.detail += tag(run.pair) + ": " + run.error + "; ";
        continue;
      }
      const Trajectory& tr = *run.traj;
      const double m0 = mass(tr.snapshots.front(), tr.grid);
      std::ostringstream csv;
      csv << "t,mass,rel_drift\n";
      for (const auto& s : tr.snapshots) {
        const double m = mass(s, tr.grid);
        csv << format_double(s.t) << ',' << format_double(m) << ',' << format_double(std::abs(m - m0) / m0) << '\n';
      }
      write_file(dir / tag(run.pair) / "mass.csv", csv.str());
      const double d = max_relative_mass_drift(tr);
      r.measured.emplace_back("drift_" + tag(run.pair), d);
      worst = std::max(worst, d);
    }
    r.limits = {{"max_rel_drift", kMassDriftTol}};
    r.status = ok && worst <= kMassDriftTol ? CriterionStatus::pass : CriterionStatus::fail;
  });
}

CriterionResult criterion_front(const std::vector<RefRun>& runs, const ExperimentConfig& cfg, const fs::path& dir) {
  return guarded(5, "finite speed of propagation", [&](CriterionResult& r) {
    bool ok = true, window = true;
    for (const auto& run : runs) {
      if (!run.traj) {
        ok = false;
        r.detail += tag(run.pair) + ": " + run.error + "; ";
        continue;
      }
      const Trajectory& tr = *run.traj;
      const std::string name = tag(run.pair);
      const FrontTrace trace = detect_front(tr, cfg.front_threshold, true);
      write_file(dir / name / "front.csv", [&] {
        std::ostringstream os;
        write_front_csv(os, trace);
        return os.str();
      }());

      // Localization: nothing above the level beyond the visible front plus a margin.
      const FrontTrace visible = detect_front(tr, kVisibleFrontLevel, true);
      double worst_ratio = 0.0;
      const double margin = kLocalizationCells * tr.grid.dx();
      for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
        const auto& v = tr.snapshots[k].values;
        const double vmax = *std::max_element(v.begin(), v.end());
        if (vmax <= 0.0) continue;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (std::abs(tr.grid.center(i)) > visible.x_front[k] + margin) worst_ratio = std::max(worst_ratio, v[i] / vmax);
        }
      }
      r.measured.emplace_back("outside_ratio_" + name, worst_ratio);
      if (!(worst_ratio < kLocalizationLevel)) ok = false;

      const double nu = exponent_nu(run.pair.gamma0, run.pair.m);
      if (tr.snapshots.back().t < 10.0) {
        window = false;
        continue;
      }
      const FrontFit fit = fit_front_exponent(trace, 1.0, 10.0);
      write_file(dir / name / "front_loglog.csv", [&] {
        std::ostringstream os;
        write_loglog_front_csv(os, trace, fit, nu);
        return os.str();
      }());
      const double rel = std::abs(fit.slope - nu) / nu;
      r.measured.emplace_back("slope_" + name, fit.slope);
      r.measured.emplace_back("nu_" + name, nu);
      r.measured.emplace_back("slope_rel_err_" + name, rel);
      if (!(rel <= kSlopeRelTol)) ok = false;
    }
    r.limits = {{"slope_rel_err", kSlopeRelTol}, {"outside_ratio", kLocalizationLevel},
                {"margin_cells", kLocalizationCells}, {"visible_front_level", kVisibleFrontLevel}};
    if (!ok) r.status = CriterionStatus::fail;
    else if (!window) {
      r.status = CriterionStatus::insufficient_window;
      r.detail = "run ends before t = 10; slope fit skipped";
    } else {
      r.status = CriterionStatus::pass;
    }
  });
}

CriterionResult criterion_attractor(const std::vector<RefRun>& runs, const fs::path& dir) {
  return guarded(6, "intermediate asymptotics", [&](CriterionResult& r) {
    bool ok = true, window = true;
    std::ostringstream csv;
    csv << "gamma0,m,d1,shift1,d10,shift10,mass\n";
    for (const auto& run : runs) {
      if (!run.traj) {
        ok = false;
        r.detail += tag(run.pair) + ": " + run.error + "; ";
        continue;
      }
      const Trajectory& tr = *run.traj;
      if (tr.snapshots.back().t < 10.0) {
        window = false;
        continue;
      }
      const auto s = SelfSimilarSolution::make(tr.params);
      const ShiftedDistance d1 = selfsim_distance(tr, s, 1.0);
      const ShiftedDistance d10 = selfsim_distance(tr, s, 10.0);
      const double m0 = mass(tr.snapshots.front(), tr.grid);
      csv << format_double(run.pair.gamma0) << ',' << format_double(run.pair.m) << ',' << format_double(d1.distance)
          << ',' << format_double(d1.shift) << ',' << format_double(d10.distance) << ',' << format_double(d10.shift)
          << ',' << format_double(m0) << '\n';
      r.measured.emplace_back("d1_" + tag(run.pair), d1.distance);
      r.measured.emplace_back("d10_" + tag(run.pair), d10.distance);
      if (!(d10.distance < d1.distance && d10.distance < kAttractorMassFraction * m0)) ok = false;
    }
    r.limits = {{"d10_over_mass", kAttractorMassFraction}};
    if (!ok) r.status = CriterionStatus::fail;
    else if (!window) {
      r.status = CriterionStatus::insufficient_window;
      r.detail = "run ends before t = 10";
    } else {
      r.status = CriterionStatus::pass;
      write_file(dir / "c6_attractor.csv", csv.str());
    }
  });
}

CriterionResult criterion_mapping(const fs::path& dir, std::vector<Trajectory>& checked) {
  return guarded(7, "mapping residual order", [&](CriterionResult& r) {
    const NonDivParams nd{0.5, 1.0, 2.0, 1.0, 0.0};
    const DivParams dp = to_divergence(nd);
    const double t_eval = 1.0, x_max = 6.0;
    std::vector<double> h, res, res_l1;
    std::ostringstream csv;
    csv << "level,n_cells,dx,dt,residual_max,cells\n";
    for (int lev : {1, 2, 4}) {
      const Grid grid(x_max, 300 * static_cast<std::size_t>(lev));
      const double dt = 4e-3 / lev;
      Schedule s;
      s.t_end = t_eval + 5 * dt;
      s.dt_initial = s.dt_max = dt;
      s.snapshot_times = {t_eval - 5 * dt, t_eval, t_eval + 5 * dt};
      s.picard_tol = 1e-13;
      s.picard_max_iters = 200;
      Trajectory traj = run(mound_ic(grid, 1.0), dp, grid, s);
      const MappingResidual mr = mapping_residual(traj, nd);
      std::size_t k = 0;
      while (k < mr.times.size() && mr.times[k] != t_eval) ++k;
      if (k == mr.times.size()) throw NumericalError("no residual at t' = 1");
      h.push_back(grid.dx());
      res.push_back(mr.residual[k]);
      csv << lev << ',' << grid.n_cells() << ',' << format_double(grid.dx()) << ',' << format_double(dt) << ','
          << format_double(mr.residual[k]) << ',' << mr.cells_used[k] << '\n';
      checked.push_back(std::move(traj));
    }
    write_file(dir / "c7_mapping_residual.csv", csv.str());
    const double order = observed_order(h, res);
    const bool decreasing = res[1] < res[0] && res[2] < res[1];
    r.measured = {{"order", order}, {"residual_l1", res[0]}, {"residual_l2", res[1]}, {"residual_l4", res[2]}};
    r.limits = {{"order_min", kMappingOrderMin}};
    r.status = order >= kMappingOrderMin && decreasing ? CriterionStatus::pass : CriterionStatus::fail;
    if (!decreasing) r.detail = "residual not monotonically decreasing under refinement";
  });
}

CriterionResult criterion_max_principle(const std::vector<RefRun>& runs, const std::vector<Trajectory>& extra) {
  return guarded(8, "maximum principle and nonnegativity", [&](CriterionResult& r) {
    bool ok = true;
    double min_after = 0.0, min_before = 0.0;
    std::size_t checked = 0;
    auto check = [&](const Trajectory& tr) {
      ++checked;
      if (!max_principle_check(tr).pass) ok = false;
      for (const auto& s : tr.snapshots) {
        min_after = std::min(min_after, *std::min_element(s.values.begin(), s.values.end()));
      }
      min_before = std::min(min_before, tr.stats.min_before_clamp);
    };
    for (const auto& run : runs) {
      if (run.traj) check(*run.traj);
      else ok = false;
    }
    for (const auto& tr : extra) check(tr);
    r.measured = {{"trajectories", static_cast<double>(checked)}, {"min_after_clamp", min_after},
                  {"min_before_clamp", min_before}};
    r.limits = {{"min_after_clamp", 0.0}, {"min_before_clamp", kUndershootFloor}};
    r.status = ok && min_after >= 0.0 && min_before >= kUndershootFloor ? CriterionStatus::pass : CriterionStatus::fail;
  });
}

// Exact rational for a double with a small power-of-two or small denominator.
boost::rational<long long> exact(double x) {
  for (long long den = 1; den <= 1024; ++den) {
    const double num = x * static_cast<double>(den);
    if (num == std::round(num)) return {static_cast<long long>(std::llround(num)), den};
  }
  throw DomainError("parameter has no small rational representation");
}

CriterionResult criterion_degiorgi(const std::vector<RefRun>& runs, const ExperimentConfig& cfg, const fs::path& dir) {
  return guarded(9, "De Giorgi energies", [&](CriterionResult& r) {
    const RefRun* base = nullptr;
    for (const auto& run : runs) {
      if (run.pair.gamma0 == 1.0 && run.pair.m == 0.0) base = &run;
    }
    if (!base || !base->traj) throw NumericalError("reference run (1, 0) unavailable");
    const Trajectory& tr = *base->traj;
    DeGiorgiConfig dg;
    dg.theta = 1.0;
    dg.r = 2.2;
    dg.support_radius = 1.0;
    dg.n_max = 6;
    dg.nondiv = from_divergence(tr.params);

    const double r1 = 2.0 * dg.r * (1.0 - std::pow(2.0, -2.0));
    const FrontTrace trace = detect_front(tr, cfg.front_threshold, true);
    double T = 0.0;
    for (std::size_t k = 1; k < trace.times.size(); ++k) {
      if (trace.x_front[k] < r1) T = trace.times[k];
    }
    if (T <= 0.0) throw NumericalError("no recorded time with the front inside r_1");
    const DeGiorgiReport at_T = degiorgi_energies(tr, dg, T);
    const DeGiorgiReport at_end = degiorgi_energies(tr, dg, tr.snapshots.back().t);
    write_file(dir / "c9_degiorgi_T.json", degiorgi_report_json(at_T) + "\n");
    write_file(dir / "c9_degiorgi_end.json", degiorgi_report_json(at_end) + "\n");

    double tail = 0.0;
    for (std::size_t n = 1; n < at_T.I.size(); ++n) tail = std::max(tail, std::abs(at_T.I[n]));
    bool monotone = true;
    for (const auto* rep : {&at_T, &at_end}) {
      for (std::size_t n = 1; n < rep->I.size(); ++n) {
        if (rep->I[n] > rep->I[n - 1]) monotone = false;
      }
    }

    using Q = boost::rational<long long>;
    const Q g0 = exact(tr.params.gamma0), m = exact(tr.params.m);
    const Q alpha = g0 / (m + 1);
    const Q gamma = alpha / (alpha + 1), beta = m, theta = exact(dg.theta);
    const Q q = (theta + 1) * (beta + 2) / (theta + gamma + beta + 1);
    const Q zeta = (gamma + beta) / (gamma + beta + (beta + 2) * (theta + 1));
    const Q eps0 = (Q(1) - zeta) * ((beta + 2) / q - 1);
    auto rel = [](double got, Q want) {
      const double w = boost::rational_cast<double>(want);
      return std::abs(got - w) / std::max(std::abs(w), 1e-300);
    };
    const double eq = rel(at_T.q, q), ez = rel(at_T.zeta, zeta), ee = rel(at_T.epsilon0, eps0);

    r.measured = {{"T", T},          {"x_front_T", trace.x_front[tr.index_of(T)]},
                  {"r1", r1},        {"max_I_n_ge_1", tail},
                  {"q", at_T.q},     {"zeta", at_T.zeta},
                  {"epsilon0", at_T.epsilon0}};
    r.limits = {{"max_I_n_ge_1", kQuadratureFloor}, {"exact_rel", kExactRelTol}};
    const bool ok = tail <= kQuadratureFloor && monotone && eq <= kExactRelTol && ez <= kExactRelTol && ee <= kExactRelTol;
    if (!monotone) r.detail = "I_n increases with n";
    r.status = ok ? CriterionStatus::pass : CriterionStatus::fail;
  });
}

std::string report_json(const std::vector<CriterionResult>& criteria) {
  json arr = json::array();
  for (const auto& c : criteria) {
    json meas = json::object(), lim = json::object();
    for (const auto& [k, v] : c.measured) meas[k] = v;
    for (const auto& [k, v] : c.limits) lim[k] = v;
    arr.push_back({{"id", c.id},
                   {"name", c.name},
                   {"status", std::string(status_name(c.status))},
                   {"measured", meas},
                   {"limits", lim},
                   {"detail", c.detail}});
  }
  bool passed = std::all_of(criteria.begin(), criteria.end(),
                            [](const CriterionResult& c) { return c.status != CriterionStatus::fail; });
  json j = {{"passed", passed}, {"criteria", arr}};
  return j.dump(2);
}

// Criteria 1-9; every artifact goes below `dir`.
std::vector<CriterionResult> run_criteria(const ExperimentConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<CriterionResult> out;
  out.push_back(criterion_first_integral(dir));
  out.push_back(criterion_front_constant(dir));
  std::vector<Trajectory> extra;
  out.push_back(criterion_heat(dir, extra));
  const std::vector<RefRun> runs = reference_runs(cfg);
  out.push_back(criterion_mass(runs, dir));
  out.push_back(criterion_front(runs, cfg, dir));
  out.push_back(criterion_attractor(runs, dir));
  out.push_back(criterion_mapping(dir, extra));
  out.push_back(criterion_max_principle(runs, extra));
  out.push_back(criterion_degiorgi(runs, cfg, dir));
  write_file(dir / "report.json", report_json(out) + "\n");
  return out;
}

}  // namespace

std::string_view status_name(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::pass: return "pass";
    case CriterionStatus::fail: return "fail";
    case CriterionStatus::insufficient_window: return "insufficient window";
  }
  return "fail";
}

bool AcceptanceReport::passed() const {
  return std::none_of(criteria.begin(), criteria.end(),
                      [](const CriterionResult& c) { return c.status == CriterionStatus::fail; });
}

std::string AcceptanceReport::summary_lines() const {
  std::ostringstream os;
  for (const auto& c : criteria) {
    const char* label = c.status == CriterionStatus::pass ? "PASS" : c.status == CriterionStatus::fail ? "FAIL" : "SKIP";
    os << '[' << label << "] C" << c.id << ' ' << c.name << ':';
    for (const auto& [k, v] : c.measured) os << ' ' << k << '=' << fmt(v);
    os << " |";
    for (const auto& [k, v] : c.limits) os << ' ' << k << '=' << fmt(v);
    if (!c.detail.empty()) os << " (" << c.detail << ')';
    os << " [" << fmt(c.seconds) << " s]\n";
  }
  return os.str();
}

std::string AcceptanceReport::to_json() const { return report_json(criteria); }

AcceptanceReport acceptance_suite(const ExperimentConfig& cfg) {
  const fs::path root(cfg.output_dir);
  const fs::path main_dir = root / "artifacts";
  AcceptanceReport report;
  report.criteria = run_criteria(cfg, main_dir);

  CriterionResult det = guarded(10, "determinism", [&](CriterionResult& r) {
    if (!cfg.determinism_check) {
      r.status = CriterionStatus::insufficient_window;
      r.detail = "determinism check disabled";
      return;
    }
    const fs::path rerun = root / "rerun";
    fs::remove_all(rerun);
    run_criteria(cfg, rerun);
    const std::string diff = compare_trees(main_dir, rerun);
    r.measured = {{"identical", diff.empty() ? 1.0 : 0.0}};
    r.limits = {{"identical", 1.0}};
    r.detail = diff;
    r.status = diff.empty() ? CriterionStatus::pass : CriterionStatus::fail;
  });
  report.criteria.push_back(std::move(det));
  return report;
}

std::string compare_trees(const fs::path& a, const fs::path& b) {
  auto listing = [](const fs::path& root) {
    std::vector<std::string> files;
    if (!fs::exists(root)) return files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      files.push_back(fs::relative(e.path(), root).generic_string() + (e.is_directory() ? "/" : ""));
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  const auto la = listing(a), lb = listing(b);
  if (la != lb) {
    std::vector<std::string> diff;
    std::set_symmetric_difference(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(diff));
    return "file sets differ: " + (diff.empty() ? std::string("?") : diff.front());
  }
  for (const auto& rel : la) {
    if (rel.back() == '/') continue;
    std::ifstream fa(a / rel, std::ios::binary), fb(b / rel, std::ios::binary);
    const std::string ca((std::istreambuf_iterator<char>(fa)), {});
    const std::string cb((std::istreambuf_iterator<char>(fb)), {});
    if (ca != cb) return "content differs: " + rel;
  }
  return {};
}

double heat_mound_exact(double x, double t, double x0) {
  if (!(t > 0.0) || !(x0 > 0.0)) throw DomainError("heat_mound_exact needs t > 0 and x0 > 0");
  // v = int c (1 - (y/x0)^2) G(x - y, t) dy over |y| < x0, written with the
  // partial moments of a centred Gaussian of variance 2t in z = x - y.
  const double s = std::sqrt(2.0 * t);
  const double a = x - x0, b = x + x0;
  auto phi = [&](double z) { return std::exp(-0.5 * (z / s) * (z / s)) / (s * std::sqrt(2.0 * std::numbers::pi)); };
  const double m0 = 0.5 * (std::erf(b / (s * std::numbers::sqrt2)) - std::erf(a / (s * std::numbers::sqrt2)));
  const double m1 = s * s * (phi(a) - phi(b));
  const double m2 = s * s * m0 + s * s * (a * phi(a) - b * phi(b));
  const double c = 3.0 / (4.0 * x0);
  return c * (m0 - (x * x * m0 - 2.0 * x * m1 + m2) / (x0 * x0));
}

}  // namespace degdiff
