#include "degdiff/config.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "degdiff/errors.hpp"
#include "degdiff/solver.hpp"

namespace degdiff {

namespace {

constexpr std::pair<Mode, std::string_view> kModes[] = {
    {Mode::simulate, "simulate"},       {Mode::selfsim, "selfsim"},   {Mode::front_fit, "front-fit"},
    {Mode::verify_mapping, "verify-mapping"}, {Mode::degiorgi, "degiorgi"}, {Mode::acceptance, "acceptance"},
};

const std::vector<std::string> kNonDivKeys = {"gamma", "beta", "sigma2", "tau0", "drift"};
const std::vector<std::string> kDivKeys = {"gamma0", "m", "q0"};

struct Entry {
  YAML::Node value;
  std::string where;  // "line L, column C" or "override 'k=v'"
};

std::string location(const YAML::Mark& mark) {
  std::ostringstream os;
  os << "line " << mark.line + 1 << ", column " << mark.column + 1;
  return os.str();
}

[[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& what) {
  throw ConfigError(e.where + ": key '" + key + "': " + what);
}

double as_real(const Entry& e, const std::string& key) {
  try {
    return e.value.as<double>();
  } catch (const YAML::Exception&) {
    fail(e, key, "expected a number");
  }
}

long as_integer(const Entry& e, const std::string& key) {
  try {
    return e.value.as<long>();
  } catch (const YAML::Exception&) {
    fail(e, key, "expected an integer");
  }
}

bool as_bool(const Entry& e, const std::string& key) {
  try {
    return e.value.as<bool>();
  } catch (const YAML::Exception&) {
    fail(e, key, "expected true or false");
  }
}

std::string as_string(const Entry& e, const std::string& key) {
  if (!e.value.IsScalar()) fail(e, key, "expected a string");
  return e.value.Scalar();
}

std::vector<double> as_real_list(const Entry& e, const std::string& key) {
  if (!e.value.IsSequence()) fail(e, key, "expected a list of numbers");
  std::vector<double> out;
  try {
    for (const auto& item : e.value) out.push_back(item.as<double>());
  } catch (const YAML::Exception&) {
    fail(e, key, "expected a list of numbers");
  }
  return out;
}

}  // namespace

std::string_view mode_name(Mode mode) {
  for (const auto& [m, name] : kModes) {
    if (m == mode) return name;
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  for (const auto& [m, n] : kModes) {
    if (n == name) return m;
  }
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected simulate, selfsim, front-fit, verify-mapping, degiorgi or acceptance)");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "mode",  "gamma",        "beta",     "sigma2",  "tau0",           "drift",
      "gamma0", "m",           "q0",       "x_max",   "n_cells",        "t_end",
      "dt_initial", "dt_max",  "picard_tol", "picard_max_iters", "snapshot_times", "snapshot_t_min",
      "snapshots_per_decade", "ic", "x0", "width", "output_dir", "front_threshold",
      "fit_window", "profile_points", "theta", "r", "R0", "n_max", "degiorgi_T", "workers",
      "determinism_check"};
  return keys;
}

NonDivParams ExperimentConfig::nondiv_params() const {
  return nondiv_input ? nondiv : from_divergence(params);
}

ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  std::map<std::string, Entry> entries;
  const auto& known = config_keys();

  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(location(e.mark) + ": parse error: " + e.msg);
  }
  if (root.IsDefined() && !root.IsNull()) {
    if (!root.IsMap()) throw ConfigError("config must be a mapping of key: value pairs");
    for (auto it = root.begin(); it != root.end(); ++it) {
      const std::string key = it->first.as<std::string>();
      const std::string where = location(it->first.Mark());
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw ConfigError(where + ": unknown key '" + key + "'");
      }
      if (auto prev = entries.find(key); prev != entries.end()) {
        throw ConfigError(where + ": duplicate key '" + key + "' (first defined at " + prev->second.where + ")");
      }
      entries[key] = {it->second, where};
    }
  }

  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + ov + "': expected key=value");
    const std::string key = ov.substr(0, eq);
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("override '" + ov + "': unknown key '" + key + "'");
    }
    YAML::Node value;
    try {
      value = YAML::Load(ov.substr(eq + 1));
    } catch (const YAML::ParserException& e) {
      throw ConfigError("override '" + ov + "': " + e.msg);
    }
    entries[key] = {value, "override '" + ov + "'"};
  }

  auto get = [&](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto real = [&](const std::string& key, double& target) {
    if (const Entry* e = get(key)) target = as_real(*e, key);
  };

  ExperimentConfig cfg;
  if (const Entry* e = get("mode")) {
    try {
      cfg.mode = parse_mode(as_string(*e, "mode"));
    } catch (const ConfigError& err) {
      fail(*e, "mode", err.what());
    }
  }

  const bool any_nondiv = std::any_of(kNonDivKeys.begin(), kNonDivKeys.end(), [&](auto& k) { return get(k); });
  const bool any_div = std::any_of(kDivKeys.begin(), kDivKeys.end(), [&](auto& k) { return get(k); });
  if (any_nondiv && any_div) {
    throw ConfigError("give either non-divergence (gamma, beta, sigma2, tau0, drift) or divergence "
                      "(gamma0, m, q0) parameters, not both");
  }
  try {
    if (any_nondiv) {
      cfg.nondiv_input = true;
      real("gamma", cfg.nondiv.gamma);
      real("beta", cfg.nondiv.beta);
      real("sigma2", cfg.nondiv.sigma2);
      real("tau0", cfg.nondiv.tau0);
      real("drift", cfg.nondiv.drift);
      cfg.params = to_divergence(cfg.nondiv);
    } else {
      cfg.params.gamma0 = 1.0;
      cfg.params.m = 0.0;
      real("gamma0", cfg.params.gamma0);
      real("m", cfg.params.m);
      real("q0", cfg.params.q0);
      cfg.params.alpha = cfg.params.gamma0 / (cfg.params.m + 1.0);
      cfg.params.validate();
    }
  } catch (const DomainError& err) {
    throw ConfigError(std::string("invalid parameters: ") + err.what());
  }

  real("x_max", cfg.x_max);
  if (const Entry* e = get("n_cells")) {
    const long n = as_integer(*e, "n_cells");
    if (n < 16) fail(*e, "n_cells", "must be at least 16");
    cfg.n_cells = static_cast<std::size_t>(n);
  }
  real("t_end", cfg.schedule.t_end);
  real("dt_initial", cfg.schedule.dt_initial);
  real("dt_max", cfg.schedule.dt_max);
  real("picard_tol", cfg.schedule.picard_tol);
  if (const Entry* e = get("picard_max_iters")) cfg.schedule.picard_max_iters = static_cast<int>(as_integer(*e, "picard_max_iters"));
  real("snapshot_t_min", cfg.snapshot_t_min);
  if (const Entry* e = get("snapshots_per_decade")) {
    cfg.snapshots_per_decade = static_cast<int>(as_integer(*e, "snapshots_per_decade"));
  }
  if (const Entry* e = get("ic")) {
    const std::string ic = as_string(*e, "ic");
    if (ic == "mound") cfg.ic = InitialCondition::mound;
    else if (ic == "point_source") cfg.ic = InitialCondition::point_source;
    else fail(*e, "ic", "expected mound or point_source");
  }
  real("x0", cfg.x0);
  real("width", cfg.width);
  if (const Entry* e = get("output_dir")) cfg.output_dir = as_string(*e, "output_dir");
  real("front_threshold", cfg.front_threshold);
  if (const Entry* e = get("fit_window")) {
    const auto w = as_real_list(*e, "fit_window");
    if (w.size() != 2 || !(w[0] > 0.0) || !(w[1] > w[0])) fail(*e, "fit_window", "expected [t_lo, t_hi] with 0 < t_lo < t_hi");
    cfg.fit_t_lo = w[0];
    cfg.fit_t_hi = w[1];
  }
  if (const Entry* e = get("profile_points")) {
    const long p = as_integer(*e, "profile_points");
    if (p < 3 || p % 2 == 0) fail(*e, "profile_points", "must be an odd integer >= 3");
    cfg.profile_points = static_cast<int>(p);
  }
  real("theta", cfg.theta);
  real("r", cfg.r);
  real("R0", cfg.support_radius);
  if (const Entry* e = get("n_max")) cfg.n_max = static_cast<int>(as_integer(*e, "n_max"));
  real("degiorgi_T", cfg.degiorgi_T);
  if (const Entry* e = get("workers")) {
    const long w = as_integer(*e, "workers");
    if (w < 1) fail(*e, "workers", "must be >= 1");
    cfg.workers = static_cast<int>(w);
  }
  if (const Entry* e = get("determinism_check")) cfg.determinism_check = as_bool(*e, "determinism_check");

  if (const Entry* e = get("snapshot_times")) {
    cfg.schedule.snapshot_times = as_real_list(*e, "snapshot_times");
  } else {
    try {
      cfg.schedule.snapshot_times = Schedule::log_spaced(cfg.snapshot_t_min, cfg.schedule.t_end, cfg.snapshots_per_decade);
    } catch (const DomainError& err) {
      throw ConfigError(std::string("invalid snapshot spacing: ") + err.what());
    }
  }

  // Fail fast on everything a run would reject later.
  try {
    const Grid grid = cfg.grid();
    cfg.schedule.validate();
    if (cfg.ic == InitialCondition::mound) (void)mound_ic(grid, cfg.x0);
    else (void)point_source_ic(grid, cfg.width);
    if (!(cfg.front_threshold > 0.0)) throw DomainError("front_threshold must be positive");
    if (cfg.mode == Mode::degiorgi) {
      if (!(cfg.theta >= 1.0)) throw DomainError("theta must be >= 1");
      if (!(cfg.r > 2.0 * cfg.support_radius)) throw DomainError("need r > 2 R0");
      if (cfg.n_max < 0) throw DomainError("n_max must be >= 0");
    }
  } catch (const DomainError& err) {
    throw ConfigError(std::string("invalid configuration: ") + err.what());
  }
  return cfg;
}

}  // namespace degdiff
