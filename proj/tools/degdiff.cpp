#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "degdiff/config.hpp"
#include "degdiff/errors.hpp"
#include "degdiff/experiment.hpp"

namespace {

constexpr const char* kModes = "simulate, selfsim, front-fit, verify-mapping, degiorgi, acceptance";

int fail(const std::string& out_dir, degdiff::ExitCode code, const std::string& message) {
  std::cerr << "degdiff: " << message << '\n';
  try {
    degdiff::write_error_summary(out_dir, code, message);
  } catch (const std::exception& e) {
    std::cerr << "degdiff: could not write summary: " << e.what() << '\n';
  }
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doubly degenerate diffusion experiments"};
  std::string mode, config_path, out_dir;
  std::vector<std::string> overrides;
  app.add_option("mode", mode, std::string("One of: ") + kModes)->required();
  app.add_option("--config", config_path, "YAML configuration file")->required();
  app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
  app.add_option("--override", overrides, "key=value, repeatable; wins over the file")->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(degdiff::ExitCode::config_error);
  }

  const std::string fallback_dir = out_dir.empty() ? "degdiff_out" : out_dir;
  std::ifstream in(config_path);
  if (!in) return fail(fallback_dir, degdiff::ExitCode::config_error, "cannot read config file " + config_path);
  std::stringstream text;
  text << in.rdbuf();

  overrides.insert(overrides.begin(), "mode=" + mode);
  if (!out_dir.empty()) overrides.push_back("output_dir=" + out_dir);

  degdiff::ExperimentConfig cfg;
  try {
    cfg = degdiff::parse_config(text.str(), overrides);
  } catch (const degdiff::ConfigError& e) {
    return fail(fallback_dir, degdiff::ExitCode::config_error, e.what());
  }

  const degdiff::ExperimentOutcome outcome = degdiff::run_experiment(cfg);
  if (cfg.mode == degdiff::Mode::acceptance) {
    std::cout << outcome.message;
  } else if (outcome.code == degdiff::ExitCode::success) {
    std::cout << "wrote " << cfg.output_dir << "/summary.json\n";
  } else {
    std::cerr << "degdiff: " << outcome.message << '\n';
  }
  return static_cast<int>(outcome.code);
}
