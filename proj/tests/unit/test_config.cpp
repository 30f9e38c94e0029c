#include <doctest.h>

#include <string>

#include "degdiff/config.hpp"
#include "degdiff/errors.hpp"

using namespace degdiff;

namespace {

std::string error_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal config gets defaults") {
    const ExperimentConfig c = parse_config("{mode: selfsim, gamma0: 1, m: 0}");
    CHECK(c.mode == Mode::selfsim);
    CHECK_FALSE(c.nondiv_input);
    CHECK(c.params.gamma0 == 1.0);
    CHECK(c.params.m == 0.0);
    CHECK(c.params.q0 == 1.0);
    CHECK(c.x_max == 12.0);
    CHECK(c.n_cells == 2400);
    CHECK(c.schedule.t_end == 10.0);
    CHECK(c.schedule.snapshot_times.back() == 10.0);
    CHECK(c.ic == InitialCondition::mound);
    CHECK(c.front_threshold == 1e-10);
    CHECK(c.fit_t_lo == 1.0);
    CHECK(c.fit_t_hi == 10.0);
  }

  TEST_CASE("non-divergence input is mapped") {
    const ExperimentConfig c = parse_config("gamma: 0.5\nbeta: 1\n");
    CHECK(c.nondiv_input);
    CHECK(c.params.gamma0 == doctest::Approx(2.0));
    CHECK(c.params.m == 1.0);
    CHECK(c.params.q0 == doctest::Approx(1.0));
    CHECK(c.nondiv_params().gamma == 0.5);
  }

  TEST_CASE("gamma = 1 is rejected with the mapping message") {
    const std::string e = error_of("gamma: 1\nbeta: 0\n");
    CHECK(e.find("mapping theorem hypothesis violated") != std::string::npos);
  }

  TEST_CASE("duplicate key reports both locations") {
    const std::string e = error_of("gamma0: 1\nm: 0\ngamma0: 2\n");
    CHECK(e.find("duplicate key 'gamma0'") != std::string::npos);
    CHECK(e.find("line 3") != std::string::npos);
    CHECK(e.find("line 1") != std::string::npos);
  }

  TEST_CASE("unknown keys and bad values are errors with location") {
    const std::string e = error_of("gamma0: 1\nspeed: 3\n");
    CHECK(e.find("unknown key 'speed'") != std::string::npos);
    CHECK(e.find("line 2") != std::string::npos);
    CHECK(error_of("n_cells: 8\n").find("n_cells") != std::string::npos);
    CHECK(error_of("x_max: abc\n").find("expected a number") != std::string::npos);
    CHECK_FALSE(error_of("mode: bogus\n").empty());
    CHECK_FALSE(error_of("gamma: 0.5\ngamma0: 1\n").empty());
    CHECK_FALSE(error_of("[1, 2]").empty());
    CHECK_FALSE(error_of("gamma0: [1\n").empty());
  }

  TEST_CASE("overrides win over the file") {
    const ExperimentConfig c =
        parse_config("gamma0: 1\nm: 0\nn_cells: 600\n", {"n_cells=1200", "fit_window=[2, 5]", "mode=front-fit"});
    CHECK(c.n_cells == 1200);
    CHECK(c.fit_t_lo == 2.0);
    CHECK(c.fit_t_hi == 5.0);
    CHECK(c.mode == Mode::front_fit);
    CHECK(error_of("gamma0: 1\n", {"nonsense"}).find("key=value") != std::string::npos);
    CHECK(error_of("gamma0: 1\n", {"colour=red"}).find("unknown key") != std::string::npos);
  }

  TEST_CASE("every mode name parses back") {
    for (Mode m : {Mode::simulate, Mode::selfsim, Mode::front_fit, Mode::verify_mapping, Mode::degiorgi,
                   Mode::acceptance}) {
      CHECK(parse_mode(mode_name(m)) == m);
    }
  }

  TEST_CASE("empty config is all defaults") {
    const ExperimentConfig c = parse_config("");
    CHECK(c.mode == Mode::simulate);
    CHECK(c.params.gamma0 == 1.0);
  }
}
