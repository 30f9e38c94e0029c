#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "degdiff/io.hpp"
#include "degdiff/selfsim.hpp"
#include "degdiff/solver.hpp"

using namespace degdiff;

TEST_SUITE("io") {
  TEST_CASE("formatted doubles parse back bit for bit") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> ex(-300, 300);
    for (int k = 0; k < 20000; ++k) {
      const double x = std::ldexp(mant(rng), ex(rng));
      CHECK(parse_double(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(std::isinf(parse_double(format_double(-std::numeric_limits<double>::infinity()))));
  }

  TEST_CASE("snapshot CSV round trip") {
    const Grid g(3.0, 32);
    Schedule s;
    s.t_end = 0.3;
    s.snapshot_times = {0.1, 0.2, 0.3};
    const Trajectory tr = run(mound_ic(g, 1.0), DivParams{2, 1, 1, 0}, g, s);
    std::stringstream ss;
    write_snapshots_csv(ss, tr);
    const SnapshotTable back = read_snapshots_csv(ss);
    REQUIRE(back.snapshots.size() == tr.snapshots.size());
    for (std::size_t i = 0; i < g.n_cells(); ++i) CHECK(back.x[i] == g.center(i));
    for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
      CHECK(back.snapshots[k].t == tr.snapshots[k].t);
      CHECK(back.snapshots[k].values == tr.snapshots[k].values);
    }
  }

  TEST_CASE("front CSV round trip") {
    FrontTrace f;
    f.times = {0.0, 0.1, 1.0 / 3.0};
    f.x_front = {1.0, 1.0000000000000002, std::sqrt(2.0)};
    std::stringstream ss;
    write_front_csv(ss, f);
    CHECK(ss.str().rfind("t,x_front\n", 0) == 0);
    const FrontTrace back = read_front_csv(ss);
    CHECK(back.times == f.times);
    CHECK(back.x_front == f.x_front);
  }

  TEST_CASE("malformed CSV is rejected") {
    std::stringstream bad("t,x,v\n0,1\n");
    CHECK_THROWS(read_snapshots_csv(bad));
    std::stringstream header("a,b\n");
    CHECK_THROWS(read_front_csv(header));
  }

  TEST_CASE("profile table centre row") {
    std::stringstream ss;
    write_profile_csv(ss, 1, 0, 201);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "xi,f,fprime");
    int rows = 0;
    bool centre = false;
    while (std::getline(ss, line)) {
      ++rows;
      if (line.rfind("0,", 0) == 0) {
        std::stringstream row(line);
        std::string xi, f;
        std::getline(row, xi, ',');
        std::getline(row, f, ',');
        CHECK(parse_double(f) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
        centre = true;
      }
    }
    CHECK(rows == 201);
    CHECK(centre);
  }

  TEST_CASE("log-log table carries both slopes") {
    FrontTrace f;
    for (int k = 0; k <= 20; ++k) {
      const double t = std::pow(10.0, k / 20.0);
      f.times.push_back(t);
      f.x_front.push_back(std::pow(t, 0.3));
    }
    FrontFit fit{0.3, 0.0, 1.0, 1.0, 10.0, 21};
    std::stringstream ss;
    write_loglog_front_csv(ss, f, fit, 1.0 / 3.0);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "t,x_front,log_t,log_x_front,log_x_fit,log_x_theory,fit_slope,theory_slope");
  }

  TEST_CASE("energy report JSON keys") {
    DeGiorgiReport r;
    r.q = 1.6;
    r.I = {1.0, 0.0};
    const auto j = nlohmann::json::parse(degiorgi_report_json(r));
    CHECK(j.at("q").get<double>() == 1.6);
    CHECK(j.at("I").size() == 2);
    CHECK(j.contains("zeta"));
    CHECK(j.contains("epsilon0"));
  }
}
