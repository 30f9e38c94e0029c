#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "degdiff/diagnostics.hpp"
#include "degdiff/errors.hpp"
#include "degdiff/selfsim.hpp"
#include "degdiff/solver.hpp"

using namespace degdiff;

namespace {

Trajectory sampled(const Grid& g, const DivParams& p, const std::vector<double>& times,
                   const std::function<double(double, double)>& v) {
  Trajectory tr{p, g, {}, {}};
  for (double t : times) {
    Snapshot s;
    s.t = t;
    for (std::size_t i = 0; i < g.n_cells(); ++i) s.values.push_back(v(g.center(i), t));
    tr.snapshots.push_back(std::move(s));
  }
  return tr;
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("mass and drift") {
    const Grid g(1.0, 16);
    Snapshot s;
    s.values.assign(16, 2.0);
    CHECK(mass(s, g) == doctest::Approx(4.0));
    Trajectory tr{DivParams{1, 0, 1, 0}, g, {s, s}, {}};
    tr.snapshots[1].values[0] = 4.0;
    CHECK(max_relative_mass_drift(tr) == doctest::Approx(0.0625));
  }

  TEST_CASE("front of a tent is found to within one cell") {
    const Grid g(4.0, 400);
    const std::vector<double> times = {0.0, 1.0, 2.0};
    const auto tr = sampled(g, DivParams{1, 0, 1, 0}, times,
                            [](double x, double t) { return std::max(0.0, 1.0 - std::abs(x) / (1.0 + t)); });
    const FrontTrace f = detect_front(tr);
    for (std::size_t k = 0; k < times.size(); ++k) CHECK(std::abs(f.x_front[k] - (1.0 + times[k])) <= g.dx());
    CHECK_THROWS_AS(detect_front(tr, 0.0), DomainError);
    CHECK_THROWS_AS(detect_front(tr, 5.0, false), DomainError);
  }

  TEST_CASE("power-law fit recovers exponent and prefactor") {
    FrontTrace f;
    for (int k = 0; k <= 40; ++k) {
      const double t = std::pow(10.0, k / 20.0 - 1.0);
      f.times.push_back(t);
      f.x_front.push_back(2.0 * std::pow(t, 0.25));
    }
    const FrontFit fit = fit_front_exponent(f, 1.0, 10.0);
    CHECK(fit.slope == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.points == 21);
    CHECK_THROWS_AS(fit_front_exponent(f, 1.0, 1.2), DomainError);
  }

  TEST_CASE("max principle flags an injected negative value") {
    const Grid g(4.0, 64);
    auto tr = sampled(g, DivParams{1, 0, 1, 0}, {0.0, 0.5, 1.0},
                      [](double x, double) { return std::max(0.0, 1.0 - x * x); });
    CHECK(max_principle_check(tr).pass);
    tr.snapshots[1].values[20] = -1e-6;
    const MaxPrincipleVerdict v = max_principle_check(tr);
    CHECK_FALSE(v.pass);
    REQUIRE(v.witness_x.has_value());
    CHECK(*v.witness_x == g.center(20));
    CHECK(*v.witness_t == 0.5);
    CHECK(v.interior_min == -1e-6);
  }

  TEST_CASE("selfsim distance recovers a time shift") {
    const Grid g(6.0, 1200);
    const auto s = SelfSimilarSolution::make(1, 0);
    const auto tr = sampled(g, DivParams{1, 0, 1, 0}, {0.0, 1.0},
                            [&](double x, double t) { return t > 0 ? s.evaluate(x, t + 0.3) : 0.0; });
    const ShiftedDistance d = selfsim_distance(tr, s, 1.0);
    CHECK(d.shift == doctest::Approx(0.3).epsilon(1e-3));
    CHECK(d.distance < 1e-3);

    const auto zero = sampled(g, DivParams{1, 0, 1, 0}, {0.0, 1.0}, [](double, double) { return 0.0; });
    CHECK(selfsim_distance(zero, s, 1.0).distance == doctest::Approx(1.0).epsilon(1e-3));
  }

  TEST_CASE("mapping residual of a zero field is zero") {
    const Grid g(4.0, 64);
    const auto tr = sampled(g, DivParams{1, 0, 1, 0}, {0.0, 0.5, 1.0}, [](double, double) { return 0.0; });
    const MappingResidual r = mapping_residual(tr, NonDivParams{0.5, 0.0, 2.0, 1.0, 0.0});
    REQUIRE(r.residual.size() == 1);
    CHECK(r.residual[0] == 0.0);
    CHECK(r.cells_used[0] == 0);
    CHECK_THROWS_AS(mapping_residual(tr, NonDivParams{0.5, 1.0, 2.0, 1.0, 0.0}), DomainError);
  }

  // Linear case: u = v solves u_t = u_xx, so the residual on the exact heat
  // kernel is pure truncation error and must fall as the grid is refined.
  TEST_CASE("mapping residual on the exact heat kernel shrinks under refinement") {
    auto kernel = [](double x, double t) {
      return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
    };
    std::vector<double> res;
    for (int lev : {1, 2, 4}) {
      const Grid g(8.0, 160 * lev);
      const double dt = 0.02 / lev;
      const auto tr = sampled(g, DivParams{0, 0, 1, 0}, {1.0 - dt, 1.0, 1.0 + dt}, kernel);
      const MappingResidual r = mapping_residual(tr, NonDivParams{0.0, 0.0, 2.0, 1.0, 0.0});
      res.push_back(r.residual[0]);
    }
    CHECK(res[1] < res[0]);
    CHECK(res[2] < res[1]);
    CHECK(std::log2(res[1] / res[2]) >= 1.0);
  }

  TEST_CASE("localization exponents") {
    CHECK(degiorgi_q(1.0, 0.5, 0.0) == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(degiorgi_zeta(1.0, 0.5, 0.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(degiorgi_epsilon0(1.0, 0.5, 0.0) == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
    // beta = 1, gamma = 1/2, theta = 2: q = 9/4.5 = 2, zeta = 1.5/(1.5 + 9) = 1/7, eps0 = (6/7)(1/2)
    CHECK(degiorgi_q(2.0, 0.5, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(degiorgi_zeta(2.0, 0.5, 1.0) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
    CHECK(degiorgi_epsilon0(2.0, 0.5, 1.0) == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
  }

  TEST_CASE("energies vanish outside a compact support") {
    const Grid g(6.0, 600);
    Schedule s;
    s.t_end = 0.5;
    s.snapshot_times = {0.1, 0.25, 0.5};
    const Trajectory tr = run(mound_ic(g, 1.0), DivParams{1, 0, 1, 0}, g, s);
    DeGiorgiConfig cfg;
    cfg.nondiv = from_divergence(tr.params);
    const DeGiorgiReport rep = degiorgi_energies(tr, cfg, 0.5);
    REQUIRE(rep.I.size() == 7);
    REQUIRE(rep.radii.size() == 8);
    CHECK(rep.radii[0] == doctest::Approx(2.2));
    CHECK(rep.radii[1] == doctest::Approx(3.3));
    CHECK(rep.I[0] >= 0.0);
    for (std::size_t n = 1; n < rep.I.size(); ++n) {
      CHECK(rep.I[n] <= 1e-14);
      CHECK(rep.I[n] <= rep.I[n - 1]);
    }
    DeGiorgiConfig wide = cfg;
    wide.r = 4.0;
    CHECK_THROWS_AS(degiorgi_energies(tr, wide, 0.5), DomainError);
  }
}
