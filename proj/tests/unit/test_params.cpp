#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "degdiff/errors.hpp"
#include "degdiff/params.hpp"

using namespace degdiff;

TEST_SUITE("params") {
  TEST_CASE("alpha and gamma are inverse maps") {
    CHECK(alpha_from_gamma(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(alpha_from_gamma(0.0) == 0.0);
    CHECK(gamma_from_alpha(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(alpha_from_gamma(1.0), DomainError);
    CHECK_THROWS_AS(gamma_from_alpha(-0.1), DomainError);
  }

  TEST_CASE("to_divergence examples") {
    const DivParams a = to_divergence(NonDivParams{0.5, 0.0, 2.0, 1.0, 0.0});
    CHECK(a.gamma0 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.m == 0.0);
    CHECK(a.q0 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.alpha == doctest::Approx(1.0).epsilon(1e-15));

    // q0 = (sigma2/2)(alpha+1)^beta/(beta+1) = 1 * 2 / 2
    const DivParams b = to_divergence(NonDivParams{0.5, 1.0, 2.0, 1.0, 0.0});
    CHECK(b.gamma0 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(b.m == 1.0);
    CHECK(b.q0 == doctest::Approx(1.0).epsilon(1e-15));

    const DivParams c = to_divergence(NonDivParams{0.0, 0.0, 3.0, 1.0, 0.0});
    CHECK(c.gamma0 == 0.0);
    CHECK(c.q0 == doctest::Approx(1.5).epsilon(1e-15));
  }

  TEST_CASE("gamma >= 1 violates the mapping hypothesis") {
    try {
      to_divergence(NonDivParams{1.0, 0.0, 2.0, 1.0, 0.0});
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("mapping theorem hypothesis violated") != std::string::npos);
    }
    CHECK_THROWS_AS(to_divergence(NonDivParams{0.5, 0.0, 2.0, 1.0, 0.1}), DomainError);
    CHECK_THROWS_AS(to_divergence(NonDivParams{0.5, 0.0, -1.0, 1.0, 0.0}), DomainError);
  }

  TEST_CASE("round trip through the divergence form") {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> g(0.0, 0.95), b(0.0, 3.0), s(0.1, 5.0);
    for (int k = 0; k < 500; ++k) {
      const NonDivParams p{g(rng), b(rng), s(rng), 1.0, 0.0};
      const NonDivParams back = from_divergence(to_divergence(p));
      CHECK(back.gamma == doctest::Approx(p.gamma).epsilon(1e-12));
      CHECK(back.beta == doctest::Approx(p.beta).epsilon(1e-12));
      CHECK(back.sigma2 == doctest::Approx(p.sigma2).epsilon(1e-12));
    }
  }

  TEST_CASE("gamma0 grows monotonically with gamma") {
    double prev = -1.0;
    for (double gamma = 0.0; gamma < 0.99; gamma += 0.01) {
      const double g0 = to_divergence(NonDivParams{gamma, 1.0, 2.0, 1.0, 0.0}).gamma0;
      CHECK(g0 > prev);
      prev = g0;
    }
  }

  TEST_CASE("map_v_to_u") {
    const std::vector<double> v = {0.0, 0.25, 4.0};
    const auto u = map_v_to_u(v, 1.0);
    CHECK(u[0] == 0.0);
    CHECK(u[1] == doctest::Approx(0.0625));
    CHECK(u[2] == doctest::Approx(16.0));
    const std::vector<double> bad = {0.1, -1e-3};
    CHECK_THROWS_AS(map_v_to_u(bad, 1.0), DomainError);
    CHECK(rescale_time(3.0, 0.5) == 1.5);
  }

  // If u solves u_t = (sigma2/2) u^gamma |u_x|^beta u_xx then v = u^{1/(alpha+1)}
  // solves v_t = q0 (v^gamma0 |v_x|^m v_x)_x. Checked pointwise on a smooth
  // positive u, with the x-derivative of the flux taken by a 4th-order stencil.
  TEST_CASE("mapped equation holds pointwise for a smooth positive field") {
    for (const NonDivParams p : {NonDivParams{0.5, 1.0, 2.0, 1.0, 0.0}, NonDivParams{0.3, 0.5, 1.2, 1.0, 0.0},
                                 NonDivParams{0.6, 2.0, 0.7, 1.0, 0.0}}) {
      const DivParams d = to_divergence(p);
      const double a1 = d.alpha + 1.0;
      auto u = [](double x) { return 1.0 + 0.5 * std::sin(x); };
      auto ux = [](double x) { return 0.5 * std::cos(x); };
      auto uxx = [](double x) { return -0.5 * std::sin(x); };
      auto flux = [&](double x) {
        const double v = std::pow(u(x), 1.0 / a1);
        const double vx = std::pow(u(x), 1.0 / a1 - 1.0) * ux(x) / a1;
        return std::pow(v, d.gamma0) * std::pow(std::abs(vx), d.m) * vx;
      };
      for (double x : {0.3, 1.1, 2.0, 4.0}) {
        const double ut = 0.5 * p.sigma2 * std::pow(u(x), p.gamma) * std::pow(std::abs(ux(x)), p.beta) * uxx(x);
        const double vt = std::pow(u(x), 1.0 / a1 - 1.0) * ut / a1;
        const double h = 1e-3;
        const double dflux =
            (-flux(x + 2 * h) + 8 * flux(x + h) - 8 * flux(x - h) + flux(x - 2 * h)) / (12 * h);
        CHECK(d.q0 * dflux == doctest::Approx(vt).epsilon(1e-9));
      }
    }
  }
}
