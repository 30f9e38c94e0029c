#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "degdiff/errors.hpp"
#include "degdiff/selfsim.hpp"

using namespace degdiff;

namespace {

// Composite Simpson on [a, b] with n (even) panels.
double simpson(const std::function<double(double)>& g, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_SUITE("selfsim") {
  TEST_CASE("exponent and profile examples") {
    CHECK(exponent_nu(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(exponent_nu(2, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(exponent_nu(1, 1) == doctest::Approx(1.0 / 5.0).epsilon(1e-15));
    CHECK(profile_f(0.0, 1, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(profile_f(0.5, 1, 0) == doctest::Approx(0.75 / 6.0).epsilon(1e-15));
    CHECK(profile_f(1.0, 1, 0) == 0.0);
    CHECK(profile_f(-1.0, 2, 1) == 0.0);
    CHECK(profile_f(1.5, 1, 0) == 0.0);
    CHECK_THROWS_AS(profile_f(0.0, 0, 0), DomainError);
    CHECK_THROWS_AS(profile_f(0.0, 1, -1), DomainError);
  }

  TEST_CASE("front slope classification") {
    const ProfileSlope lin = profile_fprime(1.0, 1, 0);
    CHECK(lin.kind == SlopeKind::finite);
    CHECK(lin.value == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(profile_fprime(-1.0, 1, 0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const double h = 1e-6;
    const double fd = (profile_f(1.0, 1, 0) - profile_f(1.0 - h, 1, 0)) / h;
    CHECK(fd == doctest::Approx(-1.0 / 3.0).epsilon(1e-5));

    CHECK(profile_fprime(1.0, 0.5, 1).kind == SlopeKind::vanishing);
    CHECK(profile_fprime(1.0, 0.5, 1).value == 0.0);
    const ProfileSlope sing = profile_fprime(1.0, 2, 1);
    CHECK(sing.kind == SlopeKind::singular);
    CHECK(std::isinf(sing.value));
    CHECK(sing.value < 0.0);
    CHECK(profile_fprime(-1.0, 2, 1).value > 0.0);
    CHECK(profile_fprime(0.0, 2, 1).value == 0.0);
  }

  TEST_CASE("profile symmetry") {
    for (double g0 : {0.5, 1.0, 2.0}) {
      for (double m : {0.0, 0.5, 2.0}) {
        for (double xi : {0.1, 0.4, 0.77, 0.95}) {
          CHECK(profile_f(-xi, g0, m) == profile_f(xi, g0, m));
          CHECK(profile_fprime(-xi, g0, m).value == -profile_fprime(xi, g0, m).value);
        }
      }
    }
  }

  TEST_CASE("closed-form slope matches finite differences at second order") {
    for (double g0 : {0.5, 1.0, 3.0}) {
      for (double m : {0.0, 1.0}) {
        const double xi = 0.5;
        const double exact = profile_fprime(xi, g0, m).value;
        auto err = [&](double h) {
          return std::abs((profile_f(xi + h, g0, m) - profile_f(xi - h, g0, m)) / (2 * h) - exact);
        };
        // A quadratic profile (gamma0 = 1, m = 0) is differenced exactly.
        if (err(1e-2) < 1e-13) continue;
        const double order = std::log2(err(1e-2) / err(5e-3));
        CHECK(order >= 1.9);
      }
    }
  }

  TEST_CASE("first integral vanishes") {
    for (double g0 : {0.5, 1.0, 2.0}) {
      for (double m : {0.0, 1.0, 2.0}) {
        const double nu = exponent_nu(g0, m);
        for (int k = 1; k < 100; ++k) {
          const double xi = k / 100.0;
          const double scale = std::max(1.0, nu * xi * profile_f(xi, g0, m));
          CHECK(std::abs(first_integral_residual(xi, g0, m)) <= 1e-12 * scale);
        }
      }
    }
  }

  TEST_CASE("front constant examples") {
    CHECK(front_constant_gamma(1, 0) == doctest::Approx(std::cbrt(4.5)).epsilon(1e-13));
    CHECK(front_constant_quadrature(1, 0) == doctest::Approx(std::cbrt(4.5)).epsilon(1e-12));
    CHECK_THROWS_AS(front_constant_gamma(0, 0), DomainError);
  }

  // Independent oracle: Simpson's rule on the closed-form profile.
  TEST_CASE("front constant against Simpson quadrature") {
    for (double g0 : {0.5, 1.0, 2.0, 3.0}) {
      for (double m : {0.0, 0.5, 1.0, 2.0}) {
        const double integral = 2.0 * simpson([&](double xi) { return profile_f(xi, g0, m); }, 0.0, 1.0, 200000);
        const double eta = std::pow(integral, -(g0 + m) / (g0 + 2 * m + 2));
        CHECK(front_constant_gamma(g0, m) == doctest::Approx(eta).epsilon(1e-6));
        CHECK(front_constant_quadrature(g0, m) == doctest::Approx(front_constant_gamma(g0, m)).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("point-source solution carries unit mass") {
    for (auto [g0, m] : {std::pair{1.0, 0.0}, std::pair{2.0, 1.0}, std::pair{1.0, 1.0}}) {
      const auto s = SelfSimilarSolution::make(g0, m);
      for (double t : {0.1, 1.0, 10.0}) {
        const double xf = s.front_position(t);
        const double mass = simpson([&](double x) { return s.evaluate(x, t); }, -xf, xf, 200000);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(s.evaluate(1.0001 * xf, t) == 0.0);
      }
    }
  }

  TEST_CASE("solution matches its defining formula") {
    const auto s = SelfSimilarSolution::make(1, 0);
    CHECK(s.nu() == doctest::Approx(1.0 / 3.0));
    CHECK(s.eta_f() == doctest::Approx(std::cbrt(4.5)).epsilon(1e-13));
    const double t = 2.5, x = 0.7;
    const double expect = s.amplitude() * std::pow(t, -s.nu()) * profile_f(x * std::pow(t, -s.nu()) / s.eta_f(), 1, 0);
    CHECK(s.evaluate(x, t) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(s.front_position(8.0) == doctest::Approx(s.eta_f() * 2.0).epsilon(1e-15));
    CHECK_THROWS_AS(s.evaluate(0.0, 0.0), DomainError);
  }
}
