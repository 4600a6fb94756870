#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "osc/quadrature.hpp"

using namespace osc;

TEST_CASE("polynomials are exact") {
  QuadratureSpec q;
  for (int rule : {15, 21, 31}) {
    q.rule = rule;
    const auto r = integrate([](double x) { return 5 * x * x * x * x - 3 * x + 1; }, -1.0, 2.0, q);
    CHECK(r.value == doctest::Approx(33.0 - 4.5 + 3.0).epsilon(1e-14));
    CHECK(r.converged);
  }
}

TEST_CASE("oscillatory integrand per period") {
  QuadratureSpec q;
  q.scheme = QuadScheme::PerPeriod;
  q.period = 0.01;
  const auto r = integrate([](double x) { return std::sin(200 * std::numbers::pi * x) * std::exp(-x); }, 0.0, 1.0, q);
  const double w = 200 * std::numbers::pi;
  const double exact = w * (1.0 - std::exp(-1.0)) / (1.0 + w * w);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("breakpoints handle kinks") {
  QuadratureSpec q;
  const double cut[] = {0.3};
  const auto r = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, q, cut);
  CHECK(r.value == doctest::Approx(0.045 + 0.245).epsilon(1e-14));
  CHECK(r.subdivisions == 0);
}

TEST_CASE("integrable endpoint singularity") {
  QuadratureSpec q;
  q.abs_tol = q.rel_tol = 1e-8;
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, q);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("non-convergence is reported") {
  QuadratureSpec q;
  q.max_subdiv = 3;
  q.abs_tol = q.rel_tol = 1e-14;
  auto f = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
  const auto d = integrate_detailed(f, 0.0, 1.0, q);
  CHECK_FALSE(d.converged);
  CHECK_THROWS_AS(integrate(f, 0.0, 1.0, q), QuadratureError);
  try {
    integrate(f, 0.0, 1.0, q);
  } catch (const QuadratureError& e) {
    CHECK(e.achieved().error > 0.0);
  }
}

TEST_CASE("settings validation") {
  QuadratureSpec q;
  q.rule = 17;
  CHECK_THROWS_AS(q.validate(), InvalidArgument);
  q = QuadratureSpec{};
  q.abs_tol = -1;
  CHECK_THROWS_AS(q.validate(), InvalidArgument);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0, QuadratureSpec{}), InvalidArgument);
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, QuadratureSpec{}).value == 0.0);
}

TEST_CASE("signed and absolute integrals together") {
  QuadratureSpec q;
  auto s = [](double x) { return std::sin(x); };
  const auto r = integrate_with_abs(s, 0.0, 4 * std::numbers::pi, q);
  CHECK(r.abs_value == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(std::abs(r.signed_part.value) < 1e-12);
  const auto p = integrate_with_abs([](double x) { return x - 0.25; }, 0.0, 1.0, q, {}, 1);
  CHECK(p.abs_value == doctest::Approx(0.03125 + 0.28125).epsilon(1e-14));
  CHECK(p.signed_part.value == doctest::Approx(0.25).epsilon(1e-14));
}
