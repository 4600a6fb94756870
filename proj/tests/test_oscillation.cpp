#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "osc/errors.hpp"
#include "osc/oscillation.hpp"

using namespace osc;

namespace {
const double kLn2 = std::numbers::ln2;
const QuadratureSpec kQuad = default_quadrature();
}  // namespace

TEST_CASE("theta closed forms") {
  CHECK(theta(HolderFunction::sign_power(0.5), 0.0, 1.0 / 256, kQuad) == doctest::Approx(16 * kLn2).epsilon(1e-13));
  CHECK(theta(HolderFunction::sign_power(0.3), 0.0, 1.0 / 256, kQuad) == doctest::Approx(16 * kLn2).epsilon(1e-13));
  CHECK(theta(HolderFunction::constant(0.5, 4.0), 0.7, 0.01, kQuad) == 0.0);
  // Linear slope 1: int_eps^1 2h h^{-alpha-1} dh
  const double a = 0.5, eps = 0.01;
  CHECK(theta(HolderFunction::linear(a, 1.0), 0.2, eps, kQuad) ==
        doctest::Approx(2.0 * (1.0 - std::pow(eps, 1.0 - a)) / (1.0 - a)).epsilon(1e-12));
}

TEST_CASE("theta argument checks") {
  const auto f = HolderFunction::sign_power(0.5);
  CHECK_THROWS_AS(theta(f, 0.0, 0.0, kQuad), InvalidArgument);
  CHECK_THROWS_AS(theta(f, 0.0, 0.5, kQuad), InvalidArgument);
  CHECK_THROWS_AS(theta_profile(f, 0.0, 0, kQuad), InvalidArgument);
  auto q = kQuad;
  q.max_subdiv = 1;
  q.abs_tol = q.rel_tol = 1e-15;
  q.scheme = QuadScheme::CompositeAdaptive;
  CHECK_THROWS_AS(theta(HolderFunction::lacunary_sine(0.5, 12), 0.3, 1.0 / 4096, q), QuadratureError);
}

TEST_CASE("theta matches the spectral form") {
  for (double a : {0.3, 0.5, 0.7}) {
    const auto f = HolderFunction::lacunary_sine(a, 14);
    CHECK(std::abs(theta(f, 0.3, 1.0 / 256, kQuad) - theta_lacunary_spectral(a, 0.3, 8, 14, kQuad)) <= 1e-6);
  }
}

TEST_CASE("profile") {
  const auto p = theta_profile(HolderFunction::sign_power(0.5), 0.0, 10, kQuad);
  for (int k = 1; k <= 10; ++k) CHECK(p.theta[k - 1] == doctest::Approx(2 * k * kLn2).epsilon(1e-12));
  CHECK(p.theta_star.back() == doctest::Approx(20 * kLn2).epsilon(1e-12));
  CHECK(p.eps_bridge == doctest::Approx(4.0));
  const auto z = theta_profile(HolderFunction::constant(0.5, 1.0), 0.3, 5, kQuad);
  for (double v : z.theta_star) CHECK(v == 0.0);

  const auto f = HolderFunction::lacunary_sine(0.5, 16);
  const auto q = theta_profile(f, 0.3, 12, kQuad);
  // theta itself needs eps < 1/2, so level 1 is checked through the raw integral.
  CHECK(std::abs(q.theta[0] - oscillation_integral(f, 0.3, 0.5, 1.0, kQuad).value) <= 1e-8);
  for (int k = 2; k <= 12; ++k) {
    CHECK(std::abs(q.theta[k - 1] - theta(f, 0.3, std::ldexp(1.0, -k), kQuad)) <= 1e-8);
    CHECK(q.theta_star[k - 1] >= q.theta_star[k - 2]);
  }
}

TEST_CASE("coefficients") {
  const double a = 0.5;
  // additivity
  const double head = sine_weight_integral(0.0, 2.0, a, kQuad);
  CHECK(coeff_c(3, 2, a, kQuad) + head == doctest::Approx(coeff_b(3, a, kQuad) / 2).epsilon(1e-10));
  const double c01 = coeff_c(0, 1, a, kQuad);
  CHECK(c01 < 0.0);
  auto tight = kQuad;
  tight.abs_tol = tight.rel_tol = 1e-13;
  tight.scheme = QuadScheme::CompositeAdaptive;
  const double oracle =
      integrate([](double t) { return std::sin(2 * std::numbers::pi * t) * std::pow(t, -1.5); }, 0.5, 1.0, tight).value;
  CHECK(c01 == doctest::Approx(oracle).epsilon(1e-12));
  const double ratio = std::abs(coeff_c(15, 10, a, kQuad)) / std::abs(coeff_c(16, 10, a, kQuad));
  CHECK(std::abs(ratio / std::pow(2.0, 1 + a) - 1.0) <= 0.3);
  CHECK(coeff_b(0, a, kQuad) > 0.0);
  CHECK_THROWS_AS(coeff_c(-1, 2, a, kQuad), InvalidArgument);
  CHECK_THROWS_AS(coeff_b(-1, a, kQuad), InvalidArgument);
}

TEST_CASE("b_j tends to A(alpha)") {
  const double A = limit_A(0.5);
  CHECK(std::abs(coeff_b(20, 0.5, kQuad) - A) <= 1e-6);
  double prev = HUGE_VAL;
  for (int J = 5; J <= 20; ++J) {
    const double d = std::abs(coeff_b(J, 0.5, kQuad) - A);
    CHECK(d < prev);
    prev = d;
  }
  for (int j = 8; j < 12; ++j)
    CHECK(std::abs(coeff_b(j + 1, 0.5, kQuad) - coeff_b(j, 0.5, kQuad)) <= 4 * std::pow(2.0, -j * 1.5));
}

TEST_CASE("A(alpha)") {
  for (double a : {0.1, 0.5, 0.9}) CHECK(limit_A(a) > 0.0);
  for (double a : {0.3, 0.5, 0.7}) CHECK(limit_A(a) == doctest::Approx(limit_A_closed_form(a)).epsilon(1e-8));
}

TEST_CASE("spectral at x = 0 and decomposition") {
  const int N = 6, J = 12;
  double sum = 0.0;
  for (int j = 0; j <= J; ++j) sum += coeff_c(j, N, 0.5, kQuad);
  CHECK(theta_lacunary_spectral(0.5, 0.0, N, J, kQuad) == doctest::Approx(2 * sum).epsilon(1e-12));
  const auto k = lacunary_constants(0.5, 12, 20, kQuad);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 64; ++i) {
    const auto d = lacunary_decomposition(0.5, u(rng), 12, 20, kQuad);
    CHECK(std::abs(d.error) <= k.e_bound);
  }
}

TEST_CASE("abs_theta") {
  CHECK(abs_theta(HolderFunction::sign_power(0.5), 0.0, 1.0 / 256, kQuad) == doctest::Approx(16 * kLn2).epsilon(1e-13));
  CHECK(abs_theta(HolderFunction::constant(0.5, 1.0), 0.1, 0.01, kQuad) == 0.0);
  const auto f = HolderFunction::weierstrass_cos(0.5, 64, 3);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int strict = 0;
  for (int i = 0; i < 8; ++i) {
    const double x = u(rng);
    const double a = abs_theta(f, x, 1.0 / 4096, kQuad), s = theta(f, x, 1.0 / 4096, kQuad);
    CHECK(a >= std::abs(s) * (1 - 1e-12));
    if (a >= 2 * std::abs(s)) ++strict;
  }
  CHECK(strict >= 1);
}

TEST_CASE("directional functionals") {
  const auto g = HolderFunction::sign_power(0.5);
  const auto F = separable_field(g, 2, 0);
  const double origin[] = {0.0, 0.0}, x[] = {0.3, -0.2};
  const double e2[] = {0.0, 1.0}, e1[] = {1.0, 0.0};
  CHECK(theta_directional(F, x, e2, 1.0 / 256, kQuad) == 0.0);
  CHECK(theta_directional(F, origin, e1, 1.0 / 256, kQuad) == doctest::Approx(16 * kLn2).epsilon(1e-12));
  const double bad[] = {1.0, 1.0};
  CHECK_THROWS_AS(theta_directional(F, x, bad, 0.1, kQuad), InvalidArgument);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto L = separable_field(HolderFunction::lacunary_sine(0.5, 10), 2, 1);
  for (int i = 0; i < 20; ++i) {
    const double ang = std::numbers::pi * u(rng);
    const double xi[] = {std::cos(ang), std::sin(ang)}, mxi[] = {-xi[0], -xi[1]};
    const double p[] = {u(rng), u(rng)};
    const double a = theta_directional(L, p, xi, 1.0 / 64, kQuad), b = theta_directional(L, p, mxi, 1.0 / 64, kQuad);
    CHECK(std::abs(a + b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("theta_dd") {
  const auto F = separable_field(HolderFunction::sign_power(0.5), 2, 0);
  const double x[] = {0.1, 0.4};
  CHECK(std::abs(theta_dd(F, x, circle_rule(256), 1.0 / 64, kQuad)) <= 1e-10);
  const auto C = separable_field(HolderFunction::constant(0.5, 2.0), 2, 0);
  CHECK(theta_dd(C, x, half_circle_rule(32), 1.0 / 64, kQuad) == 0.0);
  CHECK_THROWS_AS(theta_dd(F, x, std::vector<Direction>{}, 0.1, kQuad), InvalidArgument);
  CHECK_THROWS_AS(circle_rule(3), InvalidArgument);

  // Along the last axis the hemisphere factor is nonzero: 2 int_0^pi sin^a.
  const double a = 0.5;
  const auto G = separable_field(HolderFunction::sign_power(a), 2, 1);
  const double origin[] = {0.0, 0.0};
  const auto rule = half_circle_rule(512);
  double factor = 0.0;
  for (const auto& d : rule) factor += d.weight * std::pow(d.xi[1], a);
  CHECK(theta_dd(G, origin, rule, 1.0 / 256, kQuad) == doctest::Approx(factor * 2 * 8 * kLn2).epsilon(1e-10));
  const double closed = 2 * std::sqrt(std::numbers::pi) * std::tgamma((a + 1) / 2) / std::tgamma(a / 2 + 1);
  CHECK(factor == doctest::Approx(closed).epsilon(1e-3));
}

TEST_CASE("coefficient table csv") {
  const int Ns[] = {2, 4};
  const auto csv = coefficient_table_csv(0.5, Ns, 3, kQuad);
  CHECK(csv.rfind("j,N,alpha,c\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 4);
}
