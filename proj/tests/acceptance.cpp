// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: osc_acceptance [criterion numbers...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "osc/dyadic.hpp"
#include "osc/format.hpp"
#include "osc/harness.hpp"
#include "osc/oscillation.hpp"
#include "osc/parallel.hpp"

using namespace osc;

namespace {

constexpr std::uint64_t kSeed = 20241015;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

ExperimentReport run(const std::string& text) { return run_experiment(ExperimentConfig::parse(text)); }

// Appends "name value op bound" for a report check and folds its verdict into ok.
void take(const ExperimentReport& r, const std::string& name, bool& ok, std::ostringstream& d) {
  const Check* c = r.check(name);
  if (!c) {
    ok = false;
    d << name << " missing; ";
    return;
  }
  ok = ok && c->passed;
  d << name << (c->passed ? " ok" : " FAILED") << " (" << g(c->value) << " vs " << g(c->bound) << "); ";
}

Outcome exact_identities() {
  const auto r = run("experiment=identity\nseed=" + std::to_string(kSeed));
  bool ok = true;
  std::ostringstream d;
  take(r, "translation", ok, d);
  take(r, "decomposition", ok, d);
  take(r, "no_failures", ok, d);
  return {ok, d.str()};
}

Outcome martingale_algebra() {
  double worst_sbp = 0.0, worst_energy = 0.0, worst_mart = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int N = 4 + i % 11;
    const auto tr = sample_random_martingale(0.5, 1.0, N, stream_seed(kSeed, i));
    const auto gt = transforms(tr, 0.5);
    worst_sbp = std::max(worst_sbp, summation_by_parts_residual(tr, gt));
    worst_mart = std::max(worst_mart, tr.martingale_residual());
    const auto e = energy_check(tr);
    worst_energy = std::max(worst_energy, std::abs(e.lhs - e.rhs));
  }
  const bool ok = worst_sbp <= 1e-12 && worst_energy <= 1e-10 && worst_mart <= 1e-12;
  return {ok, "100 traces, N 4..14: summation by parts " + g(worst_sbp) + " <= 1e-12, energy " + g(worst_energy) +
                  " <= 1e-10, martingale property " + g(worst_mart)};
}

Outcome spectral_representation() {
  const auto quad = default_quadrature();
  const auto xs = sample_points(20, kSeed, 16);
  double worst = 0.0;
  for (double a : {0.3, 0.5, 0.7}) {
    const int J = 16;
    const auto f = HolderFunction::lacunary_sine(a, J);
    std::vector<double> local(xs.size(), 0.0);
    parallel_for(xs.size(), [&](std::size_t i) {
      const auto p = theta_profile(f, xs[i], 12, quad);
      for (int N = 1; N <= 12; ++N)
        local[i] = std::max(local[i], std::abs(p.theta[N - 1] - theta_lacunary_spectral(a, xs[i], N, J, quad)));
    });
    for (double v : local) worst = std::max(worst, v);
  }
  return {worst <= 1e-6, "20 x, alpha 0.3/0.5/0.7, N 1..12: max |spectral - quadrature| " + g(worst) + " <= 1e-6"};
}

Outcome l2_growth() {
  const auto r = run("experiment=l2\nseed=" + std::to_string(kSeed));
  bool ok = true;
  std::ostringstream d;
  take(r, "l2_ratio_at_max_N", ok, d);
  take(r, "l2_monotone_in_N", ok, d);
  return {ok, d.str()};
}

Outcome subgaussian_tail() {
  const auto r = run("experiment=tail\nM=4096\nN=8,12,16\nseed=" + std::to_string(kSeed));
  bool ok = true;
  std::ostringstream d;
  take(r, "strict_decay_1_2_3", ok, d);
  take(r, "log_slope_negative", ok, d);
  take(r, "c_hat_stable", ok, d);
  return {ok, d.str()};
}

Outcome exponential_moment() {
  const auto r = run("experiment=expmoment\nM=1000\nN=8,12,16\nlambda-grid=0.1,0.2,0.4\nC=1\nseed=" +
                     std::to_string(kSeed));
  bool ok = true;
  std::ostringstream d;
  take(r, "single_c_covers_grid", ok, d);
  take(r, "finite", ok, d);
  d << "c_hat " << g(r.constant("c_hat")->value);
  return {ok, d.str()};
}

Outcome lil_boundedness() {
  const auto r = run("experiment=lil\nM=64\nseed=" + std::to_string(kSeed));
  bool ok = true;
  std::ostringstream d;
  take(r, "finite", ok, d);
  take(r, "ratio_band_H_normalized", ok, d);
  take(r, "martingale_gamma_bounded", ok, d);
  return {ok, d.str()};
}

Outcome cancellation() {
  const auto r = run("experiment=cancellation\nM=32\nseed=" + std::to_string(kSeed));
  bool ok = true;
  std::ostringstream d;
  take(r, "abs_ratio_floor", ok, d);
  take(r, "signed_ratio_small", ok, d);
  return {ok, d.str()};
}

Outcome higher_dimensions() {
  const auto quad = default_quadrature();
  const double eps = 1.0 / 256, L = std::log(1.0 / eps);
  const std::vector<HolderFunction> kinds = {
      HolderFunction::sign_power(0.5), HolderFunction::lacunary_sine(0.5, 8),
      HolderFunction::weierstrass_cos(0.5, 64, 2), HolderFunction::constant(0.5, 1.0),
      HolderFunction::linear(0.5, 1.0)};
  const auto circle = circle_rule(256);
  const double points[][2] = {{0.0, 0.0}, {0.3, -0.2}, {-0.41, 0.77}};
  double worst_full = 0.0;
  for (const auto& k : kinds)
    for (std::size_t axis = 0; axis < 2; ++axis) {
      const auto F = separable_field(k, 2, axis);
      for (const auto& p : points) worst_full = std::max(worst_full, std::abs(theta_dd(F, p, circle, eps, quad)));
    }

  const double a = 0.5;
  const auto g1 = HolderFunction::sign_power(a);
  const double origin2[] = {0.0, 0.0}, origin3[] = {0.0, 0.0, 0.0};
  // Angular factors from closed forms, independent of the direction rules.
  const double half_circle = 2.0 * std::sqrt(std::numbers::pi) * std::tgamma((a + 1) / 2) / std::tgamma(a / 2 + 1);
  const double hemisphere = 2.0 * 2.0 * std::numbers::pi / (a + 1);
  const double d2 = theta_dd(separable_field(g1, 2, 1), origin2, half_circle_rule(4096), eps, quad);
  const double d3 = theta_dd(separable_field(g1, 3, 2), origin3, sphere_rule(64, 8, true), eps, quad);
  const double rel2 = std::abs(d2 / (half_circle * 2 * L) - 1.0);
  const double rel3 = std::abs(d3 / (hemisphere * 2 * L) - 1.0);
  // Field varying along a tangential axis: the angular factor vanishes by symmetry.
  const double tangential = theta_dd(separable_field(g1, 2, 0), origin2, half_circle_rule(4096), eps, quad);

  const bool ok = worst_full <= 1e-10 && rel2 <= 1e-4 && rel3 <= 1e-4 && std::abs(tangential) <= 1e-4 * 2 * L;
  return {ok, "full circle max |theta_dd| " + g(worst_full) + " <= 1e-10; hemisphere d=2 rel " + g(rel2) +
                  ", d=3 rel " + g(rel3) + " <= 1e-4; tangential axis " + g(tangential) + " (factor 0)"};
}

Outcome bridging() {
  const auto quad = default_quadrature();
  const auto f = HolderFunction::lacunary_sine(0.5, 12);
  const double H = holder_ratio_max(f, Interval(-1.0, 2.0), 20000, 0x1.0p-40, kSeed);
  Rng rng(kSeed);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int N = 2 + int(rng.uniform(0.0, 11.0));
    const double x = rng.uniform(0.0, 1.0);
    const double eps = std::ldexp(1.0, -N - 1) * (1.0 + rng.uniform(0.0, 1.0));
    const double diff = std::abs(theta(f, x, eps, quad) - theta(f, x, std::ldexp(1.0, -N), quad));
    worst = std::max(worst, diff / (2.0 * H));
  }
  return {worst <= 1.0, "100 (x, eps), N 2..12: max |theta_eps - theta_2^-N| / 2H = " + g(worst) + " <= 1 (H = " +
                            g(H) + ")"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "exact averaging identities", 60, exact_identities},
      {2, "martingale algebra", 10, martingale_algebra},
      {3, "spectral representation", 120, spectral_representation},
      {4, "L2 growth law", 60, l2_growth},
      {5, "subgaussian tail", 600, subgaussian_tail},
      {6, "exponential moment", 300, exponential_moment},
      {7, "LIL boundedness", 600, lil_boundedness},
      {8, "cancellation", 600, cancellation},
      {9, "higher-dimensional sanity", 60, higher_dimensions},
      {10, "bridging bound", 30, bridging},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool passed = o.passed && in_time;
    if (!passed) ++failures;
    std::printf("%s %d %s: %s[%.1f s, budget %.0f s%s]\n", passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
