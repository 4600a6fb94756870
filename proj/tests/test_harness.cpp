#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "osc/errors.hpp"
#include "osc/harness.hpp"
#include "osc/parallel.hpp"

using namespace osc;

namespace {
ExperimentReport run(const std::string& text) { return run_experiment(ExperimentConfig::parse(text)); }

double column(const ExperimentReport& r, std::size_t row, const std::string& name) {
  for (std::size_t c = 0; c < r.columns.size(); ++c)
    if (r.columns[c] == name) return std::stod(r.rows.at(row)[c]);
  FAIL("no column " << name);
  return 0.0;
}
}  // namespace

TEST_CASE("config parsing") {
  const auto c = ExperimentConfig::parse("# comment\nexperiment = tail\n--alpha=0.3\nN=4,8\nt_grid=1,2\nseed=9\n");
  CHECK(c.experiment == Experiment::Tail);
  CHECK(c.alpha == 0.3);
  CHECK(c.N_list == std::vector<int>{4, 8});
  CHECK(c.t_grid == std::vector<double>{1.0, 2.0});
  CHECK(c.seed == 9);
  CHECK(c.function_name() == "lacunary");
  CHECK(ExperimentConfig::parse("experiment=cancellation").function_name() == "weierstrass");
  CHECK(ExperimentConfig::parse("experiment=identity").function_name() == "all");
  CHECK_THROWS_AS(ExperimentConfig::parse("bogus=1"), InvalidArgument);
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha=abc"), InvalidArgument);
  CHECK_THROWS_AS(ExperimentConfig::parse("experiment=nothing"), InvalidArgument);
  CHECK_THROWS_AS(ExperimentConfig::parse("N=8,4").validate(), InvalidArgument);
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha=1.5").validate(), InvalidArgument);
  CHECK_THROWS_AS(ExperimentConfig::parse("source=other").validate(), InvalidArgument);
  for (auto e : {Experiment::L2Growth, Experiment::Tail, Experiment::ExpMoment, Experiment::LIL,
                 Experiment::Cancellation, Experiment::IdentitySweep})
    CHECK(experiment_from_string(to_string(e)) == e);
}

TEST_CASE("seeded streams") {
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 5) == stream_seed(1, 5));
  const auto a = sample_points(64, 3, 20), b = sample_points(64, 3, 20);
  CHECK(a == b);
  for (double x : a) {
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    const double scaled = std::ldexp(x, 20);
    CHECK(std::abs(scaled - std::round(scaled)) > std::ldexp(1.0, -25));
  }
  CHECK(sample_points(64, 4, 20) != a);
}

TEST_CASE("explicit exponential bound") {
  const double b = exp_moment_log_bound(0.5, 0.2, 8);
  CHECK(std::isfinite(b));
  CHECK(b > 0.0);
  CHECK(exp_moment_log_bound(0.5, 0.4, 8) > b);
  CHECK(exp_moment_log_bound(0.5, 0.2, 16) > b);
}

TEST_CASE("l2 growth on the constant function") {
  const auto r = run("experiment=l2\nfn=constant\nN=2,4\nM=16");
  for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(column(r, i, "mc_mean_sq") == 0.0);
  CHECK(r.passed());
}

TEST_CASE("l2 growth small run is reproducible") {
  const auto a = run("experiment=l2\nN=4,8\nM=64\nseed=2"), b = run("experiment=l2\nN=4,8\nM=64\nseed=2");
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_json() == b.to_json());
  CHECK(a.check("l2_monotone_in_N")->passed);
  CHECK(a.check("mc_vs_spectral")->passed);
}

TEST_CASE("tail on the constant function") {
  const auto r = run("experiment=tail\nfn=constant\nN=2,4\nM=16\nt-grid=0.5,1");
  for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(column(r, i, "exceedance") == 0.0);
}

TEST_CASE("exponential moment small run") {
  const auto r = run("experiment=expmoment\nM=50\nN=4,6\nseed=4");
  CHECK(r.check("finite")->passed);
  CHECK(r.check("single_c_covers_grid")->passed);
  CHECK(r.check("within_explicit_bound")->passed);
  REQUIRE(r.constant("extremal_c"));
  CHECK(r.constant("extremal_c")->value > r.constant("c_hat")->value);
  CHECK_THROWS_AS(run("experiment=expmoment\nN=30"), InvalidArgument);
}

TEST_CASE("lil closed forms") {
  const auto r = run("experiment=lil\nfn=constant\nN=16,20\nM=4\npaths=16");
  CHECK(r.constant("max_ratio")->value == 0.0);
  const auto s = run("experiment=lil\nfn=sign-power\nN=16,32\nM=2\npaths=16");
  bool saw_x0 = false;
  for (const auto& row : s.rows)
    if (row[0] == "function_x0" && row[3] == "32") {
      saw_x0 = true;
      CHECK(std::stod(row[5]) == doctest::Approx(64 * std::numbers::ln2 / std::sqrt(32 * std::log(std::log(32.0)))));
    }
  CHECK(saw_x0);
  CHECK_THROWS_AS(run("experiment=lil\nN=2"), InvalidArgument);
}

TEST_CASE("cancellation at the kink") {
  const auto r = run("experiment=cancellation\nfn=sign-power\nx=0\neps-levels=4,8");
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    if (r.rows[i][0] == "eps") {
      CHECK(column(r, i, "abs_ratio") == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(column(r, i, "signed_ratio") == doctest::Approx(2.0).epsilon(1e-12));
    }
  const auto c = run("experiment=cancellation\nfn=constant\nx=0.3\neps-levels=4");
  CHECK(c.constant("min_abs_ratio")->value == 0.0);
}

TEST_CASE("identity sweep on the constant function") {
  const auto r = run("experiment=identity\nfn=constant\nM=2\nrho=1,2");
  CHECK(r.passed());
  for (const auto& c : r.checks) CHECK(c.value == 0.0);
}

TEST_CASE("report rendering") {
  const auto r = run("experiment=l2\nN=4\nM=8");
  const auto csv = r.to_csv();
  CHECK(csv.rfind("N,mc_mean_sq", 0) == 0);
  CHECK(r.to_json().contains("checks"));
  CHECK(r.to_json().dump().find("wall") == std::string::npos);
  CHECK(r.summary().find("wall-clock") != std::string::npos);
  const auto dir = std::filesystem::temp_directory_path() / "osc_harness_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.csv").string();
  r.write(path);
  CHECK(std::filesystem::exists(dir / "out.json"));
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("N,", 0) == 0);
  CHECK_THROWS_AS(r.write("/nonexistent-dir/x.csv"), IoError);
}
