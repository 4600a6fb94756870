#pragma once

// Seeded experiments over the oscillation functional and its dyadic model.
// Every run returns a report whose CSV/JSON renderings depend only on the
// configuration; wall-clock time appears in the text summary alone.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "osc/function.hpp"

namespace osc {

inline constexpr const char* kVersion = "1.0.0";

enum class Experiment { L2Growth, Tail, ExpMoment, LIL, Cancellation, IdentitySweep };

std::string to_string(Experiment e);
// Accepts l2, tail, expmoment, lil, cancellation, identity.
Experiment experiment_from_string(const std::string& name);

struct ExperimentConfig {
  Experiment experiment = Experiment::L2Growth;

  // Function descriptor. Empty fn picks the experiment's default: weierstrass
  // for cancellation, all four default kinds for the identity sweep (`all`),
  // lacunary otherwise. terms < 0 picks a per-experiment default.
  std::string fn;
  double alpha = 0.5;
  int base = 0;  // 0: 2 for lacunary, 64 for weierstrass
  int terms = -1;
  double level = 1.0;

  std::vector<int> N_list;
  int M = 0;  // 0: per-experiment default
  std::uint64_t seed = 1;
  std::vector<double> t_grid;
  std::vector<double> lambda_grid;
  std::vector<double> rho_list;
  std::vector<int> eps_levels;  // cancellation: eps = 2^{-k}
  std::vector<double> x_list;   // explicit points; replaces random sampling
  int paths = 0;                // LIL martingale paths; 0: default
  // Expmoment / LIL trace source: synthetic or function.
  std::string source = "synthetic";
  double C = 1.0;
  // Cancellation acceptance level; <= 0 uses the recorded pilot value when
  // the setup matches it, otherwise the floor checks are skipped.
  double r0 = -1.0;
  std::string sweep = "default";
  std::string output_path;

  // Flat key=value text, '#' starts a comment. Keys mirror the CLI flags.
  static ExperimentConfig parse(const std::string& text);
  // Sets one key; throws InvalidArgument on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  // Resolved function kind name.
  std::string function_name() const;
  HolderFunction make_function() const;
  void validate() const;
  nlohmann::json to_json() const;
};

struct FittedConstant {
  std::string name;
  double value = 0.0;
  std::string method;
};

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<FittedConstant> constants;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  double wall_seconds = 0.0;

  bool passed() const;
  const FittedConstant* constant(const std::string& name) const;
  const Check* check(const std::string& name) const;

  std::string to_csv() const;
  nlohmann::json to_json() const;
  // Human-readable; includes wall-clock time.
  std::string summary() const;
  // CSV at `path`, JSON next to it with the extension replaced by .json.
  void write(const std::string& path) const;
};

// Sample points in [0,1) from per-index streams, rejecting a 2^{-45}
// neighbourhood of dyadic rationals of level <= level_cap.
std::vector<double> sample_points(std::size_t count, std::uint64_t seed, int level_cap);

ExperimentReport run_l2_growth(const ExperimentConfig& cfg);
ExperimentReport run_tail(const ExperimentConfig& cfg);
ExperimentReport run_exp_moment(const ExperimentConfig& cfg);
ExperimentReport run_lil(const ExperimentConfig& cfg);
ExperimentReport run_cancellation(const ExperimentConfig& cfg);
ExperimentReport run_identity_sweep(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Log of the explicit exponential-moment bound for Gamma*_n per unit length
// with C = 1 (summation by parts plus the subgaussian bound for T).
double exp_moment_log_bound(double beta, double lambda, int n);

}  // namespace osc
