#include "osc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "osc/averaging.hpp"
#include "osc/dyadic.hpp"
#include "osc/errors.hpp"
#include "osc/format.hpp"
#include "osc/oscillation.hpp"
#include "osc/parallel.hpp"

namespace osc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kExclusion = 0x1.0p-45;

// Pilot value for the default cancellation setup (b = 64, alpha = 0.5,
// terms = 4, 32 points, eps = 2^-8..2^-20): half the smallest abs ratio seen
// with seed 20240601. The acceptance run uses a different seed.
constexpr double kCancellationPilotR0 = 0.5 * 0.15235061657815491;

struct Spread {
  double ratio_spread = kNaN;  // max/min - 1
  double median_dev = kNaN;    // max |c / median - 1|
};

// NaN fields when any value is non-finite or not positive.
Spread spread_of(std::vector<double> cs) {
  Spread out;
  if (cs.empty()) return out;
  for (double c : cs)
    if (!(std::isfinite(c) && c > 0.0)) return out;
  std::sort(cs.begin(), cs.end());
  const std::size_t n = cs.size();
  const double median = n % 2 ? cs[n / 2] : 0.5 * (cs[n / 2 - 1] + cs[n / 2]);
  out.ratio_spread = cs.back() / cs.front() - 1.0;
  out.median_dev = std::max(std::abs(cs.front() / median - 1.0), std::abs(cs.back() / median - 1.0));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string cell(double v) { return fmt17(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(std::size_t v) { return std::to_string(v); }

double loglog(int N) { return std::log(std::log(double(N))); }

// sqrt(N ln2 * lnlnln(N ln2)), NaN where the triple logarithm is not positive.
double triple_log_norm(int N) {
  const double L = N * std::numbers::ln2;
  const double l3 = std::log(std::log(std::log(L)));
  return (std::isfinite(l3) && l3 > 0.0) ? std::sqrt(L * l3) : kNaN;
}

double estimate_holder(const HolderFunction& f, std::uint64_t seed) {
  if (auto h = f.seminorm_hint()) return *h;
  return holder_ratio_max(f, Interval(-1.0, 2.0), 20000, 0x1.0p-40, seed);
}

bool spectral_available(const HolderFunction& f) {
  return f.kind() == FunctionKind::LacunarySine && f.shift() == 0.0;
}

// theta_{2^{-k}}(f)(x) for k = 1..n_max, one row per point.
std::vector<std::vector<double>> theta_levels(const HolderFunction& f, const std::vector<double>& xs, int n_max,
                                              const QuadratureSpec& quad) {
  std::vector<std::vector<double>> out(xs.size());
  if (spectral_available(f)) {
    std::vector<LacunarySpectrum> spectra;
    for (int k = 1; k <= n_max; ++k) spectra.emplace_back(f.alpha(), k, f.terms(), quad);
    parallel_for(xs.size(), [&](std::size_t i) {
      out[i].resize(n_max);
      for (int k = 0; k < n_max; ++k) out[i][k] = spectra[k].theta(xs[i]);
    });
    return out;
  }
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = theta_profile(f, xs[i], n_max, quad).theta; });
  return out;
}

std::vector<double> points_for(const ExperimentConfig& cfg, const std::vector<double>& explicit_x,
                               std::size_t count, int level_cap) {
  if (!explicit_x.empty()) return explicit_x;
  return sample_points(count, cfg.seed, level_cap);
}

void add_check(ExperimentReport& r, std::string name, bool ok, double value, double bound, std::string detail) {
  r.checks.push_back({std::move(name), ok, value, bound, std::move(detail)});
}

int default_terms(Experiment e, const std::string& fn) {
  if (fn == "weierstrass") return 4;
  return e == Experiment::IdentitySweep ? 12 : 60;
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
  return v.empty() ? fallback : v;
}

// Minimax fit of c exp(-t^2/c) to exceedances on a log grid of c.
double fit_subgaussian(const std::vector<double>& t, const std::vector<double>& p, double* residual) {
  double best_c = kNaN, best = HUGE_VAL;
  for (int i = 0; i <= 6000; ++i) {
    const double c = std::pow(10.0, -2.0 + 6.0 * i / 6000.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
      worst = std::max(worst, std::abs(p[k] - c * std::exp(-t[k] * t[k] / c)));
    if (worst < best) {
      best = worst;
      best_c = c;
    }
  }
  if (residual) *residual = best;
  return best_c;
}

double log_sum_exp(const std::vector<double>& v) {
  double m = -HUGE_VAL;
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::L2Growth: return "l2";
    case Experiment::Tail: return "tail";
    case Experiment::ExpMoment: return "expmoment";
    case Experiment::LIL: return "lil";
    case Experiment::Cancellation: return "cancellation";
    case Experiment::IdentitySweep: return "identity";
  }
  return "unknown";
}

Experiment experiment_from_string(const std::string& name) {
  for (auto e : {Experiment::L2Growth, Experiment::Tail, Experiment::ExpMoment, Experiment::LIL,
                 Experiment::Cancellation, Experiment::IdentitySweep})
    if (to_string(e) == name) return e;
  throw InvalidArgument("unknown experiment '" + name + "'");
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key=value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void ExperimentConfig::set(const std::string& key_in, const std::string& value) {
  std::string key = key_in;
  while (!key.empty() && key.front() == '-') key.erase(0, 1);
  std::replace(key.begin(), key.end(), '_', '-');
  auto real = [&] {
    const auto v = parse_real_list(value);
    if (v.size() != 1) throw InvalidArgument("'" + key + "' expects one number");
    return v[0];
  };
  auto integer = [&] {
    const auto v = parse_int_list(value);
    if (v.size() != 1) throw InvalidArgument("'" + key + "' expects one integer");
    return v[0];
  };
  if (key == "experiment") experiment = experiment_from_string(value);
  else if (key == "fn") fn = value;
  else if (key == "alpha") alpha = real();
  else if (key == "base") base = integer();
  else if (key == "terms") terms = integer();
  else if (key == "level") level = real();
  else if (key == "N") N_list = parse_int_list(value);
  else if (key == "M") M = integer();
  else if (key == "seed") {
    const double s = real();
    if (!(s >= 0.0) || s != std::floor(s) || s > 9.007199254740992e15)
      throw InvalidArgument("seed must be a non-negative integer");
    seed = std::uint64_t(s);
  } else if (key == "t-grid") t_grid = parse_real_list(value);
  else if (key == "lambda-grid") lambda_grid = parse_real_list(value);
  else if (key == "rho") rho_list = parse_real_list(value);
  else if (key == "eps-levels") eps_levels = parse_int_list(value);
  else if (key == "x") x_list = parse_real_list(value);
  else if (key == "source") source = value;
  else if (key == "C") C = real();
  else if (key == "r0") r0 = real();
  else if (key == "paths") paths = integer();
  else if (key == "sweep") sweep = value;
  else if (key == "out") output_path = value;
  else throw InvalidArgument("unknown config key '" + key_in + "'");
}

std::string ExperimentConfig::function_name() const {
  if (!fn.empty()) return fn;
  if (experiment == Experiment::Cancellation) return "weierstrass";
  if (experiment == Experiment::IdentitySweep) return "all";
  return "lacunary";
}

HolderFunction ExperimentConfig::make_function() const {
  const std::string fn = function_name();
  const int t = terms >= 0 ? terms : default_terms(experiment, fn);
  if (fn == "lacunary") return HolderFunction::lacunary_sine(alpha, t);
  if (fn == "weierstrass") return HolderFunction::weierstrass_cos(alpha, base > 0 ? base : 64, t);
  if (fn == "sign-power") return HolderFunction::sign_power(alpha);
  if (fn == "constant") return HolderFunction::constant(alpha, level);
  if (fn == "linear") return HolderFunction::linear(alpha, level);
  throw InvalidArgument("unknown function kind '" + fn + "'");
}

void ExperimentConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0,1)");
  if (M < 0) throw InvalidArgument("M must be >= 1");
  if (paths < 0) throw InvalidArgument("paths must be >= 1");
  for (std::size_t i = 1; i < N_list.size(); ++i)
    if (N_list[i] <= N_list[i - 1]) throw InvalidArgument("N list must be strictly ascending");
  for (int n : N_list)
    if (n < 1) throw InvalidArgument("N values must be >= 1");
  if (source != "synthetic" && source != "function") throw InvalidArgument("source must be synthetic or function");
  if (!(C > 0.0)) throw InvalidArgument("C must be positive");
  if (function_name() == "all") {
    if (experiment != Experiment::IdentitySweep) throw InvalidArgument("fn=all is only valid for the identity sweep");
  } else {
    (void)make_function();
  }
  if (sweep != "default") throw InvalidArgument("only the default sweep is defined");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = to_string(experiment);
  j["fn"] = function_name();
  j["alpha"] = alpha;
  j["base"] = base;
  j["terms"] = terms;
  j["level"] = level;
  j["N"] = N_list;
  j["M"] = M;
  j["seed"] = seed;
  j["t_grid"] = t_grid;
  j["lambda_grid"] = lambda_grid;
  j["rho"] = rho_list;
  j["eps_levels"] = eps_levels;
  j["x"] = x_list;
  j["source"] = source;
  j["C"] = C;
  j["r0"] = r0;
  j["paths"] = paths;
  j["sweep"] = sweep;
  return j;
}

// ---------------------------------------------------------------------------

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const FittedConstant* ExperimentReport::constant(const std::string& name) const {
  for (const auto& c : constants)
    if (c.name == name) return &c;
  return nullptr;
}

const Check* ExperimentReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string ExperimentReport::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += '\n';
  }
  return out;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = config.to_json();
  j["passed"] = passed();
  auto& cs = j["constants"] = nlohmann::json::array();
  for (const auto& c : constants) cs.push_back({{"name", c.name}, {"value", fmt17(c.value)}, {"method", c.method}});
  auto& ch = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    ch.push_back({{"name", c.name}, {"passed", c.passed}, {"value", fmt17(c.value)}, {"bound", fmt17(c.bound)},
                  {"detail", c.detail}});
  j["notes"] = notes;
  j["columns"] = columns;
  j["row_count"] = rows.size();
  return j;
}

std::string ExperimentReport::summary() const {
  std::ostringstream out;
  out << "experiment " << to_string(config.experiment) << "  fn=" << config.function_name() << "  alpha=" << fmt17(config.alpha)
      << "  seed=" << config.seed << '\n';
  for (const auto& c : constants) out << "  " << c.name << " = " << fmt17(c.value) << "  [" << c.method << "]\n";
  for (const auto& c : checks)
    out << "  " << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << fmt17(c.value) << " vs " << fmt17(c.bound)
        << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
  for (const auto& n : notes) out << "  note: " << n << '\n';
  out << "  rows: " << rows.size() << "  wall-clock: " << fmt17(std::round(wall_seconds * 1000.0) / 1000.0)
      << " s  version " << kVersion << '\n';
  out << (passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

void ExperimentReport::write(const std::string& path) const {
  if (path.empty()) throw InvalidArgument("output path is empty");
  std::string json_path = path;
  const auto slash = json_path.find_last_of('/');
  const auto dot = json_path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) json_path.erase(dot);
  json_path += ".json";
  if (json_path == path) json_path += ".json";
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << to_csv();
    if (!f) throw IoError("failed writing '" + path + "'");
  }
  std::ofstream f(json_path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + json_path + "' for writing");
  f << to_json().dump(2) << '\n';
  if (!f) throw IoError("failed writing '" + json_path + "'");
}

// ---------------------------------------------------------------------------

std::vector<double> sample_points(std::size_t count, std::uint64_t seed, int level_cap) {
  std::vector<double> xs(count);
  const int cap = std::clamp(level_cap, 0, 50);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(stream_seed(seed, i));
    for (;;) {
      const double x = rng.uniform();
      const double scaled = std::ldexp(x, cap);
      const double dist = std::ldexp(std::abs(scaled - std::nearbyint(scaled)), -cap);
      if (dist >= kExclusion) {
        xs[i] = x;
        break;
      }
    }
  }
  return xs;
}

double exp_moment_log_bound(double beta, double lambda, int n) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in (0,1)");
  if (!(lambda > 0.0) || n < 1) throw InvalidArgument("need lambda > 0 and n >= 1");
  const double q = std::pow(2.0, -beta);
  const double sigma = (1.0 + q) / (1.0 - q) * std::sqrt(double(n + 1)) * lambda;
  // int exp(T*) <= rho + 2 sqrt(2 pi) sigma exp(sigma^2/2), per unit length.
  const double log_x = std::log(2.0 * std::sqrt(2.0 * std::numbers::pi) * sigma) + 0.5 * sigma * sigma;
  const double log_tail = log_x > 30.0 ? log_x + std::log1p(std::exp(-log_x)) : std::log1p(std::exp(log_x));
  return lambda / (1.0 - q) + log_tail;
}

// ---------------------------------------------------------------------------

ExperimentReport run_l2_growth(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = Experiment::L2Growth;
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto Ns = or_default(cfg.N_list, {8, 16, 24, 32});
  const int M = cfg.M > 0 ? cfg.M : 4096;
  const auto f = cfg.make_function();
  const auto quad = default_quadrature();
  const int n_max = Ns.back();

  ExperimentReport r;
  r.config = cfg;
  r.columns = {"N", "mc_mean_sq", "mc_stderr", "spectral_sq", "spectral_over_N", "ratio_to_half_A_sq", "mc_z"};
  const auto xs = points_for(cfg, cfg.x_list, M, n_max);
  const auto th = theta_levels(f, xs, n_max, quad);
  const bool spectral = spectral_available(f);
  const double A = limit_A(cfg.alpha);
  const double H = estimate_holder(f, cfg.seed);

  std::vector<double> spec_vals;
  double c_upper = 0.0, min_lower_ratio = HUGE_VAL, worst_z = 0.0;
  for (int N : Ns) {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& row : th) {
      const double v = row[N - 1] * row[N - 1];
      sum += v;
      sum_sq += v * v;
    }
    const double n = double(xs.size());
    const double mean = sum / n;
    const double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    const double se = std::sqrt(var / n);
    double s = kNaN, z = kNaN;
    if (spectral) {
      s = LacunarySpectrum(cfg.alpha, N, f.terms(), quad).l2_norm_squared();
      spec_vals.push_back(s);
      z = se > 0.0 ? (mean - s) / se : (mean == s ? 0.0 : HUGE_VAL);
      worst_z = std::max(worst_z, std::abs(z));
      min_lower_ratio = std::min(min_lower_ratio, s / (0.5 * A * A * N));
    }
    const double norm = spectral ? s : mean;
    if (H > 0.0) c_upper = std::max(c_upper, norm / (N * std::numbers::ln2 * H * H));
    r.rows.push_back({cell(N), cell(mean), cell(se), cell(s), cell(s / N), cell(s / N / (0.5 * A * A)), cell(z)});
  }

  r.constants.push_back({"A_alpha", A, "limit_A: sine integral to infinity, asymptotic tail beyond t=16"});
  r.constants.push_back({"holder_H", H, "seminorm hint or holder_ratio_max over [-1,2], 20000 pairs"});
  r.constants.push_back({"c_upper", c_upper, "max over N of ||theta||^2 / (N ln2 H^2)"});
  if (spectral) {
    r.constants.push_back({"min_ratio_to_half_A_sq_N", min_lower_ratio, "min over N of spectral / (A^2 N / 2)"});
    const double last = spec_vals.back() / Ns.back() / (0.5 * A * A);
    add_check(r, "l2_ratio_at_max_N", std::abs(last - 1.0) <= 0.15, last, 0.15,
              "spectral/N over A^2/2 at N=" + std::to_string(Ns.back()) + ", |ratio-1| <= 0.15");
    bool mono = true;
    for (std::size_t i = 1; i < spec_vals.size(); ++i) mono = mono && spec_vals[i] > spec_vals[i - 1];
    add_check(r, "l2_monotone_in_N", mono, double(mono), 1.0, "spectral norm strictly increasing over N list");
    add_check(r, "mc_vs_spectral", worst_z <= 3.0, worst_z, 3.0, "max |z| of Monte Carlo against spectral");
  } else {
    r.notes.push_back("no spectral representation for this kind; Monte Carlo only");
  }
  bool finite = true;
  for (const auto& row : th)
    for (double v : row) finite = finite && std::isfinite(v);
  add_check(r, "finite", finite, double(finite), 1.0, "all sampled theta values finite");
  r.notes.push_back("x uniform on [0,1) from per-index streams, 2^-45 neighbourhood of level<=" +
                    std::to_string(n_max) + " dyadic rationals excluded");
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentReport run_tail(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = Experiment::Tail;
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto Ns = or_default(cfg.N_list, {8, 12, 16});
  const auto ts = or_default(cfg.t_grid, {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0});
  const int M = cfg.M > 0 ? cfg.M : 4096;
  const auto f = cfg.make_function();
  const auto quad = default_quadrature();
  const int n_max = Ns.back();

  ExperimentReport r;
  r.config = cfg;
  r.columns = {"N", "t", "threshold", "exceedance", "count", "model"};
  const auto xs = points_for(cfg, cfg.x_list, M, n_max);
  const auto th = theta_levels(f, xs, n_max, quad);
  const double H = estimate_holder(f, cfg.seed);
  r.constants.push_back({"holder_H", H, "seminorm hint or holder_ratio_max over [-1,2], 20000 pairs"});

  std::vector<double> c_hats;
  bool all_monotone = true, normalized = true;
  for (int N : Ns) {
    std::vector<double> star(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double m = 0.0;
      for (int k = 0; k < N; ++k) m = std::max(m, std::abs(th[i][k]));
      star[i] = m;
    }
    const double n = double(xs.size());
    auto exceed = [&](double thr) {
      std::size_t c = 0;
      for (double v : star) c += v > thr;
      return c;
    };
    const double p0 = exceed(0.0) / n;
    normalized = normalized && p0 <= 1.0;
    std::vector<double> p(ts.size()), fit_t, fit_p;
    std::vector<std::size_t> counts(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
      counts[k] = exceed(ts[k] * std::sqrt(double(N)) * H);
      p[k] = counts[k] / n;
      if (k > 0 && p[k] > p[k - 1]) all_monotone = false;
      if (p[k] > 0.0 && p[k] < 1.0) {
        fit_t.push_back(ts[k]);
        fit_p.push_back(p[k]);
      }
    }
    double resid = kNaN, c = kNaN;
    if (!fit_t.empty()) c = fit_subgaussian(fit_t, fit_p, &resid);
    c_hats.push_back(c);
    for (std::size_t k = 0; k < ts.size(); ++k)
      r.rows.push_back({cell(N), cell(ts[k]), cell(ts[k] * std::sqrt(double(N)) * H), cell(p[k]), cell(counts[k]),
                        cell(std::isfinite(c) ? c * std::exp(-ts[k] * ts[k] / c) : kNaN)});
    r.constants.push_back({"c_hat_N" + std::to_string(N), c,
                           "minimax over log grid c in [1e-2,1e4] of max_t |P(t) - c exp(-t^2/c)|, P in (0,1)"});
    r.constants.push_back({"fit_residual_N" + std::to_string(N), resid, "minimax residual of the fit"});
    r.constants.push_back({"P0_N" + std::to_string(N), p0, "fraction with theta* > 0"});

    if (N == n_max) {
      // Least-squares slope of log P against t^2.
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int m = 0;
      for (std::size_t k = 0; k < ts.size(); ++k)
        if (p[k] > 0.0) {
          const double x = ts[k] * ts[k], y = std::log(p[k]);
          sx += x, sy += y, sxx += x * x, sxy += x * y, ++m;
        }
      const double slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : kNaN;
      r.constants.push_back({"log_slope_N" + std::to_string(N), slope, "least squares of log P vs t^2 over P > 0"});
      add_check(r, "log_slope_negative", slope < 0.0, slope, 0.0, "at N=" + std::to_string(N));
      auto at = [&](double t) {
        for (std::size_t k = 0; k < ts.size(); ++k)
          if (ts[k] == t) return p[k];
        return kNaN;
      };
      const double p1 = at(1.0), p2 = at(2.0), p3 = at(3.0);
      if (std::isfinite(p1) && std::isfinite(p2) && std::isfinite(p3))
        add_check(r, "strict_decay_1_2_3", p1 > p2 && p2 > p3 && p3 > 0.0, p3, 0.0,
                  "P(1) > P(2) > P(3) > 0 at N=" + std::to_string(N) + ": " + fmt17(p1) + " " + fmt17(p2) + " " +
                      fmt17(p3));
    }
  }
  add_check(r, "monotone_in_t", all_monotone, double(all_monotone), 1.0, "exceedance nonincreasing in t");
  add_check(r, "normalization", normalized, double(normalized), 1.0, "P(0) <= 1");
  if (c_hats.size() >= 2) {
    const auto st = spread_of(c_hats);
    r.constants.push_back({"c_hat_spread", st.ratio_spread, "max/min - 1 of c_hat over N"});
    r.constants.push_back({"c_hat_median_dev", st.median_dev, "max |c_hat_N / median - 1| over N"});
    add_check(r, "c_hat_stable", st.median_dev <= 0.5, st.median_dev, 0.5,
              "every per-N fit within 50% of the median fit");
  }
  r.notes.push_back("threshold t sqrt(N) H with H the empirical Holder ratio");
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentReport run_exp_moment(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = Experiment::ExpMoment;
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto Ns = or_default(cfg.N_list, {8, 12, 16});
  const auto lambdas = or_default(cfg.lambda_grid, {0.1, 0.2, 0.4});
  const int M = cfg.M > 0 ? cfg.M : 1000;
  const int n_max = Ns.back();
  if (n_max > kMaxDenseLevel) throw InvalidArgument("expmoment needs N <= " + std::to_string(kMaxDenseLevel));
  const double beta = 1.0 - cfg.alpha;
  const bool synthetic = cfg.source == "synthetic";

  ExperimentReport r;
  r.config = cfg;
  r.columns = {"N", "lambda", "log_mean_exp", "fitted_rhs", "explicit_log_bound", "extremal_log"};

  // per_trace[i][l * Ns.size() + n] = log of the spatial mean of exp(lambda Gamma*_N)
  std::vector<std::vector<double>> per_trace(M);
  std::optional<HolderFunction> f;
  double H = kNaN;
  if (!synthetic) {
    f = cfg.make_function();
    H = estimate_holder(*f, cfg.seed);
  }
  parallel_for(M, [&](std::size_t i) {
    const std::uint64_t s = stream_seed(cfg.seed, i);
    MartingaleTrace tr;
    if (synthetic) {
      tr = sample_random_martingale(beta, cfg.C, n_max, s);
    } else {
      Rng rng(s);
      const double rho = rng.uniform(1.0, 2.0);
      const double shift = rng.uniform(0.0, rho);
      tr = martingale_from_function(f->translated(shift), rho, n_max, H);
    }
    const auto g = transforms(tr, 1.0 - tr.beta);
    auto& out = per_trace[i];
    out.resize(lambdas.size() * Ns.size());
    for (std::size_t l = 0; l < lambdas.size(); ++l)
      for (std::size_t n = 0; n < Ns.size(); ++n) {
        const auto& star = g.gamma_star[Ns[n]];
        std::vector<double> v(star.size());
        for (std::size_t j = 0; j < star.size(); ++j) v[j] = lambdas[l] * star[j];
        out[l * Ns.size() + n] = log_sum_exp(v) - std::log(double(v.size()));
      }
  });

  double c_hat = 0.0;
  std::vector<double> c_by_N(Ns.size(), 0.0);
  bool within_explicit = true, finite = true;
  double extremal_c = 0.0;
  for (std::size_t n = 0; n < Ns.size(); ++n) {
    const int N = Ns[n];
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
      std::vector<double> v(M);
      for (int i = 0; i < M; ++i) v[i] = per_trace[i][l * Ns.size() + n];
      const double L = log_sum_exp(v) - std::log(double(M));
      const double lam = lambdas[l];
      finite = finite && std::isfinite(L);
      const double ratio = L / (1.0 + lam * lam * N);
      c_hat = std::max(c_hat, ratio);
      c_by_N[n] = std::max(c_by_N[n], ratio);
      const double bound = synthetic ? exp_moment_log_bound(beta, lam * cfg.C, N) : kNaN;
      if (synthetic && !(L <= bound)) within_explicit = false;
      const double extremal = lam * cfg.C * N;
      extremal_c = std::max(extremal_c, extremal / (1.0 + lam * lam * N));
      r.rows.push_back({cell(N), cell(lam), cell(L), cell(kNaN), cell(bound), cell(extremal)});
    }
  }
  for (auto& row : r.rows) {
    const double N = std::stod(row[0]), lam = std::stod(row[1]);
    row[3] = cell(c_hat + c_hat * lam * lam * N);
  }
  bool covered = true;
  for (const auto& row : r.rows) covered = covered && std::stod(row[2]) <= std::stod(row[3]) * (1.0 + 1e-12);

  r.constants.push_back({"c_hat", c_hat, "max over (lambda,N) grid of log-mean-exp / (1 + lambda^2 N)"});
  for (std::size_t n = 0; n < Ns.size(); ++n)
    r.constants.push_back({"c_hat_N" + std::to_string(Ns[n]), c_by_N[n], "same fit restricted to one N"});
  const auto st = spread_of(c_by_N);
  r.constants.push_back({"c_hat_spread", st.ratio_spread, "max/min - 1 of per-N fits"});
  r.constants.push_back({"c_hat_median_dev", st.median_dev, "max |c_hat_N / median - 1| over N"});
  r.constants.push_back({"extremal_c", extremal_c,
                         "fit needed by the deterministic extremal path Gamma*_N = C N (worst case)"});
  if (!synthetic) r.constants.push_back({"holder_H", H, "seminorm hint or holder_ratio_max"});

  add_check(r, "finite", finite, double(finite), 1.0, "log-mean-exp finite on the grid");
  add_check(r, "single_c_covers_grid", covered && c_hat > 0.0, c_hat, 0.0,
            "log mean <= c + c lambda^2 N with one fitted c");
  if (synthetic) {
    add_check(r, "within_explicit_bound", within_explicit, double(within_explicit), 1.0,
              "log mean below the explicit bound from summation by parts");
    if (Ns.size() >= 2)
      add_check(r, "c_hat_stable", st.median_dev <= 0.5, st.median_dev, 0.5,
                "every per-N fit within 50% of the median fit");
  }
  r.notes.push_back(synthetic ? "synthetic traces: S_0 = 0, children S_k +- d, d uniform on "
                                "[0, min(C 2^{(k+1)beta} - |S_k|, C 2^{(k+1)beta}(1 - 2^{-beta}))], Rademacher sign"
                              : "function traces at random (rho, s) in [1,2] x [0,rho], Gamma scaled by rho^beta");
  r.notes.push_back("deterministic extremal path S_k = C 2^{k beta} gives log value lambda C N; flagged worst case");
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentReport run_lil(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = Experiment::LIL;
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<int> Ns = cfg.N_list;
  if (Ns.empty())
    for (int n = 16; n <= 36; ++n) Ns.push_back(n);
  for (int n : Ns)
    if (!(loglog(n) > 0.0)) throw InvalidArgument("ln ln N must be positive; N = " + std::to_string(n));
  const int M = cfg.M > 0 ? cfg.M : 64;
  const int P = cfg.paths > 0 ? cfg.paths : 4096;
  const int n_max = Ns.back();
  const auto f = cfg.make_function();
  const auto quad = default_quadrature();
  const double A = limit_A(cfg.alpha);
  const double H = estimate_holder(f, cfg.seed);

  ExperimentReport r;
  r.config = cfg;
  r.columns = {"series", "index", "x", "N", "value", "ratio_loglog", "ratio_triplelog", "running_max", "checkpoint"};
  auto checkpoint = [](int N) { return (N & (N - 1)) == 0 ? 1 : 0; };

  const auto xs = points_for(cfg, cfg.x_list, M, n_max);
  const auto th = theta_levels(f, xs, n_max, quad);
  double max_ratio = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double running = 0.0;
    for (int N : Ns) {
      const double v = th[i][N - 1];
      const double ratio = std::abs(v) / std::sqrt(N * loglog(N));
      const double triple = std::abs(v) / triple_log_norm(N);
      finite = finite && std::isfinite(ratio);
      running = std::max(running, ratio);
      r.rows.push_back({"function", cell(i), cell(xs[i]), cell(N), cell(v), cell(ratio), cell(triple), cell(running),
                        cell(checkpoint(N))});
    }
    max_ratio = std::max(max_ratio, running);
  }
  if (f.kind() == FunctionKind::SignPower) {
    // x = 0: theta_{2^{-N}} = 2 N ln 2, ratio grows like sqrt(N / ln ln N).
    double running = 0.0;
    for (int N : Ns) {
      const double v = 2.0 * N * std::numbers::ln2;
      const double ratio = v / std::sqrt(N * loglog(N));
      running = std::max(running, ratio);
      r.rows.push_back({"function_x0", "-1", cell(0.0), cell(N), cell(v), cell(ratio), cell(v / triple_log_norm(N)),
                        cell(running), cell(checkpoint(N))});
    }
    r.notes.push_back("x = 0 is the measure-zero extremal point of sign-power; its ratio diverges");
  }

  // Martingale paths.
  const double beta = 1.0 - cfg.alpha;
  const double q = std::pow(2.0, -beta);
  std::vector<std::vector<double>> T(P), G(P);
  parallel_for(P, [&](std::size_t p) {
    const auto s = sample_martingale_path(beta, cfg.C, n_max, stream_seed(cfg.seed ^ 0x5bd1e995ULL, p));
    T[p].assign(n_max + 1, 0.0);
    G[p].assign(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
      const double w = std::pow(2.0, -n * beta);
      T[p][n] = T[p][n - 1] + (s[n] - s[n - 1]) * w;
      G[p][n] = G[p][n - 1] + w * s[n];
    }
  });
  double c_T = 0.0, g_ratio = 0.0;
  for (int N : Ns) {
    double mt = 0.0, mg = 0.0;
    for (int p = 0; p < P; ++p) {
      mt = std::max(mt, std::abs(T[p][N]));
      mg = std::max(mg, std::abs(G[p][N]));
    }
    const double norm = std::sqrt(N * loglog(N));
    c_T = std::max(c_T, mt / norm);
    g_ratio = std::max(g_ratio, mg / norm);
    r.rows.push_back({"martingale_T", "-1", cell(kNaN), cell(N), cell(mt), cell(mt / norm),
                      cell(mt / triple_log_norm(N)), cell(c_T), cell(checkpoint(N))});
    r.rows.push_back({"martingale_Gamma", "-1", cell(kNaN), cell(N), cell(mg), cell(mg / norm),
                      cell(mg / triple_log_norm(N)), cell(g_ratio), cell(checkpoint(N))});
  }

  r.constants.push_back({"A_alpha", A, "limit_A"});
  r.constants.push_back({"holder_H", H, "seminorm hint or holder_ratio_max over [-1,2], 20000 pairs"});
  r.constants.push_back({"max_ratio", max_ratio, "max over sampled x and N of |theta| / sqrt(N ln ln N)"});
  r.constants.push_back({"max_ratio_over_H", H > 0.0 ? max_ratio / H : kNaN, "max_ratio / H"});
  r.constants.push_back({"c_T", c_T, "max over paths and N of |T_N| / sqrt(N ln ln N)"});
  r.constants.push_back({"gamma_ratio", g_ratio, "max over paths and N of |Gamma_N| / sqrt(N ln ln N)"});

  add_check(r, "finite", finite, double(finite), 1.0, "ratios finite at every sampled x");
  if (f.kind() == FunctionKind::LacunarySine) {
    const double normalized = max_ratio / H;
    add_check(r, "ratio_band_H_normalized", normalized >= 0.1 * A && normalized <= 4.0 * A, normalized, 4.0 * A,
              "max_ratio/H within [0.1 A, 4 A], 0.1 A = " + fmt17(0.1 * A));
    add_check(r, "ratio_band_raw", max_ratio <= 4.0 * A * H && max_ratio > 0.1 * A, max_ratio, 4.0 * A * H,
              "max_ratio <= 4 A H and > 0.1 A");
  }
  const double g_bound = 4.0 / (1.0 - q) * c_T;
  add_check(r, "martingale_gamma_bounded", g_ratio <= g_bound, g_ratio, g_bound,
            "max |Gamma_N|/sqrt(N lnln N) <= 4 (1-2^-beta)^-1 c_T");
  r.notes.push_back("normalizations sqrt(N ln ln N) and sqrt(N ln2 lnlnln(N ln2)) reported side by side; "
                    "the latter is NaN where lnlnln is not positive");
  r.notes.push_back("checkpoint = 1 marks N = 2^m");
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentReport run_cancellation(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = Experiment::Cancellation;
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<int> levels = cfg.eps_levels;
  if (levels.empty())
    for (int k = 8; k <= 20; ++k) levels.push_back(k);
  std::sort(levels.begin(), levels.end());
  if (levels.front() < 2) throw InvalidArgument("eps levels must be >= 2 (eps < 1/2)");
  const int M = cfg.M > 0 ? cfg.M : 32;
  const auto f = cfg.make_function();
  auto quad = default_quadrature();
  quad.rule = 15;
  const int k_max = levels.back();

  ExperimentReport r;
  r.config = cfg;
  r.columns = {"series", "index", "x", "k", "abs_ratio", "signed_ratio", "octave_stat", "abs_sin"};
  const auto xs = points_for(cfg, cfg.x_list, M, k_max);
  const int b = f.base();
  std::vector<int> octave_ks;
  if (f.kind() == FunctionKind::WeierstrassCos)
    for (int k = 1; std::pow(double(b), -k) / 2.0 >= std::ldexp(1.0, -k_max); ++k) octave_ks.push_back(k);

  struct PerX {
    std::vector<double> abs_ratio, signed_ratio, octave;
  };
  std::vector<PerX> res(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    double a = 0.0, s = 0.0;
    auto& out = res[i];
    std::size_t next = 0;
    for (int k = 1; k <= k_max; ++k) {
      const double lo = std::ldexp(1.0, -k), hi = std::ldexp(1.0, 1 - k);
      const auto both = oscillation_pair(f, xs[i], lo, hi, quad);
      a += both.abs_value;
      s += both.signed_part.value;
      if (next < levels.size() && levels[next] == k) {
        out.abs_ratio.push_back(a / (k * std::numbers::ln2));
        out.signed_ratio.push_back(std::abs(s) / (k * std::numbers::ln2));
        ++next;
      }
    }
    for (int k : octave_ks) {
      const double w = std::pow(double(b), -k);
      out.octave.push_back(oscillation_integral(f, xs[i], 0.5 * w, 2.0 * w, quad, true).value);
    }
  });

  double min_abs = HUGE_VAL, max_signed_last = 0.0;
  bool abs_dominates = true;
  // Least squares octave_stat = c |sin(b^k x)| - c'.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const double ar = res[i].abs_ratio[l], sr = res[i].signed_ratio[l];
      min_abs = std::min(min_abs, ar);
      abs_dominates = abs_dominates && ar >= sr * (1.0 - 1e-12);
      if (l + 1 == levels.size()) max_signed_last = std::max(max_signed_last, sr);
      r.rows.push_back({"eps", cell(i), cell(xs[i]), cell(levels[l]), cell(ar), cell(sr), cell(kNaN), cell(kNaN)});
    }
    for (std::size_t o = 0; o < octave_ks.size(); ++o) {
      const double phase = std::pow(double(b), octave_ks[o]) * xs[i];
      const double as = std::abs(std::sin(phase));
      const double st = res[i].octave[o];
      sx += as, sy += st, sxx += as * as, sxy += as * st, ++m;
      r.rows.push_back({"octave", cell(i), cell(xs[i]), cell(octave_ks[o]), cell(kNaN), cell(kNaN), cell(st),
                        cell(as)});
    }
  }

  r.constants.push_back({"min_abs_ratio", min_abs, "min over x and eps of abs_theta / ln(1/eps)"});
  r.constants.push_back({"max_signed_ratio_smallest_eps", max_signed_last,
                         "max over x of |theta| / ln(1/eps) at eps = 2^-" + std::to_string(k_max)});
  if (m >= 2) {
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / m;
    r.constants.push_back({"octave_c", slope, "least squares of the octave statistic on |sin(b^k x)|"});
    r.constants.push_back({"octave_c_prime", -icpt, "minus the intercept of the same fit"});
  }

  const bool default_setup = f.kind() == FunctionKind::WeierstrassCos && f.base() == 64 && cfg.alpha == 0.5 &&
                             f.terms() == 4 && levels.front() == 8 && k_max == 20;
  double r0 = cfg.r0;
  std::string r0_method = "configured";
  if (!(r0 > 0.0) && default_setup) {
    r0 = kCancellationPilotR0;
    r0_method = "pilot run, recorded";
  }
  add_check(r, "abs_dominates_signed", abs_dominates, double(abs_dominates), 1.0, "abs_theta >= |theta| everywhere");
  if (r0 > 0.0) {
    r.constants.push_back({"r0", r0, r0_method});
    add_check(r, "abs_ratio_floor", min_abs >= r0, min_abs, r0, "min abs ratio >= r0");
    add_check(r, "signed_ratio_small", max_signed_last <= r0 / 5.0, max_signed_last, r0 / 5.0,
              "max signed ratio at smallest eps <= r0/5");
  } else {
    r.notes.push_back("no r0 for this setup; floor checks skipped");
  }
  if (f.kind() == FunctionKind::Constant) r.notes.push_back("constant function: ratios vanish, checks are vacuous");
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentReport run_identity_sweep(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = Experiment::IdentitySweep;
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const int k_max = cfg.N_list.empty() ? 8 : cfg.N_list.back();
  const auto rhos = or_default(cfg.rho_list, {1.0, 1.42, 2.0});
  const int M = cfg.M > 0 ? cfg.M : 10;
  const int trace_depth = std::min(12, kMaxDenseLevel);
  const auto quad = default_quadrature();

  std::vector<HolderFunction> fns;
  if (cfg.function_name() == "all") {
    const int t = cfg.terms >= 0 ? cfg.terms : 12;
    fns = {HolderFunction::constant(cfg.alpha, 1.0), HolderFunction::linear(cfg.alpha, 1.0),
           HolderFunction::sign_power(cfg.alpha), HolderFunction::lacunary_sine(cfg.alpha, t)};
  } else {
    fns = {cfg.make_function()};
  }
  const auto xs = points_for(cfg, cfg.x_list, M, k_max);

  enum class Task { Translation, Decomposition, Direct, Algebra };
  struct Item {
    Task task;
    std::size_t fn;
    std::size_t x;
    double rho;
    int k;
  };
  std::vector<Item> items;
  for (std::size_t fi = 0; fi < fns.size(); ++fi) {
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      for (double rho : rhos)
        for (int k = 1; k <= k_max; ++k) items.push_back({Task::Translation, fi, xi, rho, k});
      items.push_back({Task::Decomposition, fi, xi, kNaN, k_max});
    }
    for (int k = 1; k <= std::min(4, k_max); ++k) items.push_back({Task::Direct, fi, 0, kNaN, k});
    for (double rho : rhos) items.push_back({Task::Algebra, fi, 0, rho, trace_depth});
  }

  constexpr double kTranslationTol = 1e-8, kDecompositionTol = 1e-6, kDirectTol = 1e-3, kSbpTol = 1e-12, kEnergyTol = 1e-10;
  struct Out {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, double>> residuals;  // check family, normalized residual
    std::string error;
  };
  std::vector<Out> outs(items.size());
  parallel_for(items.size(), [&](std::size_t t) {
    const Item& it = items[t];
    const HolderFunction& f = fns[it.fn];
    const std::string kind = to_string(f.kind());
    auto& out = outs[t];
    const double x = xs[it.x];
    try {
      switch (it.task) {
        case Task::Translation: {
          const auto c = translation_identity_check(f, x, it.rho, it.k, quad);
          const double res = c.residual();
          out.residuals.push_back({"translation", res / kTranslationTol});
          out.rows.push_back({kind, cell(f.alpha()), cell(x), cell(it.rho), cell(it.k), cell(c.lhs), cell(c.rhs),
                              cell(kNaN), cell(res), "translation", res <= kTranslationTol ? "ok" : "fail"});
          break;
        }
        case Task::Decomposition: {
          for (const auto& d : averaged_decompose_levels(f, x, it.k, quad)) {
            out.residuals.push_back({"decomposition", d.residual / kDecompositionTol});
            out.rows.push_back({kind, cell(f.alpha()), cell(x), cell(kNaN), cell(d.n), cell(d.lhs), cell(d.main),
                                cell(d.a_n), cell(d.residual), "decomposition", d.residual <= kDecompositionTol ? "ok" : "fail"});
          }
          break;
        }
        case Task::Direct: {
          // The direct rho integration resolves every oscillation of f; series
          // kinds use a 4-term companion to keep that affordable.
          const HolderFunction g = (f.kind() == FunctionKind::LacunarySine && f.terms() > 4)
                                       ? HolderFunction::lacunary_sine(f.alpha(), 4)
                                       : f;
          const double a = block_integral(g, x, it.k, quad);
          const double d = block_integral_direct(g, x, it.k, quad);
          const double res = std::abs(a - d) / std::max(1.0, std::abs(a));
          out.residuals.push_back({"direct", res / kDirectTol});
          out.rows.push_back({kind, cell(f.alpha()), cell(x), cell(kNaN), cell(it.k), cell(a), cell(d), cell(kNaN),
                              cell(res), "block_direct", res <= kDirectTol ? "ok" : "fail"});
          break;
        }
        case Task::Algebra: {
          auto tr = martingale_from_function(f, it.rho, it.k, 1.0);
          const auto g = transforms(tr, f.alpha());
          const double sbp = summation_by_parts_residual(tr, g);
          const double mart = tr.martingale_residual();
          const double s0 = tr.levels[0][0];
          for (auto& row : tr.levels)
            for (auto& v : row) v -= s0;
          const auto e = energy_check(tr);
          const double scale = std::max(1.0, std::abs(e.lhs));
          const double en = std::abs(e.lhs - e.rhs) / scale;
          out.residuals.push_back({"sbp", sbp / kSbpTol});
          out.residuals.push_back({"martingale", mart / kSbpTol});
          out.residuals.push_back({"energy", en / kEnergyTol});
          out.rows.push_back({kind, cell(f.alpha()), cell(kNaN), cell(it.rho), cell(it.k), cell(kNaN), cell(kNaN),
                              cell(kNaN), cell(sbp), "summation_by_parts", sbp <= kSbpTol ? "ok" : "fail"});
          out.rows.push_back({kind, cell(f.alpha()), cell(kNaN), cell(it.rho), cell(it.k), cell(kNaN), cell(kNaN),
                              cell(kNaN), cell(mart), "martingale", mart <= kSbpTol ? "ok" : "fail"});
          out.rows.push_back({kind, cell(f.alpha()), cell(kNaN), cell(it.rho), cell(it.k), cell(e.lhs), cell(e.rhs),
                              cell(kNaN), cell(en), "energy", en <= kEnergyTol ? "ok" : "fail"});
          break;
        }
      }
    } catch (const std::exception& ex) {
      std::string msg = ex.what();
      std::replace(msg.begin(), msg.end(), ',', ';');
      out.error = kind + " x=" + fmt17(x) + " k=" + std::to_string(it.k) + ": " + msg;
    }
  });

  ExperimentReport r;
  r.config = cfg;
  r.columns = {"kind", "alpha", "x", "rho", "k_or_n", "lhs", "rhs_or_main", "a_n", "residual", "check", "status"};
  std::vector<std::pair<std::string, double>> worst = {
      {"translation", 0.0}, {"decomposition", 0.0}, {"direct", 0.0}, {"sbp", 0.0}, {"martingale", 0.0}, {"energy", 0.0}};
  std::vector<std::string> errors;
  for (const auto& o : outs) {
    for (const auto& row : o.rows) r.rows.push_back(row);
    for (const auto& [name, v] : o.residuals)
      for (auto& w : worst)
        if (w.first == name) w.second = std::max(w.second, v);
    if (!o.error.empty()) errors.push_back(o.error);
  }
  const std::vector<std::pair<std::string, double>> tols = {{"translation", kTranslationTol}, {"decomposition", kDecompositionTol},
                                                            {"direct", kDirectTol}, {"sbp", kSbpTol},
                                                            {"martingale", kSbpTol}, {"energy", kEnergyTol}};
  const std::vector<std::string> desc = {
      "translation average vs 2^k int_0^{2^-k rho} D, relative to 2^k int |D|",
      "|lhs - main/(1+alpha) - a_n|, absolute",
      "B_k reduction vs direct (rho,s) integration, relative to max(1,|B_k|), k <= 4",
      "summation by parts cellwise, absolute",
      "child-average identity of extracted traces",
      "energy identity after subtracting S_0, relative to max(1, lhs)"};
  for (std::size_t i = 0; i < worst.size(); ++i) {
    const double value = worst[i].second * tols[i].second;
    add_check(r, worst[i].first, worst[i].second <= 1.0, value, tols[i].second, desc[i]);
  }
  add_check(r, "no_failures", errors.empty(), double(errors.size()), 0.0, "tuples that threw");
  for (const auto& e : errors) r.notes.push_back("failed tuple: " + e);
  r.notes.push_back("traces for the algebraic checks use depth " + std::to_string(trace_depth) +
                    " and bound C = rho^{-beta}");
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::L2Growth: return run_l2_growth(cfg);
    case Experiment::Tail: return run_tail(cfg);
    case Experiment::ExpMoment: return run_exp_moment(cfg);
    case Experiment::LIL: return run_lil(cfg);
    case Experiment::Cancellation: return run_cancellation(cfg);
    case Experiment::IdentitySweep: return run_identity_sweep(cfg);
  }
  throw InvalidArgument("unknown experiment");
}

}  // namespace osc
