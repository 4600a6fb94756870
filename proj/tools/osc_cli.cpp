// Command-line front end; talks to the library only through the C interface.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "osc/osc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct CliError {
  int code;
  std::string message;
};

void check(osc_status s) {
  if (s == OSC_OK) return;
  const bool usage = s == OSC_INVALID_ARGUMENT || s == OSC_IO_ERROR;
  throw CliError{usage ? kExitUsage : kExitFailed, std::string(osc_status_name(s)) + ": " + osc_last_error()};
}

struct FunctionHandle {
  osc_function* f = nullptr;
  ~FunctionHandle() { osc_function_free(f); }
};

struct Options {
  std::string fn = "lacunary";
  double alpha = 0.5;
  int base = 0;
  std::optional<int> terms;
  double level = 1.0;
  std::string x;
  double eps = 0.0;
  std::string N;
  int j_max = 20;
  std::string out;
};

// Series truncation deep enough for the finest scale 2^{-levels}.
int default_terms(const Options& o, int levels) {
  if (o.terms) return *o.terms;
  if (o.fn == "weierstrass") {
    const int b = o.base > 0 ? o.base : 64;
    return int(std::ceil((levels + 4) / std::log2(double(b))));
  }
  return levels + 4;
}

void make_function(const Options& o, int levels, FunctionHandle& h) {
  check(osc_function_create(o.fn.c_str(), o.alpha, o.base, default_terms(o, levels), o.level, &h.f));
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    const char* b = item.data();
    const char* e = item.data() + item.size();
    while (b < e && *b == ' ') ++b;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) throw CliError{kExitUsage, "not a number: '" + item + "'"};
    out.push_back(v);
  }
  if (out.empty()) throw CliError{kExitUsage, "empty number list"};
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError{kExitUsage, "cannot open '" + path + "' for writing"};
  f << text;
  if (!f) throw CliError{kExitUsage, "failed writing '" + path + "'"};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CliError{kExitUsage, "cannot read config '" + path + "'"};
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_report(const std::string& config, const std::string& out) {
  osc_report* r = nullptr;
  check(osc_experiment_run(config.c_str(), &r));
  std::cout << osc_report_summary(r);
  osc_status ws = OSC_OK;
  if (!out.empty()) ws = osc_report_write(r, out.c_str());
  const int passed = osc_report_passed(r);
  osc_report_free(r);
  check(ws);
  return passed ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillation functional toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(osc_version()));
  Options o;

  auto add_function_flags = [&](CLI::App* c) {
    c->add_option("--fn", o.fn, "lacunary, weierstrass, sign-power, constant, linear")->capture_default_str();
    c->add_option("--alpha", o.alpha, "Holder exponent in (0,1)")->capture_default_str();
    c->add_option("--base", o.base, "series base (default 2 lacunary, 64 weierstrass)");
    c->add_option("--terms", o.terms, "series truncation index");
    c->add_option("--level", o.level, "constant value or slope")->capture_default_str();
  };

  auto* theta_cmd = app.add_subcommand("theta", "theta_eps(f)(x); add --abs for the absolute variant");
  add_function_flags(theta_cmd);
  bool absolute = false;
  theta_cmd->add_option("--x", o.x, "point(s), comma separated")->required();
  theta_cmd->add_option("--eps", o.eps, "lower limit, 0 < eps < 1/2")->required();
  theta_cmd->add_flag("--abs", absolute, "integrate |f(x+h) - f(x-h)|");

  auto* profile_cmd = app.add_subcommand("profile", "theta_{2^-k} and its running max for k = 1..N");
  add_function_flags(profile_cmd);
  profile_cmd->add_option("--x", o.x, "point")->required();
  profile_cmd->add_option("--N", o.N, "deepest level")->required();
  profile_cmd->add_option("--out", o.out, "CSV path (default stdout)");

  auto* coeffs_cmd = app.add_subcommand("coeffs", "lacunary coefficients c_{j,N} as CSV");
  coeffs_cmd->add_option("--alpha", o.alpha, "Holder exponent")->capture_default_str();
  coeffs_cmd->add_option("--N", o.N, "levels, comma separated")->required();
  coeffs_cmd->add_option("--j-max", o.j_max, "largest j")->capture_default_str();
  coeffs_cmd->add_option("--out", o.out, "CSV path (default stdout)");

  // Experiment-style commands share the key=value configuration.
  std::vector<std::pair<std::string, std::string>> kv;
  std::string config_path, experiment_name;
  auto add_kv = [&](CLI::App* c, const std::string& flag, const std::string& key, const std::string& help) {
    c->add_option_function<std::string>(
        flag, [&kv, key](const std::string& v) { kv.emplace_back(key, v); }, help);
  };
  auto add_experiment_flags = [&](CLI::App* c) {
    c->add_option("--config", config_path, "key=value file; flags override it");
    add_kv(c, "--fn", "fn", "function kind (or all for the identity sweep)");
    add_kv(c, "--alpha", "alpha", "Holder exponent");
    add_kv(c, "--base", "base", "series base");
    add_kv(c, "--terms", "terms", "series truncation index");
    add_kv(c, "--level", "level", "constant value or slope");
    add_kv(c, "--x", "x", "explicit sample points, comma separated");
    add_kv(c, "--N", "N", "levels, comma separated ascending");
    add_kv(c, "--M", "M", "sample count");
    add_kv(c, "--seed", "seed", "master seed");
    add_kv(c, "--t-grid", "t-grid", "tail thresholds");
    add_kv(c, "--lambda-grid", "lambda-grid", "exponential-moment lambdas");
    add_kv(c, "--rho", "rho", "grid dilations for the identity sweep");
    add_kv(c, "--eps-levels", "eps-levels", "cancellation levels k, eps = 2^-k");
    add_kv(c, "--source", "source", "synthetic or function traces");
    add_kv(c, "--C", "C", "martingale growth constant");
    add_kv(c, "--r0", "r0", "cancellation floor");
    add_kv(c, "--paths", "paths", "LIL martingale paths");
    add_kv(c, "--out", "out", "CSV path; JSON written beside it");
  };

  auto* identity_cmd = app.add_subcommand("identity", "averaging and martingale identity sweep");
  add_experiment_flags(identity_cmd);
  add_kv(identity_cmd, "--sweep", "sweep", "sweep name (default)");

  auto* exp_cmd = app.add_subcommand("experiment", "run an experiment: l2 tail expmoment lil cancellation identity");
  exp_cmd->add_option("name", experiment_name, "experiment name")->required();
  add_experiment_flags(exp_cmd);
  add_kv(exp_cmd, "--sweep", "sweep", "sweep name (identity only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*theta_cmd) {
      const auto xs = parse_reals(o.x);
      const int levels = o.eps > 0.0 ? std::max(1, int(std::ceil(-std::log2(o.eps)))) : 1;
      FunctionHandle h;
      make_function(o, levels, h);
      for (double x : xs) {
        double v = 0.0;
        check(absolute ? osc_abs_theta(h.f, x, o.eps, &v) : osc_theta(h.f, x, o.eps, &v));
        std::cout << fmt(v) << '\n';
      }
      return kExitOk;
    }
    if (*profile_cmd) {
      const auto xs = parse_reals(o.x);
      const auto Ns = parse_reals(o.N);
      if (xs.size() != 1 || Ns.size() != 1) throw CliError{kExitUsage, "profile takes one --x and one --N"};
      const int N = int(Ns[0]);
      if (N != Ns[0] || N < 1) throw CliError{kExitUsage, "--N must be a positive integer"};
      FunctionHandle h;
      make_function(o, N, h);
      std::vector<double> th(N), star(N);
      check(osc_theta_profile(h.f, xs[0], N, th.data(), star.data()));
      std::string csv = "k,theta,theta_star\n";
      for (int k = 0; k < N; ++k) csv += std::to_string(k + 1) + "," + fmt(th[k]) + "," + fmt(star[k]) + "\n";
      emit(csv, o.out);
      return kExitOk;
    }
    if (*coeffs_cmd) {
      std::vector<int> Ns;
      for (double v : parse_reals(o.N)) {
        if (v != std::floor(v) || v < 1) throw CliError{kExitUsage, "--N values must be positive integers"};
        Ns.push_back(int(v));
      }
      char* csv = nullptr;
      check(osc_coefficient_table_csv(o.alpha, Ns.data(), Ns.size(), o.j_max, &csv));
      std::string text(csv);
      osc_string_free(csv);
      emit(text, o.out);
      return kExitOk;
    }
    std::string config = config_path.empty() ? std::string() : read_file(config_path) + "\n";
    config += "experiment=" + (*identity_cmd ? std::string("identity") : experiment_name) + "\n";
    std::string out;
    for (const auto& [k, v] : kv) {
      config += k + "=" + v + "\n";
      if (k == "out") out = v;
    }
    if (out.empty()) {
      // An out key in the config file also counts.
      std::istringstream in(config);
      std::string line;
      while (std::getline(in, line))
        if (line.rfind("out", 0) == 0) {
          const auto eq = line.find('=');
          if (eq != std::string::npos) {
            out = line.substr(eq + 1);
            out.erase(0, out.find_first_not_of(" \t"));
            out.erase(out.find_last_not_of(" \t\r") + 1);
          }
        }
    }
    return run_report(config, out);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }
}
