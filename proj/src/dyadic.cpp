#include "osc/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "osc/errors.hpp"
#include "osc/format.hpp"
#include "osc/parallel.hpp"

namespace osc {

namespace {

void check_rho(double rho) {
  if (!(rho >= 1.0 && rho <= 2.0)) throw InvalidArgument("rho must lie in [1,2]");
}

void check_depth(int N) {
  if (N < 0) throw InvalidArgument("depth N must be >= 0");
  if (N > kMaxDenseLevel)
    throw InvalidArgument("dense traces are limited to N <= " + std::to_string(kMaxDenseLevel));
}

// levels[k][j] for k = 0..N sized 2^k, zero filled.
std::vector<std::vector<double>> empty_levels(int N) {
  std::vector<std::vector<double>> v(N + 1);
  for (int k = 0; k <= N; ++k) v[k].assign(std::size_t(1) << k, 0.0);
  return v;
}

double increment_cap(double beta, double C, int k, double v) {
  const double next = C * std::pow(2.0, (k + 1) * beta);
  return std::max(0.0, std::min(next - std::abs(v), next * (1.0 - std::pow(2.0, -beta))));
}

}  // namespace

double DyadicCell::width() const { return std::ldexp(rho, -k); }
double DyadicCell::lo() const { return double(j) * width(); }
double DyadicCell::hi() const { return double(j + 1) * width(); }

DyadicCell DyadicCell::child_containing(double x) const {
  DyadicCell c{rho, k + 1, 2 * j};
  if (!c.contains(x)) c.j += 1;
  return c;
}

DyadicCell cell_of(double rho, int k, double x) {
  check_rho(rho);
  if (k < 0) throw InvalidArgument("level k must be >= 0");
  DyadicCell c{rho, k, 0};
  const double w = c.width();
  c.j = std::int64_t(std::floor(x / w));
  // Division can round across a boundary; settle it against the products.
  while (x < c.lo()) --c.j;
  while (x >= c.hi()) ++c.j;
  return c;
}

double MartingaleTrace::martingale_residual() const {
  double worst = 0.0;
  for (int k = 0; k < N; ++k)
    for (std::size_t j = 0; j < levels[k].size(); ++j)
      worst = std::max(worst, std::abs(0.5 * (levels[k + 1][2 * j] + levels[k + 1][2 * j + 1]) - levels[k][j]));
  return worst;
}

double MartingaleTrace::growth_excess() const {
  double worst = -HUGE_VAL;
  for (int k = 0; k <= N; ++k) {
    double m = 0.0;
    for (double v : levels[k]) m = std::max(m, std::abs(v));
    worst = std::max(worst, m - bound_C * std::pow(2.0, k * beta));
  }
  return worst;
}

MartingaleTrace martingale_from_function(const HolderFunction& f, double rho, int N,
                                         std::optional<double> holder) {
  check_rho(rho);
  check_depth(N);
  MartingaleTrace tr;
  tr.rho = rho;
  tr.N = N;
  tr.beta = 1.0 - f.alpha();
  tr.gamma_scale = std::pow(rho, tr.beta);
  double H = holder ? *holder
                    : f.seminorm_hint() ? *f.seminorm_hint()
                                        : holder_ratio_max(f, Interval(-1.0, rho + 1.0), 20000);
  tr.bound_C = H * std::pow(rho, -tr.beta);

  // f on the finest grid; coarser cells reuse the same nodes so the
  // martingale property holds by telescoping.
  const std::size_t cells = std::size_t(1) << N;
  const double w = std::ldexp(rho, -N);
  std::vector<double> fv(cells + 1);
  parallel_for(cells + 1, [&](std::size_t i) { fv[i] = f(double(i) * w); });

  tr.levels = empty_levels(N);
  for (int k = 0; k <= N; ++k) {
    const std::size_t stride = std::size_t(1) << (N - k);
    const double width = std::ldexp(rho, -k);
    auto& row = tr.levels[k];
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = (fv[(j + 1) * stride] - fv[j * stride]) / width;
  }
  return tr;
}

GammaTrace transforms(const MartingaleTrace& trace, double alpha) {
  if (std::abs(alpha - (1.0 - trace.beta)) > 1e-12)
    throw InvalidArgument("alpha must equal 1 - beta of the trace");
  const int N = trace.N;
  GammaTrace g;
  g.gamma = empty_levels(N);
  g.gamma_star = empty_levels(N);
  g.t = empty_levels(N);
  g.qv = empty_levels(N);
  for (int n = 1; n <= N; ++n) {
    const double wgt = std::pow(2.0, -n * trace.beta);
    const auto& S = trace.levels[n];
    const auto& Sp = trace.levels[n - 1];
    for (std::size_t j = 0; j < S.size(); ++j) {
      const std::size_t p = j / 2;
      const double inc = S[j] - Sp[p];
      g.gamma[n][j] = g.gamma[n - 1][p] + trace.gamma_scale * wgt * S[j];
      g.gamma_star[n][j] = std::max(g.gamma_star[n - 1][p], std::abs(g.gamma[n][j]));
      g.t[n][j] = g.t[n - 1][p] + inc * wgt;
      g.qv[n][j] = g.qv[n - 1][p] + inc * inc;
    }
  }
  return g;
}

double summation_by_parts_residual(const MartingaleTrace& trace, const GammaTrace& g) {
  const double q = std::pow(2.0, -trace.beta);
  const double s0 = trace.levels[0][0];
  double worst = 0.0;
  for (int n = 1; n <= trace.N; ++n) {
    const double wgt = std::pow(2.0, -n * trace.beta);
    for (std::size_t j = 0; j < trace.levels[n].size(); ++j) {
      const double rhs =
          (1.0 - q) * g.gamma[n - 1][j / 2] / trace.gamma_scale + wgt * trace.levels[n][j] - q * s0;
      worst = std::max(worst, std::abs(g.t[n][j] - rhs));
    }
  }
  return worst;
}

EnergyCheck energy_check(const MartingaleTrace& trace) {
  for (double v : trace.levels[0])
    if (v != 0.0) throw InvalidArgument("energy identity requires S_0 = 0; subtract S_0 first");
  const int N = trace.N;
  const double w = std::ldexp(trace.rho, -N);
  std::vector<double> qv(std::size_t(1) << N, 0.0);
  for (int k = 1; k <= N; ++k) {
    const std::size_t stride = std::size_t(1) << (N - k);
    for (std::size_t i = 0; i < qv.size(); ++i) {
      const double inc = trace.levels[k][i / stride] - trace.levels[k - 1][i / (2 * stride)];
      qv[i] += inc * inc;
    }
  }
  EnergyCheck e;
  for (std::size_t i = 0; i < qv.size(); ++i) {
    const double s = trace.levels[N][i];
    e.lhs += s * s * w;
    e.rhs += qv[i] * w;
  }
  return e;
}

MartingaleTrace sample_random_martingale(double beta, double C, int N, std::uint64_t seed) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in (0,1)");
  if (!(C > 0.0)) throw InvalidArgument("C must be positive");
  check_depth(N);
  MartingaleTrace tr;
  tr.rho = 1.0;
  tr.N = N;
  tr.beta = beta;
  tr.bound_C = C;
  tr.gamma_scale = 1.0;
  tr.levels = empty_levels(N);
  Rng rng(seed);
  for (int k = 0; k < N; ++k) {
    const auto& row = tr.levels[k];
    auto& next = tr.levels[k + 1];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double v = row[j];
      double d = rng.uniform() * increment_cap(beta, C, k, v);
      if (rng.coin()) d = -d;
      next[2 * j] = v + d;
      next[2 * j + 1] = v - d;
    }
  }
  return tr;
}

std::vector<double> sample_martingale_path(double beta, double C, int N, std::uint64_t seed) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in (0,1)");
  if (!(C > 0.0)) throw InvalidArgument("C must be positive");
  if (N < 0) throw InvalidArgument("N must be >= 0");
  std::vector<double> s(N + 1, 0.0);
  Rng rng(seed);
  for (int k = 0; k < N; ++k) {
    double d = rng.uniform() * increment_cap(beta, C, k, s[k]);
    if (rng.coin()) d = -d;
    // The point falls in either child with probability 1/2.
    s[k + 1] = rng.coin() ? s[k] + d : s[k] - d;
  }
  return s;
}

MartingaleTrace extremal_martingale(double beta, double C, int N) {
  check_depth(N);
  MartingaleTrace tr;
  tr.rho = 1.0;
  tr.N = N;
  tr.beta = beta;
  tr.bound_C = C;
  tr.levels = empty_levels(N);
  for (int k = 1; k <= N; ++k) {
    auto& row = tr.levels[k];
    const auto& up = tr.levels[k - 1];
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = up[j / 2];
    row[0] = C * std::pow(2.0, k * beta);
    row[1] = 2.0 * up[0] - row[0];
  }
  return tr;
}

std::string trace_csv(const MartingaleTrace& trace) {
  std::ostringstream out;
  out << "level,cell_index,value\n";
  for (int k = 0; k <= trace.N; ++k)
    for (std::size_t j = 0; j < trace.levels[k].size(); ++j)
      out << k << ',' << j << ',' << fmt17(trace.levels[k][j]) << '\n';
  return out.str();
}

}  // namespace osc
