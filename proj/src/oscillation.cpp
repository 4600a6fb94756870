#include "osc/oscillation.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "osc/errors.hpp"
#include "osc/format.hpp"

namespace osc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Below this the sine integral uses its power series, above kAsymptoticStart
// the integration-by-parts expansion.
constexpr double kSeriesCut = 0.25;
constexpr double kAsymptoticStart = 16.0;

double frac(double t) { return t - std::floor(t); }

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidArgument("eps must satisfy 0 < eps < 1/2");
}

void dyadic_cuts(double lo, double hi, std::vector<double>& out) {
  for (int k = 0; k < 1100; ++k) {
    const double p = std::ldexp(1.0, -k);
    if (p <= lo) break;
    if (p < hi) out.push_back(p);
  }
}

QuadratureSpec with_period(const QuadratureSpec& quad, double period) {
  QuadratureSpec q = quad;
  if (q.scheme == QuadScheme::PerPeriod && q.period <= 0.0) q.period = period;
  return q;
}

// int_0^u sin(2 pi t) t^{-1-alpha} dt, u <= kSeriesCut.
double sine_head_series(double u, double alpha) {
  if (u <= 0.0) return 0.0;
  const double v = kTwoPi * u;
  double term = v;  // v^{2m+1}/(2m+1)!
  double sum = 0.0;
  for (int m = 0; m < 40; ++m) {
    const double contrib = term / (2 * m + 1 - alpha);
    sum += (m % 2 == 0) ? contrib : -contrib;
    if (std::abs(contrib) < 1e-18 * std::abs(sum)) break;
    term *= v * v / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
  }
  return std::pow(u, -alpha) * sum;
}

// int_a^inf sin(2 pi t) t^{-1-alpha} dt for a >= kAsymptoticStart.
double sine_tail_asymptotic(double a, double alpha) {
  if (std::isinf(a)) return 0.0;
  const double s = 1.0 + alpha;
  const std::complex<double> iw(0.0, kTwoPi);
  std::complex<double> term = 1.0 / (iw * std::pow(a, s));
  std::complex<double> sum = term;
  for (int k = 0; k < 60; ++k) {
    const std::complex<double> next = term * ((s + k) / (iw * a));
    if (std::abs(next) >= std::abs(term)) break;  // asymptotic series turned
    sum += next;
    term = next;
    if (std::abs(term) < 1e-19 * std::abs(sum)) break;
  }
  const double ph = kTwoPi * frac(a);
  const std::complex<double> phase(std::cos(ph), std::sin(ph));
  return (-phase * sum).imag();
}

double sine_middle(double lo, double hi, double alpha, const QuadratureSpec& quad) {
  if (!(hi > lo)) return 0.0;
  QuadratureSpec q = quad;
  q.scheme = QuadScheme::PerPeriod;
  q.period = 0.5;
  q.breakpoints.clear();
  return integrate([alpha](double t) { return std::sin(kTwoPi * frac(t)) * std::pow(t, -1.0 - alpha); },
                   lo, hi, q)
      .value;
}

std::vector<double> legendre_nodes(int n, std::vector<double>& weights) {
  std::vector<double> nodes(n);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = z;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    nodes[i] = z;
    weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return nodes;
}

}  // namespace

QuadratureSpec default_quadrature() {
  QuadratureSpec q;
  q.scheme = QuadScheme::PerPeriod;
  q.abs_tol = 1e-11;
  q.rel_tol = 1e-11;
  q.rule = 21;
  return q;
}

namespace {

std::vector<double> oscillation_cuts(const HolderFunction& f, double x, double lo, double hi) {
  if (!(lo > 0.0 && lo <= hi)) throw InvalidArgument("oscillation integral needs 0 < lo <= hi");
  std::vector<double> cuts;
  dyadic_cuts(lo, hi, cuts);
  for (double k : f.kinks()) cuts.push_back(std::abs(k - x));
  return cuts;
}

}  // namespace

QuadResult oscillation_integral(const HolderFunction& f, double x, double lo, double hi,
                                const QuadratureSpec& quad, bool absolute) {
  if (absolute) {
    const auto pair = oscillation_pair(f, x, lo, hi, quad);
    QuadResult r = pair.signed_part;
    r.value = pair.abs_value;
    return r;
  }
  const auto cuts = oscillation_cuts(f, x, lo, hi);
  const QuadratureSpec q = with_period(quad, f.shortest_period());
  const double s = -1.0 - f.alpha();
  const SymmetricDifference diff(f, x);
  return integrate([&](double h) { return diff(h) * std::pow(h, s); }, lo, hi, q, cuts);
}

SplitQuadResult oscillation_pair(const HolderFunction& f, double x, double lo, double hi,
                                 const QuadratureSpec& quad) {
  const auto cuts = oscillation_cuts(f, x, lo, hi);
  const QuadratureSpec q = with_period(quad, f.shortest_period());
  const double s = -1.0 - f.alpha();
  const SymmetricDifference diff(f, x);
  auto r = integrate_with_abs([&](double h) { return diff(h) * std::pow(h, s); }, lo, hi, q, cuts);
  if (!r.signed_part.converged)
    throw QuadratureError("quadrature did not converge on [" + fmt17(lo) + ", " + fmt17(hi) +
                              "], achieved error estimate " + fmt17(r.signed_part.error),
                          r.signed_part);
  return r;
}

double theta(const HolderFunction& f, double x, double eps, const QuadratureSpec& quad) {
  check_eps(eps);
  return oscillation_integral(f, x, eps, 1.0, quad, false).value;
}

double abs_theta(const HolderFunction& f, double x, double eps, const QuadratureSpec& quad) {
  check_eps(eps);
  return oscillation_integral(f, x, eps, 1.0, quad, true).value;
}

OscillationProfile theta_profile(const HolderFunction& f, double x, int N, const QuadratureSpec& quad,
                                 std::optional<double> holder) {
  if (N < 1) throw InvalidArgument("profile depth N must be >= 1");
  OscillationProfile p;
  p.x = x;
  const auto H = holder ? holder : f.seminorm_hint();
  p.eps_bridge = H ? 2.0 * *H : std::nan("");
  double running = 0.0, star = 0.0;
  for (int k = 1; k <= N; ++k) {
    running += oscillation_integral(f, x, std::ldexp(1.0, -k), std::ldexp(1.0, 1 - k), quad).value;
    star = std::max(star, std::abs(running));
    p.levels.push_back(k);
    p.theta.push_back(running);
    p.theta_star.push_back(star);
  }
  return p;
}

double sine_weight_integral(double lo, double hi, double alpha, const QuadratureSpec& quad) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0,1)");
  if (!(lo >= 0.0 && lo <= hi)) throw InvalidArgument("sine integral needs 0 <= lo <= hi");
  double total = 0.0;
  if (lo < kSeriesCut) total += sine_head_series(std::min(hi, kSeriesCut), alpha) - sine_head_series(lo, alpha);
  total += sine_middle(std::max(lo, kSeriesCut), std::min(hi, kAsymptoticStart), alpha, quad);
  if (hi > kAsymptoticStart)
    total += sine_tail_asymptotic(std::max(lo, kAsymptoticStart), alpha) - sine_tail_asymptotic(hi, alpha);
  return total;
}

double coeff_c(int j, int N, double alpha, const QuadratureSpec& quad) {
  if (j < 0 || N < 1) throw InvalidArgument("coeff_c needs j >= 0 and N >= 1");
  return sine_weight_integral(std::ldexp(1.0, j - N), std::ldexp(1.0, j), alpha, quad);
}

double coeff_b(int j, double alpha, const QuadratureSpec& quad) {
  if (j < 0) throw InvalidArgument("coeff_b needs j >= 0");
  return 2.0 * sine_weight_integral(0.0, std::ldexp(1.0, j), alpha, quad);
}

double limit_A(double alpha) {
  QuadratureSpec q;
  q.abs_tol = 1e-15;
  q.rel_tol = 1e-14;
  return 2.0 * sine_weight_integral(0.0, HUGE_VAL, alpha, q);
}

double limit_A_closed_form(double alpha) {
  return 2.0 * std::pow(kTwoPi, alpha) * std::tgamma(1.0 - alpha) * std::sin(std::numbers::pi * alpha / 2.0) /
         alpha;
}

LacunarySpectrum::LacunarySpectrum(double alpha, int N, int J, const QuadratureSpec& quad)
    : alpha_(alpha), N_(N) {
  if (J < 0) throw InvalidArgument("J must be >= 0");
  coeffs_.reserve(J + 1);
  for (int j = 0; j <= J; ++j) coeffs_.push_back(coeff_c(j, N, alpha, quad));
}

double LacunarySpectrum::theta(double x) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    sum += coeffs_[j] * std::cos(kTwoPi * frac(std::ldexp(x, int(j))));
  return 2.0 * sum;
}

double LacunarySpectrum::l2_norm_squared() const {
  double sum = 0.0;
  for (double c : coeffs_) sum += c * c;
  return 2.0 * sum;
}

double theta_lacunary_spectral(double alpha, double x, int N, int J, const QuadratureSpec& quad) {
  return LacunarySpectrum(alpha, N, J, quad).theta(x);
}

LacunaryDecomposition lacunary_decomposition(double alpha, double x, int N, int J,
                                             const QuadratureSpec& quad) {
  LacunaryDecomposition d;
  d.spectral = theta_lacunary_spectral(alpha, x, N, J, quad);
  for (int j = 0; j <= N; ++j) d.main += coeff_b(j, alpha, quad) * std::cos(kTwoPi * frac(std::ldexp(x, j)));
  d.error = d.spectral - d.main;
  return d;
}

LacunaryConstants lacunary_constants(double alpha, int N, int J, const QuadratureSpec& quad) {
  LacunaryConstants k;
  for (int j = N; j <= J; ++j) {
    const double c = std::abs(coeff_c(j, N, alpha, quad));
    k.c1 = std::max(k.c1, c * std::pow(2.0, (j - N) * (1.0 + alpha)));
    k.tail_sum += c;
    if (j > N) k.e_bound += 2.0 * c;
  }
  for (int j = 0; j <= N; ++j) {
    k.c2 += kTwoPi / (1.0 - alpha) * std::pow(2.0, (j - N) * (1.0 - alpha));
    k.e_bound += 2.0 * std::abs(sine_weight_integral(0.0, std::ldexp(1.0, j - N), alpha, quad));
  }
  return k;
}

std::string coefficient_table_csv(double alpha, std::span<const int> Ns, int j_max, const QuadratureSpec& quad) {
  std::ostringstream out;
  out << "j,N,alpha,c\n";
  for (int N : Ns)
    for (int j = 0; j <= j_max; ++j)
      out << j << ',' << N << ',' << fmt17(alpha) << ',' << fmt17(coeff_c(j, N, alpha, quad)) << '\n';
  return out.str();
}

// ---- higher dimensions ---------------------------------------------------

Field separable_field(const HolderFunction& g, std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw InvalidArgument("axis out of range");
  Field F;
  F.dim = dim;
  F.alpha = g.alpha();
  F.eval = [g, axis](std::span<const double> p) { return g(p[axis]); };
  F.radial_breaks = [g, axis](std::span<const double> x, std::span<const double> xi) {
    std::vector<double> out;
    if (xi[axis] == 0.0) return out;
    for (double k : g.kinks()) out.push_back(std::abs(k - x[axis]) / std::abs(xi[axis]));
    return out;
  };
  F.period_along = [g, axis](std::span<const double> xi) {
    const double p = g.shortest_period();
    return (p > 0.0 && xi[axis] != 0.0) ? p / std::abs(xi[axis]) : 0.0;
  };
  return F;
}

std::vector<Direction> circle_rule(int n) {
  if (n < 2 || n % 2) throw InvalidArgument("circle rule needs an even number of angles");
  std::vector<Direction> out;
  const double w = kTwoPi / n;
  for (int i = 0; i < n / 2; ++i) {
    const double t = (i + 0.5) * w;
    const double c = std::cos(t), s = std::sin(t);
    out.push_back({{c, s}, w});
    out.push_back({{-c, -s}, w});
  }
  return out;
}

std::vector<Direction> half_circle_rule(int n) {
  if (n < 1) throw InvalidArgument("half circle rule needs n >= 1");
  std::vector<Direction> out;
  const double w = std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * w;
    out.push_back({{std::cos(t), std::sin(t)}, 2.0 * w});
  }
  return out;
}

std::vector<Direction> sphere_rule(int n_polar, int n_azimuth, bool hemisphere) {
  if (n_polar < 1 || n_azimuth < 1) throw InvalidArgument("sphere rule sizes must be positive");
  std::vector<double> gw;
  const auto gz = legendre_nodes(n_polar, gw);
  std::vector<Direction> out;
  const double wphi = kTwoPi / n_azimuth;
  for (int i = 0; i < n_polar; ++i) {
    // Map [-1,1] onto (0,1) for the hemisphere.
    const double z = hemisphere ? 0.5 * (gz[i] + 1.0) : gz[i];
    const double wz = hemisphere ? 0.5 * gw[i] * 2.0 : gw[i];
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int k = 0; k < n_azimuth; ++k) {
      const double phi = (k + 0.5) * wphi;
      out.push_back({{r * std::cos(phi), r * std::sin(phi), z}, wz * wphi});
    }
  }
  return out;
}

double theta_directional(const Field& f, std::span<const double> x, std::span<const double> xi, double eps,
                         const QuadratureSpec& quad) {
  check_eps(eps);
  if (x.size() != f.dim || xi.size() != f.dim) throw InvalidArgument("dimension mismatch");
  double norm2 = 0.0;
  for (double v : xi) norm2 += v * v;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw InvalidArgument("direction must be a unit vector");

  std::vector<double> cuts;
  dyadic_cuts(eps, 1.0, cuts);
  if (f.radial_breaks) {
    const auto extra = f.radial_breaks(x, xi);
    cuts.insert(cuts.end(), extra.begin(), extra.end());
  }
  const QuadratureSpec q = with_period(quad, f.period_along ? f.period_along(xi) : 0.0);
  std::vector<double> plus(f.dim), minus(f.dim);
  const double s = -1.0 - f.alpha;
  auto integrand = [&](double rho) {
    for (std::size_t i = 0; i < f.dim; ++i) {
      plus[i] = x[i] + rho * xi[i];
      minus[i] = x[i] - rho * xi[i];
    }
    return (f.eval(plus) - f.eval(minus)) * std::pow(rho, s);
  };
  return integrate(integrand, eps, 1.0, q, cuts).value;
}

double theta_dd(const Field& f, std::span<const double> x, std::span<const Direction> directions, double eps,
                const QuadratureSpec& quad) {
  if (directions.empty()) throw InvalidArgument("empty direction rule");
  double sum = 0.0;
  for (const auto& d : directions) {
    if (!(d.weight > 0.0)) throw InvalidArgument("direction weights must be positive");
    sum += d.weight * theta_directional(f, x, d.xi, eps, quad);
  }
  return sum;
}

}  // namespace osc
