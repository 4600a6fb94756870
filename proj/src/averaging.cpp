#include "osc/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "osc/dyadic.hpp"
#include "osc/errors.hpp"
#include "osc/oscillation.hpp"

namespace osc {

namespace {

QuadratureSpec periodic_for(const HolderFunction& f, const QuadratureSpec& quad) {
  QuadratureSpec q = quad;
  if (q.scheme == QuadScheme::PerPeriod && q.period <= 0.0) q.period = f.shortest_period();
  return q;
}

// int_lo^hi (f(x+t) - f(x-t)) dt, optionally of the absolute value.
double symmetric_difference_integral(const HolderFunction& f, double x, double lo, double hi,
                                     const QuadratureSpec& q, bool absolute = false) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> cuts;
  for (double k : f.kinks()) cuts.push_back(std::abs(k - x));
  if (absolute) return integrate([&](double t) { return std::abs(f(x + t) - f(x - t)); }, lo, hi, q, cuts).value;
  return integrate([&](double t) { return f(x + t) - f(x - t); }, lo, hi, q, cuts).value;
}

std::vector<double> gauss_legendre_01(int n, std::vector<double>& w) {
  std::vector<double> z(n);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    z[i] = 0.5 * (t + 1.0);
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return z;
}

void check_level(int k) {
  if (k < 1) throw InvalidArgument("level must be >= 1");
}

}  // namespace

double AveragingDomain::measure() { return std::log(2.0); }

double IdentityCheck::residual() const {
  const double diff = std::abs(lhs - rhs);
  return scale > 0.0 ? diff / scale : diff;
}

double translation_average(const HolderFunction& f, double x, double rho, int k, const QuadratureSpec& quad) {
  check_level(k);
  if (!(rho >= 1.0 && rho <= 2.0)) throw InvalidArgument("rho must lie in [1,2]");
  const QuadratureSpec q = periodic_for(f, quad);
  const double w = std::ldexp(rho, -k);
  // Shifts where x+s lands on a cell boundary m w.
  std::vector<double> cuts{0.0};
  for (double m = std::floor(x / w) + 1.0;; m += 1.0) {
    const double s = m * w - x;
    if (s >= rho) break;
    if (s > 0.0) cuts.push_back(s);
  }
  cuts.push_back(rho);
  const auto kinks = f.kinks();

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double s0 = cuts[i], s1 = cuts[i + 1];
    if (!(s1 > s0)) continue;
    const DyadicCell cell = cell_of(rho, k, x + 0.5 * (s0 + s1));
    const double a = cell.lo(), b = cell.hi();
    std::vector<double> piece_cuts;
    for (double kn : kinks) {
      piece_cuts.push_back(b - kn);
      piece_cuts.push_back(a - kn);
    }
    // Delta f_s(I) = f_s(b) - f_s(a) with f_s(y) = f(y - s).
    total += integrate([&](double s) { return f(b - s) - f(a - s); }, s0, s1, q, piece_cuts).value;
  }
  return total;
}

IdentityCheck translation_identity_check(const HolderFunction& f, double x, double rho, int k,
                                         const QuadratureSpec& quad) {
  IdentityCheck c;
  c.lhs = translation_average(f, x, rho, k, quad);
  const QuadratureSpec q = periodic_for(f, quad);
  const double w = std::ldexp(rho, -k);
  const double scale = std::ldexp(1.0, k);
  c.rhs = scale * symmetric_difference_integral(f, x, 0.0, w, q);
  c.scale = scale * symmetric_difference_integral(f, x, 0.0, w, q, true);
  return c;
}

double block_integral(const HolderFunction& f, double x, int k, const QuadratureSpec& quad) {
  check_level(k);
  const QuadratureSpec q = periodic_for(f, quad);
  const double a = std::ldexp(1.0, -k), b = std::ldexp(1.0, 1 - k);
  const double s = -2.0 - f.alpha();

  // Panels small enough that the running antiderivative F(h) = int_0^h D is
  // refreshed at every panel start.
  std::vector<double> cuts{a};
  for (double kn : f.kinks()) {
    const double t = std::abs(kn - x);
    if (t > a && t < b) cuts.push_back(t);
  }
  if (q.scheme == QuadScheme::PerPeriod && q.period > 0.0)
    for (double m = std::floor(a / q.period) + 1.0; m * q.period < b; m += 1.0) cuts.push_back(m * q.period);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureSpec inner = q;
  inner.scheme = QuadScheme::CompositeAdaptive;
  inner.breakpoints.clear();
  auto D = [&](double t) { return f(x + t) - f(x - t); };

  double F = symmetric_difference_integral(f, x, 0.0, a, q);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const double F_lo = F;
    auto outer = [&](double h) {
      return std::pow(h, s) * (F_lo + integrate(D, lo, h, inner).value);
    };
    total += integrate(outer, lo, hi, inner).value;
    F += integrate(D, lo, hi, inner).value;
  }
  return total;
}

double block_integral_direct(const HolderFunction& f, double x, int k, const QuadratureSpec& quad, int n_rho) {
  check_level(k);
  if (n_rho < 1) throw InvalidArgument("n_rho must be >= 1");
  std::vector<double> w;
  const auto z = gauss_legendre_01(n_rho, w);
  // The rho-integrand oscillates with period 2^k times the period of f.
  int panels = 1;
  const double period = f.shortest_period();
  if (period > 0.0) panels = int(std::ceil(1.0 / std::ldexp(period, k)));
  if (panels > 4096) throw InvalidArgument("direct block integral would need more than 4096 rho panels");
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = 1.0 + double(p) / panels, width = 1.0 / panels;
    for (int i = 0; i < n_rho; ++i) {
      const double rho = lo + width * z[i];
      const double inner = translation_average(f, x, rho, k, quad);
      total += width * w[i] * inner / std::pow(std::ldexp(rho, -k), f.alpha()) / (rho * rho);
    }
  }
  return total;
}

std::vector<DecompositionReport> averaged_decompose_levels(const HolderFunction& f, double x, int n_max,
                                                           const QuadratureSpec& quad) {
  check_level(n_max);
  const QuadratureSpec q = periodic_for(f, quad);
  const double alpha = f.alpha();
  std::vector<DecompositionReport> out;
  double lhs = 0.0, theta_sum = 0.0, outer = 0.0, outer_abs = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double lo = std::ldexp(1.0, -n), hi = std::ldexp(1.0, 1 - n);
    lhs += block_integral(f, x, n, q);
    theta_sum += oscillation_integral(f, x, lo, hi, q).value;
    outer += symmetric_difference_integral(f, x, lo, hi, q);
    outer_abs += symmetric_difference_integral(f, x, lo, hi, q, true);

    DecompositionReport r;
    r.n = n;
    r.lhs = lhs;
    r.main = theta_sum;
    r.outer = outer;
    r.inner = symmetric_difference_integral(f, x, 0.0, lo, q);
    const double growth = std::pow(2.0, n * (1.0 + alpha));
    r.a_n = (-r.outer + (growth - 1.0) * r.inner) / (1.0 + alpha);
    r.residual = std::abs(r.lhs - r.main / (1.0 + alpha) - r.a_n);
    r.bracket = outer_abs + growth * symmetric_difference_integral(f, x, 0.0, lo, q, true);
    out.push_back(r);
  }
  return out;
}

DecompositionReport averaged_decompose(const HolderFunction& f, double x, int n, double alpha,
                                       const QuadratureSpec& quad) {
  if (std::abs(alpha - f.alpha()) > 1e-15) throw InvalidArgument("alpha must match the function's exponent");
  return averaged_decompose_levels(f, x, n, quad).back();
}

ErrorBoundReport error_bound_check(const HolderFunction& f, const std::vector<double>& x_samples, int n_max,
                                   double holder, const QuadratureSpec& quad) {
  ErrorBoundReport rep;
  rep.ratio_by_n.assign(n_max, 0.0);
  for (double x : x_samples) {
    const auto levels = averaged_decompose_levels(f, x, n_max, quad);
    for (const auto& r : levels) {
      const double ratio = holder > 0.0 ? std::abs(r.a_n) / holder : 0.0;
      rep.ratio_by_n[r.n - 1] = std::max(rep.ratio_by_n[r.n - 1], ratio);
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      if (r.bracket > 0.0) rep.fitted_c = std::max(rep.fitted_c, std::abs(r.a_n) / r.bracket);
    }
  }
  return rep;
}

}  // namespace osc
