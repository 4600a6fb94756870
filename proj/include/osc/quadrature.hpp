#pragma once

// Composite adaptive Gauss-Kronrod quadrature. The range is first cut at the
// forced breakpoints and, for the PerPeriod scheme, at every multiple of
// `period`; each panel is then refined by bisection until its error estimate
// falls below its share of the tolerance budget.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "osc/errors.hpp"
#include "osc/format.hpp"

namespace osc {

enum class QuadScheme { CompositeAdaptive, PerPeriod };

struct QuadratureSpec {
  QuadScheme scheme = QuadScheme::CompositeAdaptive;
  double abs_tol = 1e-11;
  // Relative to the panel L1 norm, so oscillatory integrands with heavy
  // cancellation are not asked for more than roundoff allows.
  double rel_tol = 1e-11;
  // Total bisections allowed across all panels.
  std::int64_t max_subdiv = std::int64_t(1) << 24;
  std::vector<double> breakpoints;
  // Panel width for PerPeriod; ignored when <= 0.
  double period = 0.0;
  // Kronrod points per panel: 15, 21 or 31.
  int rule = 21;
  int max_depth = 60;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  std::int64_t evaluations = 0;
  std::int64_t subdivisions = 0;
  bool converged = true;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, QuadResult achieved)
      : Error(ErrorCode::Quadrature, what), achieved_(achieved) {}
  const QuadResult& achieved() const noexcept { return achieved_; }

 private:
  QuadResult achieved_;
};

namespace detail {

struct PanelEstimate {
  double value;
  double error;
  double l1;
};

template <int Points, class F>
PanelEstimate gauss_kronrod_panel(F& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, Points>;
  using G = boost::math::quadrature::gauss<double, (Points - 1) / 2>;
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // Abscissae alternate Gauss/Kronrod-only starting from the centre; the
  // centre node is a Gauss node when the Gauss order is odd.
  constexpr unsigned gauss_order = (Points - 1) / 2;
  double fv[Points];
  fv[0] = f(centre);
  double kron = fv[0] * wk[0];
  double gauss = (gauss_order & 1) ? fv[0] * wg[0] : 0.0;
  double l1 = std::abs(fv[0]) * wk[0];
  const unsigned g_start = (gauss_order & 1) ? 1 : 0;
  for (unsigned i = 1; i < xk.size(); ++i) {
    const double dx = half * xk[i];
    const double fp = f(centre + dx);
    const double fm = f(centre - dx);
    fv[2 * i - 1] = fp;
    fv[2 * i] = fm;
    kron += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if ((i & 1) != g_start) gauss += (fp + fm) * wg[(i + g_start) / 2];
  }
  // QUADPACK-style scaling of the Gauss/Kronrod discrepancy.
  const double mean = 0.5 * kron;
  double asc = std::abs(fv[0] - mean) * wk[0];
  for (unsigned i = 1; i < xk.size(); ++i)
    asc += (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean)) * wk[i];
  double err = std::abs(kron - gauss) * half;
  asc *= half;
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double resabs = l1 * half;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * resabs);
  return {kron * half, err, resabs};
}

template <class F>
PanelEstimate panel(F& f, double a, double b, int rule) {
  switch (rule) {
    case 15: return gauss_kronrod_panel<15>(f, a, b);
    case 31: return gauss_kronrod_panel<31>(f, a, b);
    default: return gauss_kronrod_panel<21>(f, a, b);
  }
}

template <class F>
class AdaptiveDriver {
 public:
  AdaptiveDriver(F& f, const QuadratureSpec& spec, double total_length)
      : f_(f), spec_(spec), length_(total_length) {}

  void integrate_panel(double a, double b) {
    if (!(b > a)) return;
    refine(a, b, panel(f_, a, b, spec_.rule), 0);
  }
  double running_value() const { return result_.value; }
  void count_evaluations(std::int64_t n) { result_.evaluations += n; }

  // Panels stopped by the depth or subdivision cap count as converged when
  // their combined error fits the global tolerance.
  QuadResult result() const {
    QuadResult r = result_;
    r.converged = unresolved_error_ <= std::max(spec_.abs_tol, spec_.rel_tol * r.l1);
    return r;
  }

 private:
  void refine(double a, double b, PanelEstimate est, int depth) {
    result_.evaluations += spec_.rule;
    // Panels already at the roundoff floor cannot improve by bisection.
    constexpr double floor_factor = 50.0 * std::numeric_limits<double>::epsilon() * (1.0 + 1e-9);
    const double local_tol = std::max({spec_.abs_tol * (b - a) / length_, spec_.rel_tol * est.l1,
                                       floor_factor * est.l1});
    const bool ok = est.error <= local_tol;
    const double mid = 0.5 * (a + b);
    const bool can_split = depth < spec_.max_depth && mid > a && mid < b &&
                           result_.subdivisions < spec_.max_subdiv;
    if (ok || !can_split) {
      if (!ok) unresolved_error_ += est.error;
      result_.value += est.value;
      result_.error += est.error;
      result_.l1 += est.l1;
      return;
    }
    ++result_.subdivisions;
    const auto left = panel(f_, a, mid, spec_.rule);
    const auto right = panel(f_, mid, b, spec_.rule);
    refine(a, mid, left, depth + 1);
    refine(mid, b, right, depth + 1);
  }

  F& f_;
  const QuadratureSpec& spec_;
  double length_;
  QuadResult result_;
  double unresolved_error_ = 0.0;
};

}  // namespace detail

// Sorted, deduplicated cut points strictly inside (a, b).
std::vector<double> interior_cuts(double a, double b, std::span<const double> points);

namespace detail {

// Calls panel(lo, hi) for each forced panel of [a, b]: breakpoints first,
// then the period grid for the PerPeriod scheme.
template <class P>
void for_each_base_panel(double a, double b, const QuadratureSpec& spec, std::span<const double> extra_breaks,
                         P&& panel) {
  std::vector<double> pts(spec.breakpoints.begin(), spec.breakpoints.end());
  pts.insert(pts.end(), extra_breaks.begin(), extra_breaks.end());
  std::vector<double> cuts = interior_cuts(a, b, pts);
  cuts.insert(cuts.begin(), a);
  cuts.push_back(b);
  const bool periodic = spec.scheme == QuadScheme::PerPeriod && spec.period > 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (!periodic) {
      panel(lo, hi);
      continue;
    }
    // Panels aligned to multiples of the period.
    double left = lo;
    double m = std::floor(lo / spec.period) + 1.0;
    while (left < hi) {
      double right = std::min(hi, m * spec.period);
      if (right <= left) right = std::min(hi, left + spec.period);
      panel(left, right);
      left = right;
      m += 1.0;
    }
  }
}

}  // namespace detail

// Integrates f over [a, b] (a <= b). `extra_breaks` are merged with
// spec.breakpoints. Does not throw on non-convergence; inspect `converged`.
template <class F>
QuadResult integrate_detailed(F&& f, double a, double b, const QuadratureSpec& spec,
                              std::span<const double> extra_breaks = {}) {
  spec.validate();
  if (!(a <= b)) throw InvalidArgument("integrate: lower limit exceeds upper limit");
  if (a == b) return {};
  detail::AdaptiveDriver<std::remove_reference_t<F>> driver(f, spec, b - a);
  detail::for_each_base_panel(a, b, spec, extra_breaks,
                              [&](double lo, double hi) { driver.integrate_panel(lo, hi); });
  return driver.result();
}

struct SplitQuadResult {
  QuadResult signed_part;
  double abs_value = 0.0;
};

// Integrates f and |f| together. Every forced panel is probed on a uniform
// grid of `probes` steps and cut at the roots of f found between probes of
// opposite sign; on each piece f keeps its sign, so |int f| = int |f| and
// no kink is left for the adaptive rule. A pair of roots between two
// neighbouring probes goes unseen, so the probe step should resolve the
// zero spacing of f.
template <class F>
SplitQuadResult integrate_with_abs(F&& f, double a, double b, const QuadratureSpec& spec,
                                   std::span<const double> extra_breaks = {}, int probes = 6) {
  spec.validate();
  if (!(a <= b)) throw InvalidArgument("integrate: lower limit exceeds upper limit");
  if (probes < 1) throw InvalidArgument("integrate_with_abs needs probes >= 1");
  SplitQuadResult out;
  if (a == b) return out;
  detail::AdaptiveDriver<std::remove_reference_t<F>> driver(f, spec, b - a);
  std::vector<double> pieces;
  std::int64_t extra_evals = 0;
  auto piece = [&](double lo, double hi) {
    const double before = driver.running_value();
    driver.integrate_panel(lo, hi);
    out.abs_value += std::abs(driver.running_value() - before);
  };
  detail::for_each_base_panel(a, b, spec, extra_breaks, [&](double lo, double hi) {
    pieces.assign(1, lo);
    double xp = lo, fp = f(lo);
    for (int i = 1; i <= probes; ++i) {
      const double xi = i == probes ? hi : lo + (hi - lo) * double(i) / probes;
      const double fi = f(xi);
      extra_evals += 1;
      if ((fp < 0.0 && fi > 0.0) || (fp > 0.0 && fi < 0.0)) {
        std::uintmax_t iters = 60;
        const auto bracket = boost::math::tools::toms748_solve(
            f, xp, xi, fp, fi, boost::math::tools::eps_tolerance<double>(45), iters);
        extra_evals += std::int64_t(iters);
        const double root = 0.5 * (bracket.first + bracket.second);
        if (root > pieces.back() && root < hi) pieces.push_back(root);
      } else if (fi == 0.0 && i < probes && xi > pieces.back()) {
        pieces.push_back(xi);
      }
      xp = xi;
      fp = fi;
    }
    extra_evals += 1;
    pieces.push_back(hi);
    for (std::size_t k = 0; k + 1 < pieces.size(); ++k) piece(pieces[k], pieces[k + 1]);
  });
  driver.count_evaluations(extra_evals);
  out.signed_part = driver.result();
  return out;
}

// As integrate_detailed, but throws QuadratureError when the tolerance was not met.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> extra_breaks = {}) {
  QuadResult r = integrate_detailed(std::forward<F>(f), a, b, spec, extra_breaks);
  if (!r.converged)
    throw QuadratureError("quadrature did not converge on [" + fmt17(a) + ", " +
                              fmt17(b) + "], achieved error estimate " +
                              fmt17(r.error),
                          r);
  return r;
}

}  // namespace osc
