#pragma once

// The oscillation functional
//
//   theta_eps(f)(x) = int_eps^1 (f(x+h) - f(x-h)) h^{-alpha-1} dh,
//
// its dyadic maximal profile, the spectral representation for the lacunary
// sine series, the absolute-value variant and directional versions in R^d.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osc/function.hpp"
#include "osc/quadrature.hpp"

namespace osc {

// PerPeriod scheme, tight tolerances; the oscillation routines fill in the
// period from the function when it is left at zero.
QuadratureSpec default_quadrature();

// int_lo^hi (f(x+h)-f(x-h)) h^{-alpha-1} dh (or |f(x+h)-f(x-h)| when
// `absolute`), with forced cuts at dyadic scales 2^{-k}, at the radii where
// x +- h hits a kink of f, and at the period grid of the top frequency.
QuadResult oscillation_integral(const HolderFunction& f, double x, double lo, double hi,
                                const QuadratureSpec& quad, bool absolute = false);

// Signed and absolute integrals over [lo, hi] in one pass; the range is also
// cut at the sign changes of f(x+h)-f(x-h).
SplitQuadResult oscillation_pair(const HolderFunction& f, double x, double lo, double hi,
                                 const QuadratureSpec& quad);

// Requires 0 < eps < 1/2. Throws QuadratureError on non-convergence.
double theta(const HolderFunction& f, double x, double eps, const QuadratureSpec& quad);
double abs_theta(const HolderFunction& f, double x, double eps, const QuadratureSpec& quad);

struct OscillationProfile {
  double x = 0.0;
  std::vector<int> levels;          // 1..N
  std::vector<double> theta;        // theta_{2^{-k}}(f)(x)
  std::vector<double> theta_star;   // max_{i<=k} |theta_i|
  double eps_bridge = 0.0;          // 2H: slack when moving eps off the dyadic grid
};

// Level k adds only the integral over [2^{-k}, 2^{-k+1}]. `holder` defaults
// to the function's seminorm hint; eps_bridge is NaN when neither is known.
OscillationProfile theta_profile(const HolderFunction& f, double x, int N, const QuadratureSpec& quad,
                                 std::optional<double> holder = std::nullopt);

// ---- lacunary spectral side ---------------------------------------------

// int_lo^hi sin(2 pi t) t^{-1-alpha} dt for 0 <= lo <= hi (hi may be +inf).
// Power series near 0, per-period Gauss-Kronrod in the middle, asymptotic
// integration-by-parts expansion beyond t = 16.
double sine_weight_integral(double lo, double hi, double alpha, const QuadratureSpec& quad);

// c_{j,N} = int_{2^{j-N}}^{2^j} sin(2 pi t) t^{-1-alpha} dt
double coeff_c(int j, int N, double alpha, const QuadratureSpec& quad);
// b_j = 2 int_0^{2^j} sin(2 pi t) t^{-1-alpha} dt
double coeff_b(int j, double alpha, const QuadratureSpec& quad);
// A(alpha) = lim b_j = 2 int_0^inf sin(2 pi t) t^{-1-alpha} dt
double limit_A(double alpha);
// 2 (2 pi)^alpha Gamma(1-alpha) sin(pi alpha / 2) / alpha, an independent cross-check.
double limit_A_closed_form(double alpha);

// Coefficients c_{j,N}, j = 0..J, for one N; evaluates the spectral sum.
class LacunarySpectrum {
 public:
  LacunarySpectrum(double alpha, int N, int J, const QuadratureSpec& quad);

  // 2 sum_j c_{j,N} cos(2 pi 2^j x)
  double theta(double x) const;
  // ||theta||^2 over [0,1] by orthogonality: 2 sum_j c_{j,N}^2
  double l2_norm_squared() const;

  double alpha() const { return alpha_; }
  int N() const { return N_; }
  int J() const { return int(coeffs_.size()) - 1; }
  std::span<const double> coefficients() const { return coeffs_; }

 private:
  double alpha_;
  int N_;
  std::vector<double> coeffs_;
};

double theta_lacunary_spectral(double alpha, double x, int N, int J, const QuadratureSpec& quad);

// Splitting theta_{2^{-N}} = sum_{j<=N} b_j cos(2 pi 2^j x) + E_N(x).
struct LacunaryDecomposition {
  double spectral = 0.0;   // full spectral value
  double main = 0.0;       // sum_{j<=N} b_j cos(2 pi 2^j x)
  double error = 0.0;      // E_N(x)
};
LacunaryDecomposition lacunary_decomposition(double alpha, double x, int N, int J,
                                             const QuadratureSpec& quad);

// Constants of the decomposition for one N:
//   c1 = max_{N<=j<=J} |c_{j,N}| 2^{(j-N)(1+alpha)},
//   c2 = (2 pi/(1-alpha)) sum_{j<=N} 2^{(j-N)(1-alpha)},
//   tail_sum = sum_{N<=j<=J} |c_{j,N}|,
//   e_bound = 2 sum_{j>N} |c_{j,N}| + 2 sum_{j<=N} |int_0^{2^{j-N}} sin(2 pi t) t^{-1-alpha} dt|,
// the last being a rigorous bound on sup_x |E_N(x)| for the truncated series.
struct LacunaryConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double tail_sum = 0.0;
  double e_bound = 0.0;
};
LacunaryConstants lacunary_constants(double alpha, int N, int J, const QuadratureSpec& quad);

// CSV with header j,N,alpha,c for every N in `Ns` and j = 0..j_max.
std::string coefficient_table_csv(double alpha, std::span<const int> Ns, int j_max,
                                  const QuadratureSpec& quad);

// ---- higher dimensions ---------------------------------------------------

struct Field {
  std::size_t dim = 2;
  double alpha = 0.5;
  std::function<double(std::span<const double>)> eval;
  // Radii rho > 0 where x +- rho xi crosses a non-smooth set; optional.
  std::function<std::vector<double>(std::span<const double>, std::span<const double>)> radial_breaks;
  // Oscillation period along xi; optional, 0 means none.
  std::function<double(std::span<const double>)> period_along;
};

// F(x) = g(x[axis]).
Field separable_field(const HolderFunction& g, std::size_t dim, std::size_t axis);

struct Direction {
  std::vector<double> xi;
  double weight = 0.0;
};

// Uniform full-circle rule with n (even) angles in exact antipodal pairs.
std::vector<Direction> circle_rule(int n);
// Upper half circle (xi_2 > 0), n midpoint angles, weights doubled.
std::vector<Direction> half_circle_rule(int n);
// Gauss-Legendre in the polar cosine times uniform azimuth; the hemisphere
// variant keeps xi_3 > 0 and doubles the weights.
std::vector<Direction> sphere_rule(int n_polar, int n_azimuth, bool hemisphere);

// int_eps^1 (F(x + rho xi) - F(x - rho xi)) rho^{-alpha-1} d rho, |xi| = 1.
double theta_directional(const Field& f, std::span<const double> x, std::span<const double> xi,
                         double eps, const QuadratureSpec& quad);
// Weighted sum of directional functionals over a direction rule.
double theta_dd(const Field& f, std::span<const double> x, std::span<const Direction> directions,
                double eps, const QuadratureSpec& quad);

}  // namespace osc
