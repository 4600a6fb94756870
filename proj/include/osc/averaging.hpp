#pragma once

// Averaging of dyadic quantities over translations s and dilations rho of the
// grid, checked against the continuous oscillation functional.

#include <vector>

#include "osc/function.hpp"
#include "osc/quadrature.hpp"

namespace osc {

// A = {(rho, s): 1 <= rho <= 2, 0 <= s <= rho} with d mu = ds d rho / rho^2.
struct AveragingDomain {
  static constexpr double rho_lo = 1.0;
  static constexpr double rho_hi = 2.0;
  // mu(A) = ln 2
  static double measure();
};

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  // Natural magnitude of both sides, used to make the residual relative.
  double scale = 0.0;
  double residual() const;
};

// lhs = int_0^rho Delta f_s(I_k(x+s)) ds, integrated piece by piece between the
// shifts where x+s crosses a cell boundary; rhs = 2^k int_0^{2^{-k} rho} (f(x+t)-f(x-t)) dt.
IdentityCheck translation_identity_check(const HolderFunction& f, double x, double rho, int k,
                                         const QuadratureSpec& quad);

// Only the left side of the translation identity.
double translation_average(const HolderFunction& f, double x, double rho, int k, const QuadratureSpec& quad);

struct DecompositionReport {
  int n = 0;
  double lhs = 0.0;       // int_1^2 int_0^rho Gamma_n(f_s)(x+s) ds d rho/rho^2
  double main = 0.0;      // theta_{2^{-n}}(f)(x)
  double a_n = 0.0;       // error term
  double residual = 0.0;  // |lhs - main/(1+alpha) - a_n|
  // Ingredients of a_n.
  double inner = 0.0;     // int_0^{2^{-n}} (f(x+t)-f(x-t)) dt
  double outer = 0.0;     // int_{2^{-n}}^1 (f(x+t)-f(x-t)) dt
  // c(alpha) bracket: int_{2^{-n}}^1 |D| + 2^{n(1+alpha)} int_0^{2^{-n}} |D|
  double bracket = 0.0;
};

// B_k = int_{2^{-k}}^{2^{-k+1}} h^{-2-alpha} int_0^h (f(x+t)-f(x-t)) dt dh.
double block_integral(const HolderFunction& f, double x, int k, const QuadratureSpec& quad);

// B_k straight from its definition as a (rho, s) double integral, Gauss-Legendre
// in rho over n_rho nodes per panel, panels matched to the period of f; low
// accuracy, used as an independent check.
double block_integral_direct(const HolderFunction& f, double x, int k, const QuadratureSpec& quad,
                             int n_rho = 12);

// Requires alpha == f.alpha().
DecompositionReport averaged_decompose(const HolderFunction& f, double x, int n, double alpha,
                                       const QuadratureSpec& quad);
// Reports for n = 1..n_max sharing the B_k and theta pieces.
std::vector<DecompositionReport> averaged_decompose_levels(const HolderFunction& f, double x, int n_max,
                                                           const QuadratureSpec& quad);

struct ErrorBoundReport {
  double max_ratio = 0.0;          // max |A_n|/H
  double fitted_c = 0.0;           // max |A_n| / bracket
  std::vector<double> ratio_by_n;  // max over x of |A_n|/H, n = 1..n_max
};

ErrorBoundReport error_bound_check(const HolderFunction& f, const std::vector<double>& x_samples, int n_max,
                                   double holder, const QuadratureSpec& quad);

}  // namespace osc
