#pragma once

// Dyadic grids D(rho) on [0, rho), dyadic martingales stored level by level,
// and the Gamma / T transforms with their quadratic variation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osc/function.hpp"

namespace osc {

// Dense traces are capped at this depth (2^N cells on the finest level).
inline constexpr int kMaxDenseLevel = 26;

// [j 2^{-k} rho, (j+1) 2^{-k} rho)
struct DyadicCell {
  double rho = 1.0;
  int k = 0;
  std::int64_t j = 0;

  double width() const;
  double lo() const;
  double hi() const;
  bool contains(double x) const { return x >= lo() && x < hi(); }
  // Child at level k+1 containing x; x must lie in this cell.
  DyadicCell child_containing(double x) const;
};

// Unique level-k cell containing x; boundary points go to the right cell.
DyadicCell cell_of(double rho, int k, double x);

struct MartingaleTrace {
  double rho = 1.0;
  int N = 0;
  // levels[k][j] = value of S_k on cell j of [0, rho), k = 0..N
  std::vector<std::vector<double>> levels;
  double beta = 0.5;
  double bound_C = 1.0;
  // Weight in Gamma_n = scale * sum_k 2^{-k beta} S_k: rho^beta for traces
  // extracted from a function, 1 for abstract martingales.
  double gamma_scale = 1.0;

  // max over k<N, j of |(S_{k+1}[2j] + S_{k+1}[2j+1])/2 - S_k[j]|
  double martingale_residual() const;
  // max over k of (max_j |S_k[j]|) - bound_C 2^{k beta}; <= 0 when the growth bound holds.
  double growth_excess() const;
};

// S_k(x) = Delta f(I_k(x)) / (2^{-k} rho). `holder` feeds bound_C = H rho^{-beta};
// when absent the function's seminorm hint is used, else it is estimated.
MartingaleTrace martingale_from_function(const HolderFunction& f, double rho, int N,
                                         std::optional<double> holder = std::nullopt);

struct GammaTrace {
  // All arrays indexed [n][cell at level n], n = 0..N.
  std::vector<std::vector<double>> gamma;
  std::vector<std::vector<double>> gamma_star;
  std::vector<std::vector<double>> t;
  std::vector<std::vector<double>> qv;
};

// Requires alpha = 1 - beta.
GammaTrace transforms(const MartingaleTrace& trace, double alpha);

// Cellwise max of |T_n - ((1-2^{-beta}) Gamma_{n-1}/scale + 2^{-n beta} S_n - 2^{-beta} S_0)|.
// The S_0 term vanishes for the S_0 = 0 martingales of the dyadic model.
double summation_by_parts_residual(const MartingaleTrace& trace, const GammaTrace& g);

struct EnergyCheck {
  double lhs = 0.0;  // int_0^rho S_N^2
  double rhs = 0.0;  // int_0^rho <S>^2_N
};
// Requires S_0 = 0.
EnergyCheck energy_check(const MartingaleTrace& trace);

// S_0 = 0; each cell value v at level k splits into v + sigma d and v - sigma d,
// sigma a Rademacher sign and d uniform on
// [0, min(C 2^{(k+1)beta} - |v|, C 2^{(k+1)beta} (1 - 2^{-beta}))].
MartingaleTrace sample_random_martingale(double beta, double C, int N, std::uint64_t seed);

// The same increment law followed along a single uniformly chosen branch.
// Returns S_0..S_N for one point; used beyond the dense cap.
std::vector<double> sample_martingale_path(double beta, double C, int N, std::uint64_t seed);

// Extremal trace S_k = C 2^{k beta} on the leftmost branch (S_0 = 0), with the
// sibling values forced by the martingale property.
MartingaleTrace extremal_martingale(double beta, double C, int N);

// Rows level,cell_index,value.
std::string trace_csv(const MartingaleTrace& trace);

}  // namespace osc
