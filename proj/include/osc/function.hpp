#pragma once

// Test functions of the Hölder class: lacunary sine and Weierstrass cosine
// series, the sign-power cusp, affine functions and linearly interpolated
// samples. All values are immutable after construction.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace osc {

enum class FunctionKind { LacunarySine, WeierstrassCos, SignPower, Constant, Linear, Sampled };

std::string to_string(FunctionKind kind);
FunctionKind kind_from_string(const std::string& name);

// Half-open interval [lo, hi).
struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_);
  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x < hi; }
};

class HolderFunction {
 public:
  // f(x) = sum_{j=0..terms} 2^{-j alpha} sin(2 pi 2^j x)
  static HolderFunction lacunary_sine(double alpha, int terms);
  // f(x) = sum_{j=0..terms} base^{-j alpha} cos(base^j x)
  static HolderFunction weierstrass_cos(double alpha, int base, int terms);
  // f(x) = |x|^alpha sign(x)
  static HolderFunction sign_power(double alpha);
  static HolderFunction constant(double alpha, double value);
  static HolderFunction linear(double alpha, double slope);
  // Piecewise linear through (x0 + i dx, values[i]); alpha is declared, not verified.
  static HolderFunction sampled(double alpha, double x0, double dx, std::vector<double> values);

  static HolderFunction from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;

  // g(x) = f(x - s). Shifts compose additively.
  HolderFunction translated(double s) const;

  FunctionKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  int base() const { return base_; }
  int terms() const { return terms_; }
  double level() const { return level_; }
  double shift() const { return shift_; }
  std::optional<double> seminorm_hint() const { return seminorm_hint_; }
  bool is_series() const {
    return kind_ == FunctionKind::LacunarySine || kind_ == FunctionKind::WeierstrassCos;
  }
  // Series amplitudes base^{-j alpha}, j = 0..terms; empty for other kinds.
  const std::vector<double>& amplitudes() const { return amplitudes_; }

  // Points where f fails to be smooth (already shifted).
  std::vector<double> kinks() const;
  // Period of the highest retained frequency; 0 when f has no oscillatory part.
  double shortest_period() const;
  // sum_{j>terms} base^{-j alpha}; 0 for closed-form kinds.
  double truncation_tail() const;
  // Bound on |f_truncated - f_full| anywhere (twice the tail).
  double truncation_slack() const { return 2.0 * truncation_tail(); }

  // Sample domain for the Sampled kind (shifted); the whole line otherwise.
  double domain_lo() const;
  double domain_hi() const;

 private:
  HolderFunction() = default;
  double eval_unshifted(double x) const;

  FunctionKind kind_ = FunctionKind::Constant;
  double alpha_ = 0.5;
  int base_ = 2;
  int terms_ = 0;
  double level_ = 0.0;
  double shift_ = 0.0;
  std::optional<double> seminorm_hint_;
  // Sampled payload
  double x0_ = 0.0;
  double dx_ = 1.0;
  std::vector<double> samples_;
  // Series amplitudes base^{-j alpha}
  std::vector<double> amplitudes_;
};

// h -> f(x+h) - f(x-h) for a fixed centre x. Series kinds use the product
// form sin(u+v) - sin(u-v) = 2 cos u sin v (and its cosine analogue), so
// each evaluation costs one sine per term.
class SymmetricDifference {
 public:
  SymmetricDifference(const HolderFunction& f, double x);
  double operator()(double h) const;

 private:
  const HolderFunction* f_;
  double x_;
  // 2 a_j cos(2 pi 2^j x') for lacunary, -2 a_j sin(b^j x') for Weierstrass.
  std::vector<double> weights_;
};

// Largest |f(x)-f(y)|/|x-y|^alpha over sampled pairs in `domain` with gap at
// least `min_gap`. Random pairs use log-uniform gaps; pairs symmetric about
// each kink and about the domain midpoint are always included. The result is
// a lower bound for the seminorm on the domain.
double holder_ratio_max(const HolderFunction& f, const Interval& domain, int n_pairs,
                        double min_gap = 0x1.0p-40, std::uint64_t seed = 1);

// Smallest J with 2 base^{-(J+1) alpha} / (1 - base^{-alpha}) <= tol.
int truncation_terms(double alpha, int base, double tol);

// Tail bound base^{-(J+1) alpha} / (1 - base^{-alpha}).
double series_tail_bound(double alpha, int base, int terms);

}  // namespace osc
