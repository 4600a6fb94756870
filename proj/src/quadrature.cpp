#include "osc/quadrature.hpp"

namespace osc {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidArgument("quadrature tolerances must be positive");
  if (max_subdiv < 1) throw InvalidArgument("max_subdiv must be >= 1");
  if (rule != 15 && rule != 21 && rule != 31) throw InvalidArgument("rule must be 15, 21 or 31");
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
    throw InvalidArgument("breakpoints must be sorted");
}

std::vector<double> interior_cuts(double a, double b, std::span<const double> points) {
  std::vector<double> out;
  for (double p : points)
    if (p > a && p < b) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace osc
