#include "osc/function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "osc/errors.hpp"
#include "osc/parallel.hpp"

namespace osc {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("alpha must lie strictly inside (0,1), got " + std::to_string(alpha));
}

double frac(double t) { return t - std::floor(t); }

}  // namespace

std::string to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::LacunarySine: return "lacunary";
    case FunctionKind::WeierstrassCos: return "weierstrass";
    case FunctionKind::SignPower: return "sign-power";
    case FunctionKind::Constant: return "constant";
    case FunctionKind::Linear: return "linear";
    case FunctionKind::Sampled: return "sampled";
  }
  return "unknown";
}

FunctionKind kind_from_string(const std::string& name) {
  if (name == "lacunary" || name == "lacunary-sine") return FunctionKind::LacunarySine;
  if (name == "weierstrass" || name == "weierstrass-cos") return FunctionKind::WeierstrassCos;
  if (name == "sign-power" || name == "signpower") return FunctionKind::SignPower;
  if (name == "constant") return FunctionKind::Constant;
  if (name == "linear") return FunctionKind::Linear;
  if (name == "sampled") return FunctionKind::Sampled;
  throw InvalidArgument("unknown function kind '" + name + "'");
}

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo < hi)) throw InvalidArgument("degenerate interval: lo must be < hi");
}

HolderFunction HolderFunction::lacunary_sine(double alpha, int terms) {
  check_alpha(alpha);
  if (terms < 0) throw InvalidArgument("terms must be >= 0");
  HolderFunction f;
  f.kind_ = FunctionKind::LacunarySine;
  f.alpha_ = alpha;
  f.base_ = 2;
  f.terms_ = terms;
  for (int j = 0; j <= terms; ++j) f.amplitudes_.push_back(std::pow(2.0, -j * alpha));
  return f;
}

HolderFunction HolderFunction::weierstrass_cos(double alpha, int base, int terms) {
  check_alpha(alpha);
  if (base < 2) throw InvalidArgument("base must be >= 2");
  if (terms < 0) throw InvalidArgument("terms must be >= 0");
  HolderFunction f;
  f.kind_ = FunctionKind::WeierstrassCos;
  f.alpha_ = alpha;
  f.base_ = base;
  f.terms_ = terms;
  for (int j = 0; j <= terms; ++j) f.amplitudes_.push_back(std::pow(double(base), -j * alpha));
  return f;
}

HolderFunction HolderFunction::sign_power(double alpha) {
  check_alpha(alpha);
  HolderFunction f;
  f.kind_ = FunctionKind::SignPower;
  f.alpha_ = alpha;
  // The exact seminorm is 2^{1-alpha}; 2 also covers off-symmetric pairs.
  f.seminorm_hint_ = 2.0;
  return f;
}

HolderFunction HolderFunction::constant(double alpha, double value) {
  check_alpha(alpha);
  HolderFunction f;
  f.kind_ = FunctionKind::Constant;
  f.alpha_ = alpha;
  f.level_ = value;
  f.seminorm_hint_ = 0.0;
  return f;
}

HolderFunction HolderFunction::linear(double alpha, double slope) {
  check_alpha(alpha);
  HolderFunction f;
  f.kind_ = FunctionKind::Linear;
  f.alpha_ = alpha;
  f.level_ = slope;
  return f;
}

HolderFunction HolderFunction::sampled(double alpha, double x0, double dx, std::vector<double> values) {
  check_alpha(alpha);
  if (!(dx > 0.0)) throw InvalidArgument("sample spacing must be positive");
  if (values.size() < 2) throw InvalidArgument("sampled function needs at least two samples");
  HolderFunction f;
  f.kind_ = FunctionKind::Sampled;
  f.alpha_ = alpha;
  f.x0_ = x0;
  f.dx_ = dx;
  f.samples_ = std::move(values);
  return f;
}

HolderFunction HolderFunction::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InvalidArgument("function descriptor needs a 'kind'");
  const auto kind = kind_from_string(j.at("kind").get<std::string>());
  const double alpha = j.value("alpha", 0.5);
  const int base = j.value("base", kind == FunctionKind::WeierstrassCos ? 64 : 2);
  const int terms = j.value("terms", 30);
  const double level = j.value("level", kind == FunctionKind::Constant ? 0.0 : 1.0);
  HolderFunction f = [&] {
    switch (kind) {
      case FunctionKind::LacunarySine: return lacunary_sine(alpha, terms);
      case FunctionKind::WeierstrassCos: return weierstrass_cos(alpha, base, terms);
      case FunctionKind::SignPower: return sign_power(alpha);
      case FunctionKind::Constant: return constant(alpha, level);
      case FunctionKind::Linear: return linear(alpha, level);
      case FunctionKind::Sampled:
        return sampled(alpha, j.value("x0", 0.0), j.value("dx", 1.0),
                       j.at("samples").get<std::vector<double>>());
    }
    throw InvalidArgument("unhandled kind");
  }();
  const double shift = j.value("shift", 0.0);
  return shift != 0.0 ? f.translated(shift) : f;
}

nlohmann::json HolderFunction::to_json() const {
  nlohmann::json j{{"kind", to_string(kind_)}, {"alpha", alpha_}, {"base", base_},
                   {"terms", terms_}, {"level", level_}};
  if (shift_ != 0.0) j["shift"] = shift_;
  if (kind_ == FunctionKind::Sampled) {
    j["x0"] = x0_;
    j["dx"] = dx_;
    j["samples"] = samples_;
  }
  return j;
}

double HolderFunction::eval(double x) const { return eval_unshifted(x - shift_); }

SymmetricDifference::SymmetricDifference(const HolderFunction& f, double x) : f_(&f), x_(x) {
  const double u = x - f.shift();
  const auto& a = f.amplitudes();
  if (f.kind() == FunctionKind::LacunarySine) {
    for (int j = 0; j <= f.terms(); ++j)
      weights_.push_back(2.0 * a[j] * std::cos(2.0 * std::numbers::pi * frac(std::ldexp(u, j))));
  } else if (f.kind() == FunctionKind::WeierstrassCos) {
    double freq = 1.0;
    for (int j = 0; j <= f.terms(); ++j) {
      weights_.push_back(-2.0 * a[j] * std::sin(freq * u));
      freq *= f.base();
    }
  }
}

double SymmetricDifference::operator()(double h) const {
  switch (f_->kind()) {
    case FunctionKind::LacunarySine: {
      double sum = 0.0;
      for (std::size_t j = 0; j < weights_.size(); ++j)
        sum += weights_[j] * std::sin(2.0 * std::numbers::pi * frac(std::ldexp(h, int(j))));
      return sum;
    }
    case FunctionKind::WeierstrassCos: {
      double sum = 0.0, freq = 1.0;
      for (double w : weights_) {
        sum += w * std::sin(freq * h);
        freq *= f_->base();
      }
      return sum;
    }
    default:
      return (*f_)(x_ + h) - (*f_)(x_ - h);
  }
}

double HolderFunction::eval_unshifted(double x) const {
  switch (kind_) {
    case FunctionKind::LacunarySine: {
      // 2^j x is exact, so the phase reduction loses nothing.
      double sum = 0.0;
      for (int j = 0; j <= terms_; ++j)
        sum += amplitudes_[j] * std::sin(2.0 * std::numbers::pi * frac(std::ldexp(x, j)));
      return sum;
    }
    case FunctionKind::WeierstrassCos: {
      double sum = 0.0;
      double freq = 1.0;
      for (int j = 0; j <= terms_; ++j) {
        sum += amplitudes_[j] * std::cos(freq * x);
        freq *= base_;
      }
      return sum;
    }
    case FunctionKind::SignPower:
      return x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), alpha_), x);
    case FunctionKind::Constant:
      return level_;
    case FunctionKind::Linear:
      return level_ * x;
    case FunctionKind::Sampled: {
      const double u = (x - x0_) / dx_;
      const double last = double(samples_.size() - 1);
      if (!(u >= 0.0 && u <= last))
        throw DomainError("x = " + std::to_string(x + shift_) + " outside the sampled domain");
      const std::size_t i = std::min<std::size_t>(std::size_t(u), samples_.size() - 2);
      const double t = u - double(i);
      return samples_[i] + t * (samples_[i + 1] - samples_[i]);
    }
  }
  return 0.0;
}

HolderFunction HolderFunction::translated(double s) const {
  HolderFunction g = *this;
  g.shift_ = shift_ + s;
  return g;
}

std::vector<double> HolderFunction::kinks() const {
  std::vector<double> out;
  if (kind_ == FunctionKind::SignPower) {
    out.push_back(shift_);
  } else if (kind_ == FunctionKind::Sampled) {
    for (std::size_t i = 0; i < samples_.size(); ++i) out.push_back(x0_ + double(i) * dx_ + shift_);
  }
  return out;
}

double HolderFunction::shortest_period() const {
  if (kind_ == FunctionKind::LacunarySine) return std::ldexp(1.0, -terms_);
  if (kind_ == FunctionKind::WeierstrassCos)
    return 2.0 * std::numbers::pi / std::pow(double(base_), terms_);
  return 0.0;
}

double HolderFunction::truncation_tail() const {
  return is_series() ? series_tail_bound(alpha_, base_, terms_) : 0.0;
}

double HolderFunction::domain_lo() const {
  return kind_ == FunctionKind::Sampled ? x0_ + shift_ : -HUGE_VAL;
}

double HolderFunction::domain_hi() const {
  return kind_ == FunctionKind::Sampled ? x0_ + double(samples_.size() - 1) * dx_ + shift_ : HUGE_VAL;
}

double series_tail_bound(double alpha, int base, int terms) {
  const double q = std::pow(double(base), -alpha);
  return std::pow(double(base), -(terms + 1) * alpha) / (1.0 - q);
}

int truncation_terms(double alpha, int base, double tol) {
  check_alpha(alpha);
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (base < 2) throw InvalidArgument("base must be >= 2");
  for (int j = 0;; ++j) {
    if (2.0 * series_tail_bound(alpha, base, j) <= tol) return j;
    if (j > 100000) throw InvalidArgument("tolerance unreachable");
  }
}

double holder_ratio_max(const HolderFunction& f, const Interval& domain, int n_pairs,
                        double min_gap, std::uint64_t seed) {
  if (n_pairs < 1) throw InvalidArgument("n_pairs must be >= 1");
  if (!(min_gap > 0.0 && min_gap < domain.width()))
    throw InvalidArgument("min_gap must be positive and smaller than the domain width");
  const double alpha = f.alpha();
  double best = 0.0;
  auto probe = [&](double x, double y) {
    const double gap = std::abs(x - y);
    if (!(gap >= min_gap)) return;
    const double r = std::abs(f(x) - f(y)) / std::pow(gap, alpha);
    best = std::max(best, r);
  };

  // Symmetric probes about the midpoint and every interior kink.
  std::vector<double> centres{0.5 * (domain.lo + domain.hi)};
  for (double k : f.kinks())
    if (k > domain.lo && k < domain.hi) centres.push_back(k);
  constexpr int kSymmetricGaps = 48;
  for (double c : centres) {
    const double reach = std::min(c - domain.lo, domain.hi - c);
    if (2.0 * reach <= min_gap) continue;
    const double lg0 = std::log(min_gap), lg1 = std::log(2.0 * reach);
    for (int i = 0; i < kSymmetricGaps; ++i) {
      const double gap = std::exp(lg0 + (lg1 - lg0) * (i + 0.5) / kSymmetricGaps);
      probe(c - 0.5 * gap, c + 0.5 * gap);
    }
  }

  Rng rng(seed);
  const double lg0 = std::log(min_gap), lg1 = std::log(domain.width());
  for (int i = 0; i < n_pairs; ++i) {
    const double gap = std::min(domain.width(), std::exp(lg0 + (lg1 - lg0) * rng.uniform()));
    const double x = domain.lo + (domain.width() - gap) * rng.uniform();
    probe(x, x + gap);
  }
  return best;
}

}  // namespace osc
