#include "osc/osc.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "osc/averaging.hpp"
#include "osc/dyadic.hpp"
#include "osc/errors.hpp"
#include "osc/function.hpp"
#include "osc/harness.hpp"
#include "osc/oscillation.hpp"

struct osc_function {
  osc::HolderFunction f;
};

struct osc_report {
  osc::ExperimentReport report;
  std::string summary, csv, json;
};

namespace {

thread_local std::string g_last_error;

osc_status status_of(osc::ErrorCode code) {
  switch (code) {
    case osc::ErrorCode::InvalidArgument: return OSC_INVALID_ARGUMENT;
    case osc::ErrorCode::Domain: return OSC_DOMAIN_ERROR;
    case osc::ErrorCode::Quadrature: return OSC_QUADRATURE_ERROR;
    case osc::ErrorCode::Io: return OSC_IO_ERROR;
    case osc::ErrorCode::Internal: return OSC_INTERNAL_ERROR;
  }
  return OSC_INTERNAL_ERROR;
}

template <class Body>
osc_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return OSC_OK;
  } catch (const osc::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return OSC_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OSC_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OSC_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return OSC_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw osc::InvalidArgument(std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* osc_version(void) { return osc::kVersion; }
const char* osc_last_error(void) { return g_last_error.c_str(); }

const char* osc_status_name(osc_status status) {
  switch (status) {
    case OSC_OK: return "ok";
    case OSC_INVALID_ARGUMENT: return "invalid argument";
    case OSC_DOMAIN_ERROR: return "domain error";
    case OSC_QUADRATURE_ERROR: return "quadrature error";
    case OSC_IO_ERROR: return "i/o error";
    case OSC_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

void osc_string_free(char* s) { std::free(s); }

osc_status osc_function_create(const char* kind, double alpha, int base, int terms, double level,
                               osc_function** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    const auto k = osc::kind_from_string(kind);
    using osc::FunctionKind;
    using osc::HolderFunction;
    switch (k) {
      case FunctionKind::LacunarySine: *out = new osc_function{HolderFunction::lacunary_sine(alpha, terms)}; break;
      case FunctionKind::WeierstrassCos:
        *out = new osc_function{HolderFunction::weierstrass_cos(alpha, base > 0 ? base : 64, terms)};
        break;
      case FunctionKind::SignPower: *out = new osc_function{HolderFunction::sign_power(alpha)}; break;
      case FunctionKind::Constant: *out = new osc_function{HolderFunction::constant(alpha, level)}; break;
      case FunctionKind::Linear: *out = new osc_function{HolderFunction::linear(alpha, level)}; break;
      case FunctionKind::Sampled: throw osc::InvalidArgument("sampled functions are created from JSON");
    }
  });
}

osc_status osc_function_from_json(const char* json, osc_function** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new osc_function{osc::HolderFunction::from_json(nlohmann::json::parse(json))};
  });
}

osc_status osc_function_to_json(const osc_function* f, char** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = dup_string(f->f.to_json().dump());
  });
}

void osc_function_free(osc_function* f) { delete f; }

osc_status osc_function_eval(const osc_function* f, double x, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = f->f(x);
  });
}

osc_status osc_function_translate(const osc_function* f, double s, osc_function** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = new osc_function{f->f.translated(s)};
  });
}

osc_status osc_holder_ratio_max(const osc_function* f, double lo, double hi, int n_pairs, double min_gap,
                                uint64_t seed, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = osc::holder_ratio_max(f->f, osc::Interval(lo, hi), n_pairs, min_gap, seed);
  });
}

osc_status osc_truncation_terms(double alpha, int base, double tol, int* out) {
  return guarded([&] {
    need(out, "out");
    *out = osc::truncation_terms(alpha, base, tol);
  });
}

osc_status osc_theta(const osc_function* f, double x, double eps, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = osc::theta(f->f, x, eps, osc::default_quadrature());
  });
}

osc_status osc_abs_theta(const osc_function* f, double x, double eps, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = osc::abs_theta(f->f, x, eps, osc::default_quadrature());
  });
}

osc_status osc_theta_profile(const osc_function* f, double x, int N, double* theta_out, double* theta_star_out) {
  return guarded([&] {
    need(f, "function");
    need(theta_out, "theta_out");
    need(theta_star_out, "theta_star_out");
    const auto p = osc::theta_profile(f->f, x, N, osc::default_quadrature());
    for (int k = 0; k < N; ++k) {
      theta_out[k] = p.theta[k];
      theta_star_out[k] = p.theta_star[k];
    }
  });
}

osc_status osc_coeff_c(int j, int N, double alpha, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = osc::coeff_c(j, N, alpha, osc::default_quadrature());
  });
}

osc_status osc_coeff_b(int j, double alpha, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = osc::coeff_b(j, alpha, osc::default_quadrature());
  });
}

osc_status osc_limit_A(double alpha, double* out) {
  return guarded([&] {
    need(out, "out");
    if (!(alpha > 0.0 && alpha < 1.0)) throw osc::InvalidArgument("alpha must lie in (0,1)");
    *out = osc::limit_A(alpha);
  });
}

osc_status osc_theta_lacunary_spectral(double alpha, double x, int N, int J, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = osc::theta_lacunary_spectral(alpha, x, N, J, osc::default_quadrature());
  });
}

osc_status osc_coefficient_table_csv(double alpha, const int* Ns, size_t count, int j_max, char** out) {
  return guarded([&] {
    need(Ns, "Ns");
    need(out, "out");
    *out = dup_string(osc::coefficient_table_csv(alpha, std::span<const int>(Ns, count), j_max,
                                                 osc::default_quadrature()));
  });
}

osc_status osc_translation_identity_check(const osc_function* f, double x, double rho, int k, double* lhs,
                                          double* rhs) {
  return guarded([&] {
    need(f, "function");
    need(lhs, "lhs");
    need(rhs, "rhs");
    const auto c = osc::translation_identity_check(f->f, x, rho, k, osc::default_quadrature());
    *lhs = c.lhs;
    *rhs = c.rhs;
  });
}

osc_status osc_averaged_decompose(const osc_function* f, double x, int n, double* lhs, double* main_term,
                                  double* a_n, double* residual) {
  return guarded([&] {
    need(f, "function");
    const auto d = osc::averaged_decompose(f->f, x, n, f->f.alpha(), osc::default_quadrature());
    if (lhs) *lhs = d.lhs;
    if (main_term) *main_term = d.main;
    if (a_n) *a_n = d.a_n;
    if (residual) *residual = d.residual;
  });
}

osc_status osc_function_trace_csv(const osc_function* f, double rho, int N, char** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = dup_string(osc::trace_csv(osc::martingale_from_function(f->f, rho, N)));
  });
}

osc_status osc_random_trace_csv(double beta, double C, int N, uint64_t seed, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup_string(osc::trace_csv(osc::sample_random_martingale(beta, C, N, seed)));
  });
}

osc_status osc_experiment_run(const char* config, osc_report** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    auto r = std::make_unique<osc_report>();
    r->report = osc::run_experiment(osc::ExperimentConfig::parse(config));
    r->summary = r->report.summary();
    r->csv = r->report.to_csv();
    r->json = r->report.to_json().dump(2);
    *out = r.release();
  });
}

int osc_report_passed(const osc_report* r) { return r && r->report.passed() ? 1 : 0; }
const char* osc_report_summary(const osc_report* r) { return r ? r->summary.c_str() : ""; }
const char* osc_report_csv(const osc_report* r) { return r ? r->csv.c_str() : ""; }
const char* osc_report_json(const osc_report* r) { return r ? r->json.c_str() : ""; }

osc_status osc_report_write(const osc_report* r, const char* path) {
  return guarded([&] {
    need(r, "report");
    need(path, "path");
    r->report.write(path);
  });
}

void osc_report_free(osc_report* r) { delete r; }

}  // extern "C"
