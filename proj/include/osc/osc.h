/* C interface to the oscillation toolkit.
 *
 * Every call returns an osc_status; on failure osc_last_error() describes the
 * problem for the calling thread. Strings returned through char** are owned
 * by the caller and released with osc_string_free; strings returned directly
 * by a report accessor live as long as the report. */
#ifndef OSC_OSC_H
#define OSC_OSC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(OSC_BUILDING_LIBRARY)
#define OSC_API __declspec(dllexport)
#else
#define OSC_API __declspec(dllimport)
#endif
#else
#define OSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum osc_status {
  OSC_OK = 0,
  OSC_INVALID_ARGUMENT = 1,
  OSC_DOMAIN_ERROR = 2,
  OSC_QUADRATURE_ERROR = 3,
  OSC_IO_ERROR = 4,
  OSC_INTERNAL_ERROR = 5
} osc_status;

typedef struct osc_function osc_function;
typedef struct osc_report osc_report;

OSC_API const char* osc_version(void);
OSC_API const char* osc_last_error(void);
OSC_API const char* osc_status_name(osc_status status);
OSC_API void osc_string_free(char* s);

/* kind: lacunary, weierstrass, sign-power, constant, linear.
 * base <= 0 picks 2 (lacunary) or 64 (weierstrass); level is the constant
 * value or the slope. */
OSC_API osc_status osc_function_create(const char* kind, double alpha, int base, int terms, double level,
                                       osc_function** out);
/* Descriptor {kind, alpha, base, terms, level[, shift, x0, dx, samples]}. */
OSC_API osc_status osc_function_from_json(const char* json, osc_function** out);
OSC_API osc_status osc_function_to_json(const osc_function* f, char** out);
OSC_API void osc_function_free(osc_function* f);
OSC_API osc_status osc_function_eval(const osc_function* f, double x, double* out);
/* g(x) = f(x - s) */
OSC_API osc_status osc_function_translate(const osc_function* f, double s, osc_function** out);
OSC_API osc_status osc_holder_ratio_max(const osc_function* f, double lo, double hi, int n_pairs, double min_gap,
                                        uint64_t seed, double* out);
OSC_API osc_status osc_truncation_terms(double alpha, int base, double tol, int* out);

/* Oscillation functional with the default quadrature policy. */
OSC_API osc_status osc_theta(const osc_function* f, double x, double eps, double* out);
OSC_API osc_status osc_abs_theta(const osc_function* f, double x, double eps, double* out);
/* theta_out and theta_star_out receive N values each (levels 1..N). */
OSC_API osc_status osc_theta_profile(const osc_function* f, double x, int N, double* theta_out,
                                     double* theta_star_out);

OSC_API osc_status osc_coeff_c(int j, int N, double alpha, double* out);
OSC_API osc_status osc_coeff_b(int j, double alpha, double* out);
OSC_API osc_status osc_limit_A(double alpha, double* out);
OSC_API osc_status osc_theta_lacunary_spectral(double alpha, double x, int N, int J, double* out);
/* CSV j,N,alpha,c for every N in Ns and j = 0..j_max. */
OSC_API osc_status osc_coefficient_table_csv(double alpha, const int* Ns, size_t count, int j_max, char** out);

OSC_API osc_status osc_translation_identity_check(const osc_function* f, double x, double rho, int k,
                                                  double* lhs, double* rhs);
OSC_API osc_status osc_averaged_decompose(const osc_function* f, double x, int n, double* lhs, double* main_term,
                                          double* a_n, double* residual);

/* Trace CSV level,cell_index,value. */
OSC_API osc_status osc_function_trace_csv(const osc_function* f, double rho, int N, char** out);
OSC_API osc_status osc_random_trace_csv(double beta, double C, int N, uint64_t seed, char** out);

/* config: flat key=value lines, the same keys as the CLI flags. */
OSC_API osc_status osc_experiment_run(const char* config, osc_report** out);
OSC_API int osc_report_passed(const osc_report* r);
OSC_API const char* osc_report_summary(const osc_report* r);
OSC_API const char* osc_report_csv(const osc_report* r);
OSC_API const char* osc_report_json(const osc_report* r);
/* CSV at path, JSON beside it with the extension replaced by .json. */
OSC_API osc_status osc_report_write(const osc_report* r, const char* path);
OSC_API void osc_report_free(osc_report* r);

#ifdef __cplusplus
}
#endif

#endif
