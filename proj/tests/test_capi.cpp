#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>

#include "osc/osc.h"

TEST_CASE("version and status names") {
  CHECK(std::string(osc_version()) == "1.0.0");
  CHECK(std::string(osc_status_name(OSC_OK)) == "ok");
  CHECK(std::string(osc_status_name(OSC_QUADRATURE_ERROR)) == "quadrature error");
}

TEST_CASE("function lifecycle") {
  osc_function* f = nullptr;
  REQUIRE(osc_function_create("sign-power", 0.5, 0, 0, 0.0, &f) == OSC_OK);
  double v = 0.0;
  CHECK(osc_function_eval(f, 4.0, &v) == OSC_OK);
  CHECK(v == doctest::Approx(2.0));
  CHECK(osc_theta(f, 0.0, 1.0 / 256, &v) == OSC_OK);
  CHECK(v == doctest::Approx(16 * std::log(2.0)).epsilon(1e-13));
  CHECK(osc_abs_theta(f, 0.0, 1.0 / 256, &v) == OSC_OK);
  CHECK(v == doctest::Approx(16 * std::log(2.0)).epsilon(1e-13));

  osc_function* g = nullptr;
  REQUIRE(osc_function_translate(f, 1.0, &g) == OSC_OK);
  CHECK(osc_function_eval(g, 5.0, &v) == OSC_OK);
  CHECK(v == doctest::Approx(2.0));

  char* json = nullptr;
  REQUIRE(osc_function_to_json(g, &json) == OSC_OK);
  osc_function* h = nullptr;
  CHECK(osc_function_from_json(json, &h) == OSC_OK);
  osc_string_free(json);
  CHECK(osc_function_eval(h, 5.0, &v) == OSC_OK);
  CHECK(v == doctest::Approx(2.0));

  double th[4], star[4];
  CHECK(osc_theta_profile(f, 0.0, 4, th, star) == OSC_OK);
  CHECK(star[3] == doctest::Approx(8 * std::log(2.0)));
  osc_function_free(f);
  osc_function_free(g);
  osc_function_free(h);
  osc_function_free(nullptr);
}

TEST_CASE("errors map to status codes") {
  osc_function* f = nullptr;
  CHECK(osc_function_create("nonsense", 0.5, 0, 0, 0.0, &f) == OSC_INVALID_ARGUMENT);
  CHECK(std::strlen(osc_last_error()) > 0);
  CHECK(osc_function_create("lacunary", 1.5, 0, 4, 0.0, &f) == OSC_INVALID_ARGUMENT);
  CHECK(osc_function_create(nullptr, 0.5, 0, 4, 0.0, &f) == OSC_INVALID_ARGUMENT);
  CHECK(osc_function_from_json("{not json", &f) == OSC_INVALID_ARGUMENT);
  REQUIRE(osc_function_from_json(R"({"kind":"sampled","alpha":0.5,"x0":0,"dx":0.5,"samples":[0,1,0]})", &f) ==
          OSC_OK);
  double v = 0.0;
  CHECK(osc_function_eval(f, 3.0, &v) == OSC_DOMAIN_ERROR);
  osc_function_free(f);
  REQUIRE(osc_function_create("lacunary", 0.5, 0, 8, 0.0, &f) == OSC_OK);
  CHECK(osc_theta(f, 0.3, 0.75, &v) == OSC_INVALID_ARGUMENT);
  CHECK(osc_theta(f, 0.3, 0.1, nullptr) == OSC_INVALID_ARGUMENT);
  osc_function_free(f);
  CHECK(osc_limit_A(2.0, &v) == OSC_INVALID_ARGUMENT);
}

TEST_CASE("numerical entry points") {
  double a = 0.0, b = 0.0;
  CHECK(osc_limit_A(0.5, &a) == OSC_OK);
  CHECK(a > 0.0);
  CHECK(osc_coeff_b(20, 0.5, &b) == OSC_OK);
  CHECK(std::abs(a - b) <= 1e-6);
  int J = 0;
  CHECK(osc_truncation_terms(0.5, 2, 1e-12, &J) == OSC_OK);
  CHECK(J > 0);
  const int Ns[] = {4};
  char* csv = nullptr;
  CHECK(osc_coefficient_table_csv(0.5, Ns, 1, 2, &csv) == OSC_OK);
  CHECK(std::string(csv).rfind("j,N,alpha,c", 0) == 0);
  osc_string_free(csv);

  osc_function* f = nullptr;
  REQUIRE(osc_function_create("lacunary", 0.5, 0, 14, 0.0, &f) == OSC_OK);
  double th = 0.0, sp = 0.0;
  CHECK(osc_theta(f, 0.3, 1.0 / 256, &th) == OSC_OK);
  CHECK(osc_theta_lacunary_spectral(0.5, 0.3, 8, 14, &sp) == OSC_OK);
  CHECK(std::abs(th - sp) <= 1e-6);
  double lhs, rhs, main_term, a_n, res;
  CHECK(osc_translation_identity_check(f, 0.37, 1.42, 5, &lhs, &rhs) == OSC_OK);
  CHECK(std::abs(lhs - rhs) <= 1e-8);
  CHECK(osc_averaged_decompose(f, 0.3, 6, &lhs, &main_term, &a_n, &res) == OSC_OK);
  CHECK(res <= 1e-6);
  CHECK(osc_function_trace_csv(f, 1.0, 3, &csv) == OSC_OK);
  osc_string_free(csv);
  double H = 0.0;
  CHECK(osc_holder_ratio_max(f, 0.0, 1.0, 1000, 1e-9, 1, &H) == OSC_OK);
  CHECK(H > 0.0);
  osc_function_free(f);
  CHECK(osc_random_trace_csv(0.5, 1.0, 4, 7, &csv) == OSC_OK);
  CHECK(std::string(csv).rfind("level,cell_index,value", 0) == 0);
  osc_string_free(csv);
}

TEST_CASE("experiment report") {
  osc_report* r = nullptr;
  REQUIRE(osc_experiment_run("experiment=identity\nfn=constant\nM=2\nrho=1,2\n", &r) == OSC_OK);
  CHECK(osc_report_passed(r) == 1);
  CHECK(std::string(osc_report_csv(r)).rfind("kind,", 0) == 0);
  CHECK(std::string(osc_report_json(r)).find("\"checks\"") != std::string::npos);
  CHECK(std::string(osc_report_summary(r)).find("PASS") != std::string::npos);
  CHECK(osc_report_write(r, "/nonexistent-dir/out.csv") == OSC_IO_ERROR);
  osc_report_free(r);
  CHECK(osc_experiment_run("experiment=l2\nwhat=1\n", &r) == OSC_INVALID_ARGUMENT);
  CHECK(osc_report_passed(nullptr) == 0);
}
