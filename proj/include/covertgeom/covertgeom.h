/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef COVERTGEOM_H
#define COVERTGEOM_H

#include <stddef.h>
#include <stdint.h>

#if defined(CG_BUILDING_LIBRARY)
#define CG_API __attribute__((visibility("default")))
#else
#define CG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cg_status {
  CG_OK = 0,
  CG_ERR_INTERNAL = 1,
  CG_ERR_INVALID = 2,     /* bad argument or config field */
  CG_ERR_NUMERICAL = 3,
  CG_ERR_UNSUPPORTED = 4  /* valid input outside a formula's regime */
} cg_status;

/* Message and field name of the last failure on this thread. Empty when the
 * last call succeeded. Owned by the library. */
CG_API const char* cg_last_error(void);
CG_API const char* cg_last_error_field(void);

CG_API const char* cg_version(void);

/* 0 restores the default (COVERTGEOM_THREADS, then hardware). */
CG_API void cg_set_threads(int threads);

/* Strings returned through char** out-params are released here. */
CG_API void cg_string_free(char* s);

typedef struct cg_system_params {
  long long n;
  double m;
  double gamma;
  double p_f;
  double sigma_w0_sq;
  double sigma_b0_sq;
  double epsilon;
  double zeta;
} cg_system_params;

CG_API void cg_system_params_default(cg_system_params* out);

typedef struct cg_error_pair {
  double p_fa;
  double p_md;
  double p_e;
} cg_error_pair;

CG_API cg_status cg_reg_gamma_upper(double shape, double x, double* out);
CG_API cg_status cg_kl_gaussian_scalar(long long n, double x, double* out);
CG_API cg_status cg_radiometer_exact(long long n, double sigma0_sq, double sigma1_sq, double t,
                                     cg_error_pair* out);
CG_API cg_status cg_lrt_exact_single(long long n, double sigma0_sq, double sigma1_sq,
                                     cg_error_pair* out);
CG_API cg_status cg_bob_error_upper(long long n, double rate, double p_a, double sigma_b_sq,
                                    double* out);

/* Power budget. regime: "single", "multi", "multi_gamma2", "poisson". */
typedef struct cg_budget cg_budget;

CG_API cg_status cg_budget_create(const cg_system_params* params, const char* regime,
                                  double n_w_or_lambda, cg_budget** out);
/* key: "P_a", "R", "R0", "covert_bits", "snr_arg" or a constant name such as
 * "c", "psi", "phi", "kappa". */
CG_API cg_status cg_budget_get(const cg_budget* b, const char* key, double* out);
CG_API cg_status cg_budget_to_json(const cg_budget* b, char** out);
CG_API void cg_budget_free(cg_budget* b);

typedef struct cg_fit {
  double slope;
  double intercept;
  double r_squared;
  double slope_ci95;
} cg_fit;

CG_API cg_status cg_fit_power_law(const double* x, const double* y, size_t count, cg_fit* out);

/* Experiments are described by a JSON config; see the README for keys. */
typedef struct cg_experiment cg_experiment;
typedef struct cg_result cg_result;

CG_API cg_status cg_experiment_create(const char* json_config, cg_experiment** out);
CG_API cg_status cg_experiment_run(const cg_experiment* e, cg_result** out);
CG_API void cg_experiment_free(cg_experiment* e);

/* JSON summary; always available. */
CG_API cg_status cg_result_json(const cg_result* r, char** out);
/* CSV table; CG_ERR_UNSUPPORTED for commands without a table. */
CG_API cg_status cg_result_csv(const cg_result* r, char** out);
/* Output in the config's chosen format. */
CG_API cg_status cg_result_formatted(const cg_result* r, char** out);
CG_API void cg_result_free(cg_result* r);

#ifdef __cplusplus
}
#endif

#endif /* COVERTGEOM_H */
