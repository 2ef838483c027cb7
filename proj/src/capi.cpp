/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "covertgeom/covertgeom.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "covertgeom/budget.hpp"
#include "covertgeom/config.hpp"
#include "covertgeom/detection.hpp"
#include "covertgeom/error.hpp"
#include "covertgeom/experiments.hpp"
#include "covertgeom/numerics.hpp"
#include "covertgeom/parallel.hpp"
#include "covertgeom/reliability.hpp"

namespace cg = covertgeom;

struct cg_budget {
  cg::PowerBudget b;
};

struct cg_experiment {
  cg::ExperimentConfig cfg;
};

struct cg_result {
  cg::Command command;
  std::string format;
  cg::RunOutput out;
};

namespace {

thread_local std::string t_error;
thread_local std::string t_field;

void clear_error() {
  t_error.clear();
  t_field.clear();
}

cg_status set_error(cg_status s, const std::string& msg, const std::string& field) {
  t_error = msg;
  t_field = field;
  return s;
}

cg_status status_of(cg::ErrorKind k) {
  switch (k) {
    case cg::ErrorKind::Domain:
    case cg::ErrorKind::InvalidArgument: return CG_ERR_INVALID;
    case cg::ErrorKind::Unsupported: return CG_ERR_UNSUPPORTED;
    case cg::ErrorKind::Numerical: return CG_ERR_NUMERICAL;
  }
  return CG_ERR_INTERNAL;
}

template <class F>
cg_status guarded(F body) {
  clear_error();
  try {
    body();
    return CG_OK;
  } catch (const cg::Error& e) {
    return set_error(status_of(e.kind()), e.what(), e.field());
  } catch (const std::bad_alloc&) {
    return set_error(CG_ERR_INTERNAL, "out of memory", "");
  } catch (const std::exception& e) {
    return set_error(CG_ERR_INTERNAL, e.what(), "");
  } catch (...) {
    return set_error(CG_ERR_INTERNAL, "unknown failure", "");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

cg_status null_arg(const char* field) {
  return set_error(CG_ERR_INVALID, std::string("null pointer argument: ") + field, field);
}

cg::SystemParams to_params(const cg_system_params& p) {
  cg::SystemParams s;
  s.n = p.n;
  s.m = p.m;
  s.gamma = p.gamma;
  s.p_f = p.p_f;
  s.sigma_w0_sq = p.sigma_w0_sq;
  s.sigma_b0_sq = p.sigma_b0_sq;
  s.epsilon = p.epsilon;
  s.zeta = p.zeta;
  return s;
}

void put(cg_error_pair* out, const cg::ErrorPair& e) {
  out->p_fa = e.p_fa;
  out->p_md = e.p_md;
  out->p_e = e.p_e;
}

}  // namespace

extern "C" {

const char* cg_last_error(void) { return t_error.c_str(); }
const char* cg_last_error_field(void) { return t_field.c_str(); }
const char* cg_version(void) { return "0.1.0"; }
void cg_set_threads(int threads) { cg::set_thread_count(threads); }
void cg_string_free(char* s) { std::free(s); }

void cg_system_params_default(cg_system_params* out) {
  if (!out) return;
  cg::SystemParams d;
  *out = {d.n, d.m, d.gamma, d.p_f, d.sigma_w0_sq, d.sigma_b0_sq, d.epsilon, d.zeta};
}

cg_status cg_reg_gamma_upper(double shape, double x, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = cg::reg_gamma_upper(shape, x); });
}

cg_status cg_kl_gaussian_scalar(long long n, double x, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = cg::kl_gaussian_scalar(n, x); });
}

cg_status cg_radiometer_exact(long long n, double sigma0_sq, double sigma1_sq, double t,
                              cg_error_pair* out) {
  if (!out) return null_arg("out");
  return guarded([&] { put(out, cg::radiometer_exact(n, sigma0_sq, sigma1_sq, t)); });
}

cg_status cg_lrt_exact_single(long long n, double sigma0_sq, double sigma1_sq,
                              cg_error_pair* out) {
  if (!out) return null_arg("out");
  return guarded([&] { put(out, cg::lrt_exact_single(n, sigma0_sq, sigma1_sq)); });
}

cg_status cg_bob_error_upper(long long n, double rate, double p_a, double sigma_b_sq,
                             double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = cg::bob_error_upper(n, rate, p_a, sigma_b_sq); });
}

cg_status cg_budget_create(const cg_system_params* params, const char* regime,
                           double n_w_or_lambda, cg_budget** out) {
  if (!params) return null_arg("params");
  if (!regime) return null_arg("regime");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto* b = new cg_budget{
        cg::compute_budget(cg::parse_regime(regime), to_params(*params), n_w_or_lambda)};
    *out = b;
  });
}

cg_status cg_budget_get(const cg_budget* b, const char* key, double* out) {
  if (!b) return null_arg("budget");
  if (!key) return null_arg("key");
  if (!out) return null_arg("out");
  return guarded([&] {
    const std::string k = key;
    if (k == "P_a") *out = b->b.p_a;
    else if (k == "R") *out = b->b.rate;
    else if (k == "R0") *out = b->b.r0;
    else if (k == "covert_bits") *out = b->b.covert_bits;
    else if (k == "snr_arg") *out = b->b.snr_arg;
    else {
      auto it = b->b.constants.find(k);
      if (it == b->b.constants.end())
        cg::fail(cg::ErrorKind::InvalidArgument, "key", "no budget value named '" + k + "'");
      *out = it->second;
    }
  });
}

cg_status cg_budget_to_json(const cg_budget* b, char** out) {
  if (!b) return null_arg("budget");
  if (!out) return null_arg("out");
  return guarded([&] { *out = dup_string(cg::budget_to_json(b->b)); });
}

void cg_budget_free(cg_budget* b) { delete b; }

cg_status cg_fit_power_law(const double* x, const double* y, size_t count, cg_fit* out) {
  if ((!x || !y) && count > 0) return null_arg(!x ? "x" : "y");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::vector<double> xs(x, x + count), ys(y, y + count);
    cg::ScalingFit f = cg::fit_power_law(xs, ys);
    *out = {f.slope, f.intercept, f.r_squared, f.slope_ci95};
  });
}

cg_status cg_experiment_create(const char* json_config, cg_experiment** out) {
  if (!json_config) return null_arg("json_config");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new cg_experiment{cg::parse_experiment_config(json_config)}; });
}

cg_status cg_experiment_run(const cg_experiment* e, cg_result** out) {
  if (!e) return null_arg("experiment");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new cg_result{e->cfg.command, e->cfg.format, cg::run_experiment(e->cfg)};
  });
}

void cg_experiment_free(cg_experiment* e) { delete e; }

cg_status cg_result_json(const cg_result* r, char** out) {
  if (!r) return null_arg("result");
  if (!out) return null_arg("out");
  return guarded([&] { *out = dup_string(r->out.json); });
}

cg_status cg_result_csv(const cg_result* r, char** out) {
  if (!r) return null_arg("result");
  if (!out) return null_arg("out");
  *out = nullptr;
  if (r->out.csv.empty())
    return set_error(CG_ERR_UNSUPPORTED, "this command produces no table", "format");
  return guarded([&] { *out = dup_string(r->out.csv); });
}

cg_status cg_result_formatted(const cg_result* r, char** out) {
  if (!r) return null_arg("result");
  if (!out) return null_arg("out");
  return guarded([&] {
    const bool table = !r->out.csv.empty() && r->format == "csv";
    *out = dup_string(table ? r->out.csv : r->out.json + "\n");
  });
}

void cg_result_free(cg_result* r) { delete r; }

}  // extern "C"
