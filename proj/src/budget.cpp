/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "covertgeom/budget.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "covertgeom/error.hpp"
#include "json.hpp"

namespace covertgeom {

namespace {

constexpr double kPi = std::numbers::pi;

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

// Shared checks; gamma is checked by each formula.
void check_common(const SystemParams& p) {
  require(p.n >= 1, "n", "blocklength n must be >= 1");
  require(positive(p.m), "m", "friendly density m must be positive");
  require(std::isfinite(p.gamma), "gamma", "path-loss exponent must be finite");
  require(positive(p.p_f), "p_f", "jammer power P_f must be positive");
  require(positive(p.sigma_w0_sq), "sigma_w0_sq", "warden noise floor must be positive");
  require(positive(p.sigma_b0_sq), "sigma_b0_sq", "Bob noise floor must be positive");
  require(p.epsilon > 0.0 && p.epsilon < 0.5, "epsilon", "epsilon must lie in (0, 1/2)");
  require(p.zeta > 0.0 && p.zeta < 1.0, "zeta", "zeta must lie in (0, 1)");
}

void finish_rate(PowerBudget& b, long long n, double snr_arg) {
  b.snr_arg = snr_arg;
  b.r0 = 0.25 * std::log2(1.0 + snr_arg);
  b.rate = std::min(1.0, b.r0);
  b.covert_bits = static_cast<double>(n) * b.rate;
}

// P_f eps^(g/2) (g-2) pi^(g/2) / (2^(g-1/2) Gamma(g/2+1))
double multi_c(const SystemParams& p) {
  const double g = p.gamma;
  return p.p_f * std::pow(p.epsilon, g / 2.0) * (g - 2.0) * std::pow(kPi, g / 2.0) /
         (std::pow(2.0, g - 0.5) * std::tgamma(g / 2.0 + 1.0));
}

}  // namespace

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::SingleWarden: return "single";
    case Regime::MultiWardenGammaGt2: return "multi";
    case Regime::MultiWardenGamma2: return "multi_gamma2";
    case Regime::PoissonWardens: return "poisson";
  }
  return "single";
}

Regime parse_regime(const std::string& s) {
  if (s == "single") return Regime::SingleWarden;
  if (s == "multi" || s == "multi_gamma_gt2") return Regime::MultiWardenGammaGt2;
  if (s == "multi_gamma2") return Regime::MultiWardenGamma2;
  if (s == "poisson") return Regime::PoissonWardens;
  fail(ErrorKind::InvalidArgument, "regime",
       "regime must be one of single, multi, multi_gamma2, poisson");
}

double phi_radius(double m, double zeta) {
  return std::sqrt(std::log(2.0 / (2.0 - zeta)) / (m * kPi));
}

PowerBudget budget_single(const SystemParams& p) {
  check_common(p);
  require(p.gamma > 0.0, "gamma", "path-loss exponent must be positive");
  const double g = p.gamma;
  const double psi = std::sqrt(p.epsilon / (2.0 * kPi));
  const double c = p.epsilon * 4.0 * std::numbers::sqrt2 * std::pow(psi, g) * p.p_f *
                   std::pow(kPi, g / 2.0 + 1.0) / std::tgamma(g / 2.0 + 1.0);
  const double phi = phi_radius(p.m, p.zeta);
  const double mg = std::pow(p.m, g / 2.0);
  const double sqn = std::sqrt(static_cast<double>(p.n));

  PowerBudget b;
  b.regime = Regime::SingleWarden;
  b.p_a = c * mg / sqn;
  finish_rate(b, p.n, c * mg / (2.0 * sqn * (p.sigma_b0_sq + p.p_f / std::pow(phi, g))));
  b.constants = {{"c", c}, {"psi", psi}, {"phi", phi}};
  return b;
}

PowerBudget budget_multi_gamma_gt2(const SystemParams& p, double n_w) {
  check_common(p);
  if (!(p.gamma > 2.0))
    fail(ErrorKind::Unsupported, "gamma",
         "multi-warden budget needs gamma > 2; use the multi_gamma2 regime at gamma = 2");
  require(n_w >= 1.0 && std::isfinite(n_w), "n_w", "warden count must be >= 1");
  const double g = p.gamma;
  const double c = multi_c(p);
  const double cp = c * std::pow(p.zeta, g / 2.0 - 1.0) * (g - 2.0) /
                    (std::pow(2.0, g + 3.0) * p.p_f * std::pow(kPi, g / 2.0));
  const double mg = std::pow(p.m, g / 2.0);
  const double sqn = std::sqrt(static_cast<double>(p.n));

  PowerBudget b;
  b.regime = Regime::MultiWardenGammaGt2;
  b.p_a = c * mg / (sqn * std::pow(n_w, g / 2.0));
  finish_rate(b, p.n, cp * mg / (4.0 * std::pow(n_w, g) * sqn));
  b.constants = {{"c", c},
                 {"c_prime", cp},
                 {"kappa", std::sqrt(p.epsilon / (4.0 * n_w))},
                 {"delta", std::sqrt(p.zeta / (4.0 * kPi * n_w))}};
  return b;
}

PowerBudget budget_multi_gamma2(const SystemParams& p, double n_w) {
  check_common(p);
  if (std::fabs(p.gamma - 2.0) > 1e-12)
    fail(ErrorKind::Unsupported, "gamma", "the multi_gamma2 budget is defined at gamma = 2 only");
  require(n_w >= 2.0 && std::isfinite(n_w), "n_w", "warden count must be >= 2 (ln N_w > 0)");
  const double c = 4.0 * std::numbers::sqrt2 * p.epsilon * kPi * p.p_f;
  const double cp = c / (8.0 * kPi * p.p_f);
  const double ln_nw = std::log(n_w);
  const double sqn = std::sqrt(static_cast<double>(p.n));

  PowerBudget b;
  b.regime = Regime::MultiWardenGamma2;
  b.p_a = c * p.m / (sqn * n_w * ln_nw);
  finish_rate(b, p.n, cp * p.m / (4.0 * n_w * n_w * ln_nw * ln_nw * sqn));
  b.constants = {{"c", c}, {"c_prime", cp}};
  return b;
}

PowerBudget budget_poisson_wardens(const SystemParams& p, double lambda_n) {
  check_common(p);
  if (!(p.gamma > 2.0))
    fail(ErrorKind::Unsupported, "gamma", "Poisson-warden budget needs gamma > 2");
  require(positive(lambda_n), "lambda_n", "warden density must be positive");
  const double g = p.gamma;
  const double c = multi_c(p);
  const double le = std::log(2.0 / (2.0 - p.epsilon));
  const double lz = std::log(1.0 / (1.0 - p.zeta / 2.0));
  const double c1 = (kPi / 2.0) * std::pow(4.0 * le / (p.epsilon * kPi), g / 2.0 - 1.0);
  const double cpp = c * std::pow(lz, g / 2.0 - 1.0) * (g - 2.0) /
                     (std::pow(2.0, g + 5.0) * p.p_f * std::pow(kPi, g / 2.0));
  const double mg = std::pow(p.m, g / 2.0);
  const double sqn = std::sqrt(static_cast<double>(p.n));

  PowerBudget b;
  b.regime = Regime::PoissonWardens;
  b.p_a = c * c1 * mg / (sqn * std::pow(lambda_n, g / 2.0));
  finish_rate(b, p.n, cpp * mg / (4.0 * std::pow(lambda_n, g) * sqn));
  b.constants = {{"c", c},
                 {"c1", c1},
                 {"c_double_prime", cpp},
                 {"kappa_prime", std::sqrt(le / (kPi * lambda_n))},
                 {"delta_prime", std::sqrt(lz / (4.0 * kPi * lambda_n))}};
  return b;
}

PowerBudget compute_budget(Regime regime, const SystemParams& params, double n_w_or_lambda) {
  switch (regime) {
    case Regime::SingleWarden: return budget_single(params);
    case Regime::MultiWardenGammaGt2: return budget_multi_gamma_gt2(params, n_w_or_lambda);
    case Regime::MultiWardenGamma2: return budget_multi_gamma2(params, n_w_or_lambda);
    case Regime::PoissonWardens: return budget_poisson_wardens(params, n_w_or_lambda);
  }
  return budget_single(params);
}

std::string budget_to_json(const PowerBudget& b) {
  nlohmann::ordered_json j;
  j["regime"] = regime_name(b.regime);
  j["P_a"] = b.p_a;
  j["R"] = b.rate;
  j["R0"] = b.r0;
  j["covert_bits"] = b.covert_bits;
  j["snr_arg"] = b.snr_arg;
  for (const auto& [k, v] : b.constants) j[k] = v;
  return j.dump();
}

double converse_rho(double gamma, double p_f, double lambda) {
  require(gamma > 1.0 && std::isfinite(gamma), "gamma", "rho needs gamma > 1");
  require(lambda > 0.0 && lambda < 1.0, "lambda", "lambda must lie in (0, 1)");
  const double l = std::log(4.0 / (4.0 - lambda));
  const double mn = std::min(std::pow(l, 1.0 - gamma), 8.0 * std::pow(l, 2.0 - gamma));
  return 2.0 * std::pow(kPi, gamma / 2.0) * p_f * std::sqrt(mn / (gamma - 1.0));
}

ConverseParams converse_params(const SystemParams& p, double lambda, const ConverseOptions& opts) {
  check_common(p);
  require(lambda > 0.0 && lambda < 1.0, "lambda", "lambda must lie in (0, 1)");
  require(p.gamma >= 2.0, "gamma", "converse needs gamma >= 2");
  ConverseParams c;
  c.lambda = lambda;
  c.lambda_prime = opts.lambda_prime > 0.0 ? opts.lambda_prime : lambda / 2.0;
  require(c.lambda_prime > 0.0 && c.lambda_prime < lambda, "lambda_prime",
          "lambda' must lie in (0, lambda)");
  require(opts.n_w >= 1.0 && std::isfinite(opts.n_w), "n_w", "warden count must be >= 1");
  require(opts.tau > 0.0 && opts.tau < 1.0, "tau", "tau must lie in (0, 1)");
  require(opts.xi > 0.0 && opts.xi <= 1.0, "xi", "xi must lie in (0, 1]");
  c.tau = opts.tau;
  c.xi = opts.xi;

  const double l = std::log(4.0 / (4.0 - lambda));
  const double sq_nl = std::sqrt(static_cast<double>(p.n) * lambda);
  c.rho = converse_rho(p.gamma, p.p_f, lambda);
  c.eta1 = std::sqrt(l / (p.m * kPi));
  c.eta2 = std::sqrt(std::log(4.0 / (4.0 - lambda + c.lambda_prime)) / (p.m * kPi));
  c.eta3 = std::sqrt(lambda / (2.0 * kPi));
  if (p.gamma > 2.0)
    c.t = std::sqrt(8.0) * c.rho * std::pow(p.m, p.gamma / 2.0) / sq_nl;
  else
    c.t = 2.0 * std::numbers::sqrt2 * (p.sigma_w0_sq + p.p_f / (c.eta1 * c.eta1)) / sq_nl;
  c.beta_prime = std::sqrt(2.0 * std::log(8.0 / lambda) / (kPi * opts.n_w));
  c.ell = std::sqrt(std::log(1.0 - lambda / 8.0) / std::log(lambda / 8.0));
  return c;
}

std::string converse_to_json(const ConverseParams& c) {
  nlohmann::ordered_json j;
  j["lambda"] = c.lambda;
  j["lambda_prime"] = c.lambda_prime;
  j["t"] = c.t;
  j["rho"] = c.rho;
  j["eta1"] = c.eta1;
  j["eta2"] = c.eta2;
  j["eta3"] = c.eta3;
  j["beta_prime"] = c.beta_prime;
  j["ell"] = c.ell;
  j["tau"] = c.tau;
  j["xi"] = c.xi;
  return j.dump();
}

HighProbBound high_prob_covertness_bound(const SystemParams& p, double alpha0) {
  require(alpha0 > 1.0 && std::isfinite(alpha0), "alpha0", "alpha0 must exceed 1");
  PowerBudget b = budget_single(p);
  const double g = p.gamma;
  const double c = b.constants.at("c");
  const double psi = b.constants.at("psi");
  HighProbBound out;
  out.c0 = 4.0 * alpha0 * std::numbers::sqrt2 * p.epsilon * std::pow(psi, g) / c;
  out.probability = -std::expm1(-kPi * std::pow(out.c0, 2.0 / g) * std::pow(p.p_f, 2.0 / g)) *
                    (1.0 - p.epsilon / 4.0);
  out.p_a = b.p_a / alpha0;
  return out;
}

}  // namespace covertgeom
