/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <map>
#include <string>

#include "covertgeom/scenario.hpp"

namespace covertgeom {

enum class Regime { SingleWarden, MultiWardenGammaGt2, MultiWardenGamma2, PoissonWardens };

std::string regime_name(Regime r);
Regime parse_regime(const std::string& s);

struct PowerBudget {
  Regime regime = Regime::SingleWarden;
  double p_a = 0.0;
  double r0 = 0.0;
  double rate = 0.0;         // min(1, r0)
  double covert_bits = 0.0;  // n * rate
  double snr_arg = 0.0;      // argument of log2(1 + .) in r0
  /// c, c', c'', c1, psi, phi, kappa, kappa', delta, delta' as applicable.
  std::map<std::string, double> constants;
};

/// phi = sqrt(ln(2/(2-zeta))/(m pi)).
double phi_radius(double m, double zeta);

PowerBudget budget_single(const SystemParams& params);
PowerBudget budget_multi_gamma_gt2(const SystemParams& params, double n_w);
PowerBudget budget_multi_gamma2(const SystemParams& params, double n_w);
PowerBudget budget_poisson_wardens(const SystemParams& params, double lambda_n);

/// Dispatch by regime; `n_w_or_lambda` is ignored for SingleWarden.
PowerBudget compute_budget(Regime regime, const SystemParams& params, double n_w_or_lambda);

std::string budget_to_json(const PowerBudget& b);

struct ConverseOptions {
  double n_w = 1.0;
  double lambda_prime = 0.0;  // <= 0 selects lambda/2
  double tau = 0.5;
  double xi = 1.0;
};

struct ConverseParams {
  double lambda = 0.0;
  double lambda_prime = 0.0;
  double t = 0.0;
  double rho = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
  double beta_prime = 0.0;
  double ell = 0.0;
  double tau = 0.0;
  double xi = 0.0;
};

/// rho depends on (gamma, P_f, lambda) only; requires gamma > 1.
double converse_rho(double gamma, double p_f, double lambda);

/// For gamma > 2 the threshold uses rho; at gamma == 2 it uses the
/// closest-jammer noise sigma_w0^2 + P_f/eta1^2.
ConverseParams converse_params(const SystemParams& params, double lambda,
                               const ConverseOptions& opts = {});

std::string converse_to_json(const ConverseParams& c);

struct HighProbBound {
  double probability = 0.0;
  double p_a = 0.0;
  double c0 = 0.0;
};

HighProbBound high_prob_covertness_bound(const SystemParams& params, double alpha0);

}  // namespace covertgeom
