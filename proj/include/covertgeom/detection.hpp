/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <vector>

namespace covertgeom {

struct ErrorPair {
  double p_fa = 0.0;
  double p_md = 0.0;
  double p_e = 0.0;

  static ErrorPair of(double fa, double md) { return {fa, md, 0.5 * (fa + md)}; }
};

struct KlBound {
  double d = 0.0;
  double pe_lower = 0.5;  // max(0, 1/2 - sqrt(D/8))
};

KlBound kl_budget_single(long long n, double p_a, double d_aw, double sigma_w_sq, double gamma);
KlBound kl_budget_multi(long long n, double p_a, const std::vector<double>& d_aw,
                        const std::vector<double>& sigma_w_sq, double gamma);

/// Energy detector on S = (1/n) sum y^2; declares H1 when S >= sigma0_sq + t.
ErrorPair radiometer_exact(long long n, double sigma0_sq, double sigma1_sq, double t);

/// Minimum-error equal-prior test between N(0, sigma0_sq) and N(0, sigma1_sq).
ErrorPair lrt_exact_single(long long n, double sigma0_sq, double sigma1_sq);

struct HypothesisPair {
  std::vector<double> sigma0_sq;
  std::vector<double> sigma1_sq;
};

HypothesisPair make_hypotheses(double p_a, const std::vector<double>& d_aw,
                               const std::vector<double>& sigma_w_sq, double gamma);

/// Sum of per-warden SNRs x_k = (sigma1 - sigma0)/sigma0.
double total_snr(const HypothesisPair& hp);

/// Exact joint-LRT error when every warden hears the same Alice symbol.
/// The whitened matched-filter energy is sufficient and shifts variance by
/// 1 + sum x_k.
ErrorPair lrt_exact_multi(long long n, const HypothesisPair& hp);

struct McErrorPair {
  ErrorPair estimate;
  double p_fa_ci95 = 0.0;  // half-widths
  double p_md_ci95 = 0.0;
  double p_e_ci95 = 0.0;
  long long trials = 0;
};

/// Monte Carlo joint LRT on the sufficient statistic. Deterministic in
/// `seed` regardless of worker count.
McErrorPair lrt_multi_mc(long long n, const HypothesisPair& hp, long long trials,
                         std::uint64_t seed);

/// Gamma-statistic Monte Carlo of the radiometer, used as an oracle.
McErrorPair radiometer_mc(long long n, double sigma0_sq, double sigma1_sq, double t,
                          long long trials, std::uint64_t seed);
/// Same for the single-warden LRT energy threshold.
McErrorPair lrt_single_mc(long long n, double sigma0_sq, double sigma1_sq, long long trials,
                          std::uint64_t seed);

struct ChebyshevBounds {
  double fa_bound = 1.0;
  double md_bound = 1.0;
};

/// Chebyshev bounds for the radiometer at the actual received power P_a/d^g.
ChebyshevBounds chebyshev_bounds(long long n, double p_a, double d_aw, double sigma_w_sq,
                                 double gamma, double t);
/// Same with d_aw replaced by its worst case 2.
ChebyshevBounds chebyshev_bounds_worst_case(long long n, double p_a, double sigma_w_sq,
                                            double gamma, double t);

}  // namespace covertgeom
