/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "covertgeom/geometry.hpp"
#include "covertgeom/rng.hpp"

namespace covertgeom {

struct SystemParams {
  long long n = 10000;
  double m = 200.0;
  double gamma = 3.0;
  double p_f = 1.0;
  double sigma_w0_sq = 1.0;
  double sigma_b0_sq = 1.0;
  double epsilon = 0.1;
  double zeta = 0.5;

  /// Throws Error naming the first invalid field.
  void validate() const;
};

struct ClosestPerWarden {};
struct AllOn {};
struct ProbabilisticOn {
  double p = 1.0;
  double iota = 0.0;
};
struct ExplicitSet {
  std::vector<std::size_t> indices;
};
using JammerStrategy = std::variant<ClosestPerWarden, AllOn, ProbabilisticOn, ExplicitSet>;

std::string strategy_name(const JammerStrategy& s);

/// Sorted, duplicate-free active friendly indices.
std::vector<std::size_t> select_jammers(const NodeLayout& layout, const JammerStrategy& strategy,
                                        Rng& rng);

struct NoiseProfile {
  std::vector<double> sigma_w_sq;
  double sigma_b_sq = 0.0;
  std::vector<std::size_t> active;
  std::vector<double> d_aw;
  std::vector<double> d_bf;
  /// Bound on interference from nodes beyond r_pad when every node is on;
  /// zero otherwise, infinite at gamma = 2.
  double truncation_residual = 0.0;
};

NoiseProfile noise_profile(const NodeLayout& layout, const std::vector<std::size_t>& active,
                           const SystemParams& params);

std::string noise_profile_to_json(const NoiseProfile& profile);

struct MomentEstimate {
  double mean = 0.0;
  double ci95 = 0.0;  // half-width
  double bound = 0.0;
  bool within_bound = false;  // one-sided: mean - 3 se <= bound
};

struct MomentReport {
  MomentEstimate inv_sigma_sq;            // E[1/sigma_w^2], closest jammer on
  double inv_sigma_sq_exact_bound = 0.0;  // Gamma(g/2+1) / (P_f (m pi)^(g/2))
  MomentEstimate sigma4_conditional;      // E[sigma_w^4(r) | d_wf > eta1], all on within r
  double eta1 = 0.0;
  double rho = 0.0;
  long long trials = 0;
};

/// Gamma(g/2+1) / (2 P_f pi^(g/2+1) m^(g/2)).
double inv_noise_moment_bound(double gamma, double m, double p_f);
/// E[d^gamma]/P_f for the nearest-neighbour law: Gamma(g/2+1)/(P_f (m pi)^(g/2)).
double inv_noise_moment_closed_form(double gamma, double m, double p_f);

/// gamma must exceed 2 when fourth_moment is set.
MomentReport empirical_noise_moment_bounds(const SystemParams& params, double lambda, double r,
                                           long long trials, std::uint64_t seed,
                                           bool fourth_moment = true);

}  // namespace covertgeom
