/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covertgeom/budget.hpp"
#include "covertgeom/detection.hpp"
#include "covertgeom/geometry.hpp"
#include "covertgeom/scenario.hpp"

namespace covertgeom {

struct MeanCI {
  double mean = 0.0;
  double ci95 = 0.0;  // half-width, normal approximation
  long long count = 0;

  double lo() const { return mean - ci95; }
  double hi() const { return mean + ci95; }
};

/// Sequential mean and 1.96 * standard error.
MeanCI mean_ci(const std::vector<double>& values);

struct TrialRecord {
  std::uint64_t seed = 0;
  std::uint64_t layout_digest = 0;
  double p_a = 0.0;
  std::vector<double> d_aw;
  std::vector<double> sigma_w_sq;
  double sigma_b_sq = 0.0;
  double p_e = 0.5;
  double pe_lower = 0.5;
  double bob_bound = 1.0;
};

struct BudgetSource {
  /// Budget formula used when explicit_p_a is unset.
  Regime regime = Regime::SingleWarden;
  std::optional<double> explicit_p_a;
  double scale = 1.0;  // multiplies the budget power
};

struct CovertPeOptions {
  long long placements = 1000;
  /// Joint-LRT Monte Carlo trials per placement for several wardens;
  /// 0 uses the exact joint LRT.
  long long inner_trials = 10000;
  std::uint64_t seed = 1;
  bool keep_records = false;
  double r_pad = 0.0;
};

struct CovertPeResult {
  MeanCI p_e;
  MeanCI pe_lower;
  double p_a = 0.0;
  PowerBudget budget;
  std::vector<TrialRecord> records;
};

CovertPeResult estimate_covert_pe(const SystemParams& params, const WardenModel& wardens,
                                  const JammerStrategy& strategy, const BudgetSource& source,
                                  const CovertPeOptions& opts);

struct ConverseRow {
  long long n = 0;
  double p_a = 0.0;
  double t = 0.0;
  MeanCI p_fa;
  MeanCI p_md;
  MeanCI sum;
};

/// Alice power budget_single(n) * n^bump, radiometer threshold from
/// converse_params. Placement i uses the same layout for every n.
std::vector<ConverseRow> converse_sweep(const SystemParams& params, double lambda, double bump,
                                        const std::vector<long long>& n_grid,
                                        long long placements, std::uint64_t seed,
                                        const JammerStrategy& strategy = ClosestPerWarden{});

enum class SweepAxis { N, M, NW, LambdaN };

std::string axis_name(SweepAxis a);
SweepAxis parse_axis(const std::string& s);

struct SweepPoint {
  double x = 0.0;
  double covert_bits = 0.0;
  double r0 = 0.0;
  double p_a = 0.0;
  bool saturated = false;  // r0 >= 0.99
};

inline constexpr double kSaturationR0 = 0.99;

std::vector<SweepPoint> throughput_sweep(const SystemParams& base, double n_w_or_lambda,
                                         SweepAxis axis, const std::vector<double>& grid,
                                         Regime regime);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_ci95 = 0.0;  // half-width, Student t with k-2 dof
  std::size_t points = 0;
};

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// Unsaturated (x, covert_bits) pairs of a sweep.
void unsaturated_points(const std::vector<SweepPoint>& pts, std::vector<double>& x,
                        std::vector<double>& y);

struct EventRow {
  std::string name;
  double frequency = 0.0;
  double ci95 = 0.0;
  double closed_form = 0.0;
  bool one_sided = false;  // closed_form is a lower bound on the probability
  bool consistent = false;  // |freq - closed| <= 3 sigma, or freq >= closed - 3 sigma
  long long trials = 0;
};

/// Frequencies of placement events against their closed forms. `lambda`
/// sets eta1.
std::vector<EventRow> placement_event_probs(const SystemParams& params, const WardenModel& wardens,
                                            double lambda, long long placements,
                                            std::uint64_t seed);

/// One-sample Kolmogorov-Smirnov statistic of warden-to-nearest-friendly
/// distances against nn_distance_cdf.
double nn_distance_ks(double m, long long samples, std::uint64_t seed);

}  // namespace covertgeom
