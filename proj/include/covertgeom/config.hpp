/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covertgeom/budget.hpp"
#include "covertgeom/experiments.hpp"
#include "covertgeom/geometry.hpp"
#include "covertgeom/scenario.hpp"

namespace covertgeom {

enum class Command { Budget, Detect, Simulate, Converse, Sweep, Fit, Diagnose };

std::string command_name(Command c);

/// Fully validated experiment description. Parsed from JSON; unknown keys
/// and type mismatches are rejected with the offending field name.
struct ExperimentConfig {
  Command command = Command::Budget;
  std::string experiment_id = "run";
  Regime regime = Regime::SingleWarden;
  SystemParams params;
  WardenModel wardens = UniformSquare{1};
  JammerStrategy strategy = ClosestPerWarden{};
  long long placements = 1000;
  long long inner_trials = 10000;
  long long detector_trials = 0;  // detect: Monte Carlo cross-check when > 0
  std::uint64_t seed = 1;
  std::string format = "csv";
  int threads = 0;

  // detect
  double sigma0_sq = 1.0;
  double sigma1_sq = 1.0;
  double t = 0.0;  // > 0 selects the radiometer
  bool optimal = false;

  // simulate
  double power_scale = 1.0;
  double explicit_p_a = -1.0;  // < 0: use the budget

  // converse / diagnose
  double lambda = 0.2;
  double bump = 0.25;
  std::vector<long long> n_grid{1000, 10000, 100000, 1000000};
  double radius = 0.25;

  // sweep
  SweepAxis axis = SweepAxis::N;
  std::vector<double> grid;

  // fit
  std::vector<double> x;
  std::vector<double> y;

  double n_w_or_lambda() const;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Fixed CSV header shared by every tabular command.
extern const char* const kCsvHeader;

struct RunOutput {
  std::string json;  // summary, always produced
  std::string csv;   // empty for budget, detect and fit
};

RunOutput run_experiment(const ExperimentConfig& cfg);

}  // namespace covertgeom
