/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Command-line front end. Builds a JSON config from an optional file plus
// flags and hands it to the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "covertgeom/covertgeom.h"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int report(const std::string& status, const std::string& field, const std::string& message,
           int code) {
  json j;
  j["error"] = {{"status", status}, {"field", field}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return code;
}

int report_status(cg_status s) {
  switch (s) {
    case CG_ERR_INVALID:
      return report("invalid", cg_last_error_field(), cg_last_error(), kExitConfig);
    case CG_ERR_UNSUPPORTED:
      return report("unsupported", cg_last_error_field(), cg_last_error(), kExitConfig);
    case CG_ERR_NUMERICAL:
      return report("numerical", cg_last_error_field(), cg_last_error(), kExitNumerical);
    default:
      return report("internal", cg_last_error_field(), cg_last_error(), kExitInternal);
  }
}

struct Overrides {
  std::vector<std::function<void(json&)>> apply;
};

template <class T>
void flag(CLI::App* app, Overrides& ov, const std::string& name, const std::string& key,
          const std::string& help) {
  auto value = std::make_shared<T>();
  CLI::Option* opt = app->add_option(name, *value, help);
  if constexpr (CLI::detail::is_mutable_container<T>::value) opt->delimiter(',');
  ov.apply.push_back([opt, value, key](json& j) {
    if (opt->count() > 0) j[key] = *value;
  });
}

void bool_flag(CLI::App* app, Overrides& ov, const std::string& name, const std::string& key,
               const std::string& help) {
  CLI::Option* opt = app->add_flag(name, help);
  ov.apply.push_back([opt, key](json& j) {
    if (opt->count() > 0) j[key] = true;
  });
}

void system_flags(CLI::App* app, Overrides& ov) {
  flag<long long>(app, ov, "--n", "n", "blocklength (channel uses)");
  flag<double>(app, ov, "--m", "m", "friendly node density");
  flag<double>(app, ov, "--gamma", "gamma", "path-loss exponent");
  flag<double>(app, ov, "--pf", "p_f", "jammer symbol power");
  flag<double>(app, ov, "--sigma-w0-sq", "sigma_w0_sq", "warden noise floor");
  flag<double>(app, ov, "--sigma-b0-sq", "sigma_b0_sq", "Bob noise floor");
  flag<double>(app, ov, "--epsilon", "epsilon", "covertness slack in (0, 1/2)");
  flag<double>(app, ov, "--zeta", "zeta", "reliability slack in (0, 1)");
  flag<std::string>(app, ov, "--regime", "regime", "single | multi | multi_gamma2 | poisson");
  flag<long long>(app, ov, "--n-w", "n_w", "number of uniform wardens");
  flag<double>(app, ov, "--lambda-n", "lambda_n", "Poisson warden density");
  flag<std::string>(app, ov, "--warden-model", "warden_model", "uniform | poisson");
}

void placement_flags(CLI::App* app, Overrides& ov) {
  flag<std::string>(app, ov, "--strategy", "strategy", "closest | all_on | probabilistic | explicit");
  flag<double>(app, ov, "--p", "p", "activation probability (probabilistic)");
  flag<double>(app, ov, "--iota", "iota", "exclusion radius around Bob (probabilistic)");
  flag<std::vector<double>>(app, ov, "--indices", "indices", "active friendly indices (explicit)");
  flag<long long>(app, ov, "--placements", "placements", "number of sampled layouts");
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// Two numeric columns; lines that do not parse (headers, comments) are skipped.
bool read_points(const std::string& path, json& cfg, std::string& err) {
  std::ifstream in(path);
  if (!in) {
    err = "cannot open " + path;
    return false;
  }
  json xs = json::array(), ys = json::array();
  std::string line;
  while (std::getline(in, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream ls(line);
    double x, y;
    if (ls >> x >> y) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  cfg["x"] = xs;
  cfg["y"] = ys;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic-geometry covert communication toolkit"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(cg_version()));

  std::string config_path, output_path, points_path;
  std::map<CLI::App*, Overrides> overrides;

  auto common = [&](CLI::App* sub) {
    Overrides& ov = overrides[sub];
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    sub->add_option("--output,-o", output_path, "write output here instead of stdout");
    flag<std::string>(sub, ov, "--format", "format", "csv | json");
    flag<int>(sub, ov, "--threads", "threads", "worker threads (default: COVERTGEOM_THREADS or all cores)");
    flag<std::string>(sub, ov, "--seed", "seed", "64-bit root seed");
    flag<std::string>(sub, ov, "--experiment-id", "experiment_id", "label written to every row");
    return &ov;
  };

  CLI::App* budget = app.add_subcommand("budget", "print the covert power budget as JSON");
  system_flags(budget, *common(budget));

  CLI::App* detect = app.add_subcommand("detect", "exact detector error probabilities");
  {
    Overrides& ov = *common(detect);
    flag<long long>(detect, ov, "--n", "n", "blocklength");
    flag<double>(detect, ov, "--sigma0", "sigma0", "H0 variance");
    flag<double>(detect, ov, "--sigma1", "sigma1", "H1 variance");
    flag<double>(detect, ov, "--t", "t", "radiometer threshold above sigma0");
    bool_flag(detect, ov, "--optimal", "optimal", "use the likelihood-ratio test");
    flag<long long>(detect, ov, "--mc-trials", "detector_trials", "Monte Carlo cross-check trials");
  }

  CLI::App* simulate = app.add_subcommand("simulate", "placement-averaged warden error at budget");
  {
    Overrides& ov = *common(simulate);
    system_flags(simulate, ov);
    placement_flags(simulate, ov);
    flag<long long>(simulate, ov, "--inner-trials", "inner_trials", "joint-LRT Monte Carlo trials (0: exact)");
    flag<double>(simulate, ov, "--power-scale", "power_scale", "multiply the budget power");
    flag<double>(simulate, ov, "--p-a", "p_a", "explicit Alice power instead of the budget");
  }

  CLI::App* converse = app.add_subcommand("converse", "radiometer sweep over n above budget");
  {
    Overrides& ov = *common(converse);
    system_flags(converse, ov);
    placement_flags(converse, ov);
    flag<double>(converse, ov, "--lambda", "lambda", "target error sum");
    flag<double>(converse, ov, "--bump", "bump", "power exponent above budget");
    flag<std::vector<double>>(converse, ov, "--n-grid", "n_grid", "blocklengths");
  }

  CLI::App* sweep = app.add_subcommand("sweep", "throughput scaling sweep with power-law fit");
  {
    Overrides& ov = *common(sweep);
    system_flags(sweep, ov);
    flag<std::string>(sweep, ov, "--axis", "axis", "n | m | n_w | lambda_n");
    flag<std::vector<double>>(sweep, ov, "--grid", "grid", "axis values");
  }

  CLI::App* fit = app.add_subcommand("fit", "log-log power-law fit of a two-column CSV");
  common(fit);
  fit->add_option("input", points_path, "CSV with x,y columns")->required();

  CLI::App* diagnose = app.add_subcommand("diagnose", "placement event and noise moment checks");
  {
    Overrides& ov = *common(diagnose);
    system_flags(diagnose, ov);
    placement_flags(diagnose, ov);
    flag<double>(diagnose, ov, "--lambda", "lambda", "sets eta1");
    flag<double>(diagnose, ov, "--r", "r", "radius for the fourth-moment estimate");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("invalid", "argv", e.what(), kExitConfig);
  }

  CLI::App* sub = app.get_subcommands().front();
  json cfg = json::object();
  if (!config_path.empty()) {
    std::string text;
    if (!read_file(config_path, text))
      return report("invalid", "config", "cannot read " + config_path, kExitConfig);
    try {
      cfg = json::parse(text);
    } catch (const json::parse_error& e) {
      return report("invalid", "config", e.what(), kExitConfig);
    }
    if (!cfg.is_object()) return report("invalid", "config", "config must be a JSON object", kExitConfig);
  }
  if (output_path.empty() && cfg.contains("output") && cfg["output"].is_string())
    output_path = cfg["output"].get<std::string>();
  for (auto& apply : overrides[sub].apply) apply(cfg);
  cfg["command"] = sub->get_name();
  if (sub == fit) {
    std::string err;
    if (!read_points(points_path, cfg, err)) return report("invalid", "input", err, kExitConfig);
  }

  cg_experiment* exp = nullptr;
  cg_status st = cg_experiment_create(cfg.dump().c_str(), &exp);
  if (st != CG_OK) return report_status(st);
  cg_result* res = nullptr;
  st = cg_experiment_run(exp, &res);
  cg_experiment_free(exp);
  if (st != CG_OK) return report_status(st);
  char* text = nullptr;
  st = cg_result_formatted(res, &text);
  cg_result_free(res);
  if (st != CG_OK) return report_status(st);

  int code = kExitOk;
  if (output_path.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(output_path, std::ios::binary);
    if (!out || !(out << text)) code = report("invalid", "output", "cannot write " + output_path, kExitConfig);
  }
  cg_string_free(text);
  return code;
}
