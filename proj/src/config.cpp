/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "covertgeom/config.hpp"

#include <cerrno>
#include <cinttypes>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <set>

#include "covertgeom/detection.hpp"
#include "covertgeom/error.hpp"
#include "covertgeom/parallel.hpp"
#include "json.hpp"

namespace covertgeom {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

const char* const kCsvHeader =
    "experiment_id,regime,n,m,gamma,n_w_or_lambda,epsilon,zeta,p_f,p_a,rate,covert_bits,"
    "metric_name,metric_mean,metric_ci95_lo,metric_ci95_hi,trials,seed";

std::string command_name(Command c) {
  switch (c) {
    case Command::Budget: return "budget";
    case Command::Detect: return "detect";
    case Command::Simulate: return "simulate";
    case Command::Converse: return "converse";
    case Command::Sweep: return "sweep";
    case Command::Fit: return "fit";
    case Command::Diagnose: return "diagnose";
  }
  return "budget";
}

double ExperimentConfig::n_w_or_lambda() const {
  if (const auto* u = std::get_if<UniformSquare>(&wardens)) return static_cast<double>(u->n_w);
  return std::get<PoissonPlane>(wardens).lambda_n;
}

namespace {

Command parse_command(const std::string& s) {
  for (Command c : {Command::Budget, Command::Detect, Command::Simulate, Command::Converse,
                    Command::Sweep, Command::Fit, Command::Diagnose})
    if (command_name(c) == s) return c;
  fail(ErrorKind::InvalidArgument, "command",
       "command must be one of budget, detect, simulate, converse, sweep, fit, diagnose");
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "command", "experiment_id", "regime", "n", "m", "gamma", "p_f", "sigma_w0_sq",
      "sigma_b0_sq", "epsilon", "zeta", "warden_model", "n_w", "lambda_n", "strategy", "p",
      "iota", "indices", "placements", "inner_trials", "detector_trials", "seed", "format",
      "threads", "output", "sigma0", "sigma1", "t", "optimal", "power_scale", "p_a", "lambda",
      "bump", "n_grid", "r", "axis", "grid", "x", "y"};
  return keys;
}

double get_real(const json& j, const char* key, double def) {
  if (!j.contains(key) || j[key].is_null()) return def;
  if (!j[key].is_number()) fail(ErrorKind::InvalidArgument, key, std::string(key) + " must be a number");
  double v = j[key].get<double>();
  if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, key, std::string(key) + " must be finite");
  return v;
}

long long get_int(const json& j, const char* key, long long def) {
  if (!j.contains(key) || j[key].is_null()) return def;
  const json& v = j[key];
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9.0e15)
      return static_cast<long long>(d);
  }
  fail(ErrorKind::InvalidArgument, key, std::string(key) + " must be an integer");
}

std::string get_string(const json& j, const char* key, const std::string& def) {
  if (!j.contains(key) || j[key].is_null()) return def;
  if (!j[key].is_string()) fail(ErrorKind::InvalidArgument, key, std::string(key) + " must be a string");
  return j[key].get<std::string>();
}

std::vector<double> get_reals(const json& j, const char* key) {
  std::vector<double> out;
  if (!j.contains(key) || j[key].is_null()) return out;
  if (!j[key].is_array()) fail(ErrorKind::InvalidArgument, key, std::string(key) + " must be an array");
  for (const auto& v : j[key]) {
    if (!v.is_number()) fail(ErrorKind::InvalidArgument, key, std::string(key) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::uint64_t get_seed(const json& j) {
  if (!j.contains("seed") || j["seed"].is_null()) return 1;
  const json& v = j["seed"];
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    errno = 0;
    unsigned long long x = std::strtoull(s.c_str(), &end, 0);
    if (!s.empty() && end && *end == '\0' && errno == 0 && s[0] != '-') return x;
  }
  fail(ErrorKind::InvalidArgument, "seed", "seed must be a 64-bit unsigned integer");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, "config", std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::InvalidArgument, "config", "config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!known_keys().count(k)) fail(ErrorKind::InvalidArgument, k, "unknown config key '" + k + "'");

  ExperimentConfig c;
  c.command = parse_command(get_string(j, "command", "budget"));
  c.experiment_id = get_string(j, "experiment_id", command_name(c.command));
  if (c.experiment_id.find_first_of(",\"\n\r") != std::string::npos)
    fail(ErrorKind::InvalidArgument, "experiment_id", "experiment_id must not contain commas, quotes or newlines");
  c.regime = parse_regime(get_string(j, "regime", "single"));

  SystemParams& p = c.params;
  p.n = get_int(j, "n", p.n);
  p.m = get_real(j, "m", p.m);
  p.gamma = get_real(j, "gamma", p.gamma);
  p.p_f = get_real(j, "p_f", p.p_f);
  p.sigma_w0_sq = get_real(j, "sigma_w0_sq", p.sigma_w0_sq);
  p.sigma_b0_sq = get_real(j, "sigma_b0_sq", p.sigma_b0_sq);
  p.epsilon = get_real(j, "epsilon", p.epsilon);
  p.zeta = get_real(j, "zeta", p.zeta);

  const std::string wm =
      get_string(j, "warden_model", c.regime == Regime::PoissonWardens ? "poisson" : "uniform");
  if (wm == "uniform") {
    long long nw = get_int(j, "n_w", c.regime == Regime::MultiWardenGamma2 ? 2 : 1);
    require(nw >= 1 && nw <= 1000000, "n_w", "n_w must lie in [1, 1e6]");
    c.wardens = UniformSquare{static_cast<int>(nw)};
  } else if (wm == "poisson") {
    c.wardens = PoissonPlane{get_real(j, "lambda_n", 10.0)};
  } else {
    fail(ErrorKind::InvalidArgument, "warden_model", "warden_model must be uniform or poisson");
  }

  const std::string st = get_string(j, "strategy", "closest");
  if (st == "closest") {
    c.strategy = ClosestPerWarden{};
  } else if (st == "all_on") {
    c.strategy = AllOn{};
  } else if (st == "probabilistic") {
    ProbabilisticOn pr{get_real(j, "p", 1.0), get_real(j, "iota", 0.0)};
    require(pr.p >= 0.0 && pr.p <= 1.0, "p", "p must lie in [0, 1]");
    require(pr.iota >= 0.0, "iota", "iota must be >= 0");
    c.strategy = pr;
  } else if (st == "explicit") {
    ExplicitSet ex;
    for (double v : get_reals(j, "indices")) {
      require(v >= 0.0 && v == std::floor(v), "indices", "indices must be nonnegative integers");
      ex.indices.push_back(static_cast<std::size_t>(v));
    }
    c.strategy = ex;
  } else {
    fail(ErrorKind::InvalidArgument, "strategy",
         "strategy must be closest, all_on, probabilistic or explicit");
  }

  c.placements = get_int(j, "placements", c.placements);
  c.inner_trials = get_int(j, "inner_trials", c.inner_trials);
  c.detector_trials = get_int(j, "detector_trials", c.detector_trials);
  c.seed = get_seed(j);
  c.format = get_string(j, "format", c.format);
  require(c.format == "csv" || c.format == "json", "format", "format must be csv or json");
  c.threads = static_cast<int>(get_int(j, "threads", 0));
  require(c.threads >= 0, "threads", "threads must be >= 0");

  c.sigma0_sq = get_real(j, "sigma0", c.sigma0_sq);
  c.sigma1_sq = get_real(j, "sigma1", c.sigma1_sq);
  c.t = get_real(j, "t", c.t);
  if (j.contains("optimal")) {
    require(j["optimal"].is_boolean(), "optimal", "optimal must be true or false");
    c.optimal = j["optimal"].get<bool>();
  }
  c.power_scale = get_real(j, "power_scale", c.power_scale);
  c.explicit_p_a = get_real(j, "p_a", c.explicit_p_a);
  c.lambda = get_real(j, "lambda", c.lambda);
  c.bump = get_real(j, "bump", c.bump);
  if (j.contains("n_grid")) {
    c.n_grid.clear();
    for (double v : get_reals(j, "n_grid")) {
      require(v >= 1.0 && v == std::floor(v), "n_grid", "n_grid must hold positive integers");
      c.n_grid.push_back(static_cast<long long>(v));
    }
  }
  c.radius = get_real(j, "r", c.radius);
  c.axis = parse_axis(get_string(j, "axis", "n"));
  c.grid = get_reals(j, "grid");
  c.x = get_reals(j, "x");
  c.y = get_reals(j, "y");

  // Preconditions are checked here so no work starts on a bad config.
  switch (c.command) {
    case Command::Budget:
      p.validate();
      compute_budget(c.regime, p, c.n_w_or_lambda());
      break;
    case Command::Detect:
      require(p.n >= 1, "n", "n must be >= 1");
      require(c.sigma0_sq > 0.0, "sigma0", "sigma0 must be positive");
      require(c.sigma1_sq >= c.sigma0_sq, "sigma1", "sigma1 must be >= sigma0");
      require(c.optimal || c.t > 0.0, "t", "give --optimal or a positive radiometer threshold t");
      require(c.detector_trials == 0 || c.detector_trials >= 1000, "detector_trials",
              "detector_trials must be 0 or >= 1000");
      break;
    case Command::Simulate:
      p.validate();
      validate(PlacementModel{c.wardens, p.m, 0.0});
      require(c.placements >= 1000, "placements", "placements must be >= 1000");
      require(c.inner_trials == 0 || c.inner_trials >= 1000, "inner_trials",
              "inner_trials must be 0 or >= 1000");
      require(c.power_scale >= 0.0, "power_scale", "power_scale must be >= 0");
      if (c.explicit_p_a < 0.0) compute_budget(c.regime, p, c.n_w_or_lambda());
      break;
    case Command::Converse:
      p.validate();
      require(c.lambda > 0.0 && c.lambda < 1.0, "lambda", "lambda must lie in (0, 1)");
      require(c.bump >= 0.0, "bump", "bump must be >= 0");
      require(!c.n_grid.empty(), "n_grid", "n_grid must be nonempty");
      require(c.placements >= 1, "placements", "placements must be >= 1");
      break;
    case Command::Sweep:
      p.validate();
      require(c.grid.size() >= 1, "grid", "grid must be nonempty");
      for (double v : c.grid) require(v > 0.0, "grid", "grid values must be positive");
      break;
    case Command::Fit:
      require(c.x.size() == c.y.size(), "y", "x and y lengths differ");
      require(c.x.size() >= 3, "x", "fit needs at least 3 points");
      break;
    case Command::Diagnose:
      p.validate();
      validate(PlacementModel{c.wardens, p.m, 0.0});
      require(c.lambda > 0.0 && c.lambda < 1.0, "lambda", "lambda must lie in (0, 1)");
      require(c.placements >= 1000, "placements", "placements must be >= 1000");
      break;
  }
  return c;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvTable {
 public:
  explicit CsvTable(const ExperimentConfig& c) : c_(c) { out_ = std::string(kCsvHeader) + "\n"; }

  void row(const SystemParams& p, double nwl, double p_a, double rate, double bits,
           const std::string& metric, double mean, double lo, double hi, long long trials) {
    char seed[32];
    std::snprintf(seed, sizeof seed, "%" PRIu64, c_.seed);
    out_ += c_.experiment_id + "," + regime_name(c_.regime) + "," + std::to_string(p.n) + "," +
            num(p.m) + "," + num(p.gamma) + "," + num(nwl) + "," + num(p.epsilon) + "," +
            num(p.zeta) + "," + num(p.p_f) + "," + num(p_a) + "," + num(rate) + "," + num(bits) +
            "," + metric + "," + num(mean) + "," + num(lo) + "," + num(hi) + "," +
            std::to_string(trials) + "," + seed + "\n";
  }

  std::string str() const { return out_; }

 private:
  const ExperimentConfig& c_;
  std::string out_;
};

ojson ci_json(const MeanCI& m) {
  return ojson{{"mean", m.mean}, {"ci95_lo", m.lo()}, {"ci95_hi", m.hi()}, {"count", m.count}};
}

ojson header_json(const ExperimentConfig& c) {
  ojson j;
  j["experiment_id"] = c.experiment_id;
  j["command"] = command_name(c.command);
  j["regime"] = regime_name(c.regime);
  j["seed"] = c.seed;
  return j;
}

RunOutput run_budget(const ExperimentConfig& c) {
  PowerBudget b = compute_budget(c.regime, c.params, c.n_w_or_lambda());
  ojson j = ojson::parse(budget_to_json(b));
  j["n"] = c.params.n;
  if (c.regime != Regime::SingleWarden) j["n_w_or_lambda"] = c.n_w_or_lambda();
  return {j.dump(), ""};
}

RunOutput run_detect(const ExperimentConfig& c) {
  ojson j;
  j["detector"] = c.optimal ? "optimal" : "radiometer";
  j["n"] = c.params.n;
  j["sigma0_sq"] = c.sigma0_sq;
  j["sigma1_sq"] = c.sigma1_sq;
  ErrorPair e;
  if (c.optimal) {
    e = lrt_exact_single(c.params.n, c.sigma0_sq, c.sigma1_sq);
  } else {
    j["t"] = c.t;
    e = radiometer_exact(c.params.n, c.sigma0_sq, c.sigma1_sq, c.t);
  }
  j["p_fa"] = e.p_fa;
  j["p_md"] = e.p_md;
  j["p_e"] = e.p_e;
  if (c.detector_trials > 0) {
    McErrorPair mc = c.optimal ? lrt_single_mc(c.params.n, c.sigma0_sq, c.sigma1_sq,
                                               c.detector_trials, c.seed)
                               : radiometer_mc(c.params.n, c.sigma0_sq, c.sigma1_sq, c.t,
                                               c.detector_trials, c.seed);
    j["mc"] = {{"trials", mc.trials},
               {"p_fa", mc.estimate.p_fa},
               {"p_md", mc.estimate.p_md},
               {"p_e", mc.estimate.p_e},
               {"p_e_ci95", mc.p_e_ci95},
               {"seed", c.seed}};
  }
  return {j.dump(), ""};
}

RunOutput run_fit(const ExperimentConfig& c) {
  ScalingFit f = fit_power_law(c.x, c.y);
  ojson j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["r_squared"] = f.r_squared;
  j["slope_ci95"] = f.slope_ci95;
  j["points"] = f.points;
  return {j.dump(), ""};
}

RunOutput run_simulate(const ExperimentConfig& c) {
  BudgetSource src;
  src.regime = c.regime;
  if (c.explicit_p_a >= 0.0) src.explicit_p_a = c.explicit_p_a;
  src.scale = c.power_scale;
  CovertPeOptions opts;
  opts.placements = c.placements;
  opts.inner_trials = c.inner_trials;
  opts.seed = c.seed;
  CovertPeResult r = estimate_covert_pe(c.params, c.wardens, c.strategy, src, opts);

  const double target = 0.5 - c.params.epsilon;
  ojson j = header_json(c);
  j["strategy"] = strategy_name(c.strategy);
  j["p_a"] = r.p_a;
  j["rate"] = r.budget.rate;
  j["covert_bits"] = r.budget.covert_bits;
  j["placements"] = c.placements;
  j["p_e"] = ci_json(r.p_e);
  j["pe_lower"] = ci_json(r.pe_lower);
  j["target"] = target;
  j["meets_target"] = r.p_e.mean >= target - r.p_e.ci95;

  CsvTable t(c);
  const double nwl = c.n_w_or_lambda();
  t.row(c.params, nwl, r.p_a, r.budget.rate, r.budget.covert_bits, "p_e", r.p_e.mean, r.p_e.lo(),
        r.p_e.hi(), c.placements);
  t.row(c.params, nwl, r.p_a, r.budget.rate, r.budget.covert_bits, "pe_lower", r.pe_lower.mean,
        r.pe_lower.lo(), r.pe_lower.hi(), c.placements);
  return {j.dump(), t.str()};
}

RunOutput run_converse(const ExperimentConfig& c) {
  auto rows = converse_sweep(c.params, c.lambda, c.bump, c.n_grid, c.placements, c.seed, c.strategy);
  ojson j = header_json(c);
  j["lambda"] = c.lambda;
  j["bump"] = c.bump;
  j["placements"] = c.placements;
  ojson arr = ojson::array();
  CsvTable t(c);
  for (const auto& r : rows) {
    SystemParams p = c.params;
    p.n = r.n;
    PowerBudget b = budget_single(p);
    arr.push_back({{"n", r.n},
                   {"p_a", r.p_a},
                   {"t", r.t},
                   {"p_fa", ci_json(r.p_fa)},
                   {"p_md", ci_json(r.p_md)},
                   {"p_fa_plus_p_md", ci_json(r.sum)}});
    t.row(p, 1.0, r.p_a, b.rate, b.covert_bits, "p_fa", r.p_fa.mean, r.p_fa.lo(), r.p_fa.hi(),
          c.placements);
    t.row(p, 1.0, r.p_a, b.rate, b.covert_bits, "p_md", r.p_md.mean, r.p_md.lo(), r.p_md.hi(),
          c.placements);
    t.row(p, 1.0, r.p_a, b.rate, b.covert_bits, "p_fa_plus_p_md", r.sum.mean, r.sum.lo(),
          r.sum.hi(), c.placements);
  }
  j["rows"] = arr;
  return {j.dump(), t.str()};
}

RunOutput run_sweep(const ExperimentConfig& c) {
  auto pts = throughput_sweep(c.params, c.n_w_or_lambda(), c.axis, c.grid, c.regime);
  ojson j = header_json(c);
  j["axis"] = axis_name(c.axis);
  ojson arr = ojson::array();
  CsvTable t(c);
  for (const auto& pt : pts) {
    SystemParams p = c.params;
    double nwl = c.n_w_or_lambda();
    if (c.axis == SweepAxis::N) p.n = std::llround(pt.x);
    if (c.axis == SweepAxis::M) p.m = pt.x;
    if (c.axis == SweepAxis::NW || c.axis == SweepAxis::LambdaN) nwl = pt.x;
    arr.push_back({{"x", pt.x},
                   {"covert_bits", pt.covert_bits},
                   {"r0", pt.r0},
                   {"p_a", pt.p_a},
                   {"saturated", pt.saturated}});
    const double rate = std::min(1.0, pt.r0);
    t.row(p, nwl, pt.p_a, rate, pt.covert_bits,
          pt.saturated ? "covert_bits_saturated" : "covert_bits", pt.covert_bits, pt.covert_bits,
          pt.covert_bits, 1);
  }
  j["points"] = arr;
  std::vector<double> fx, fy;
  unsaturated_points(pts, fx, fy);
  if (fx.size() >= 3) {
    ScalingFit f = fit_power_law(fx, fy);
    j["fit"] = {{"slope", f.slope},
                {"intercept", f.intercept},
                {"r_squared", f.r_squared},
                {"slope_ci95", f.slope_ci95},
                {"points", f.points}};
    t.row(c.params, c.n_w_or_lambda(), 0.0, 0.0, 0.0, "fit_slope_" + axis_name(c.axis), f.slope,
          f.slope - f.slope_ci95, f.slope + f.slope_ci95, static_cast<long long>(f.points));
    t.row(c.params, c.n_w_or_lambda(), 0.0, 0.0, 0.0, "fit_r_squared", f.r_squared, f.r_squared,
          f.r_squared, static_cast<long long>(f.points));
  } else {
    j["fit"] = nullptr;
  }
  return {j.dump(), t.str()};
}

RunOutput run_diagnose(const ExperimentConfig& c) {
  auto events = placement_event_probs(c.params, c.wardens, c.lambda, c.placements, c.seed);
  const bool fourth = c.params.gamma > 2.0;
  MomentReport m =
      empirical_noise_moment_bounds(c.params, c.lambda, c.radius, c.placements, c.seed, fourth);

  ojson j = header_json(c);
  j["lambda"] = c.lambda;
  ojson ev = ojson::array();
  CsvTable t(c);
  const double nwl = c.n_w_or_lambda();
  for (const auto& e : events) {
    ev.push_back({{"event", e.name},
                  {"frequency", e.frequency},
                  {"ci95", e.ci95},
                  {"closed_form", e.closed_form},
                  {"closed_form_is_lower_bound", e.one_sided},
                  {"consistent", e.consistent},
                  {"trials", e.trials}});
    t.row(c.params, nwl, 0.0, 0.0, 0.0, e.name, e.frequency, e.frequency - e.ci95,
          e.frequency + e.ci95, e.trials);
    t.row(c.params, nwl, 0.0, 0.0, 0.0, e.name + "_closed_form", e.closed_form, e.closed_form,
          e.closed_form, e.trials);
  }
  j["events"] = ev;
  ojson mom;
  mom["trials"] = m.trials;
  mom["inv_sigma_sq"] = {{"mean", m.inv_sigma_sq.mean},
                         {"ci95", m.inv_sigma_sq.ci95},
                         {"stated_bound", m.inv_sigma_sq.bound},
                         {"within_stated_bound", m.inv_sigma_sq.within_bound},
                         {"nearest_neighbour_closed_form", m.inv_sigma_sq_exact_bound}};
  t.row(c.params, nwl, 0.0, 0.0, 0.0, "inv_sigma_sq", m.inv_sigma_sq.mean,
        m.inv_sigma_sq.mean - m.inv_sigma_sq.ci95, m.inv_sigma_sq.mean + m.inv_sigma_sq.ci95,
        m.trials);
  t.row(c.params, nwl, 0.0, 0.0, 0.0, "inv_sigma_sq_stated_bound", m.inv_sigma_sq.bound,
        m.inv_sigma_sq.bound, m.inv_sigma_sq.bound, m.trials);
  if (fourth) {
    mom["sigma4_beyond_eta1"] = {{"mean", m.sigma4_conditional.mean},
                                 {"ci95", m.sigma4_conditional.ci95},
                                 {"bound", m.sigma4_conditional.bound},
                                 {"within_bound", m.sigma4_conditional.within_bound},
                                 {"eta1", m.eta1},
                                 {"rho", m.rho},
                                 {"r", c.radius}};
    t.row(c.params, nwl, 0.0, 0.0, 0.0, "sigma4_beyond_eta1", m.sigma4_conditional.mean,
          m.sigma4_conditional.mean - m.sigma4_conditional.ci95,
          m.sigma4_conditional.mean + m.sigma4_conditional.ci95, m.trials);
    t.row(c.params, nwl, 0.0, 0.0, 0.0, "sigma4_bound", m.sigma4_conditional.bound,
          m.sigma4_conditional.bound, m.sigma4_conditional.bound, m.trials);
  }
  j["moments"] = mom;
  return {j.dump(), t.str()};
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& c) {
  if (c.threads > 0) set_thread_count(c.threads);
  switch (c.command) {
    case Command::Budget: return run_budget(c);
    case Command::Detect: return run_detect(c);
    case Command::Fit: return run_fit(c);
    case Command::Simulate: return run_simulate(c);
    case Command::Converse: return run_converse(c);
    case Command::Sweep: return run_sweep(c);
    case Command::Diagnose: return run_diagnose(c);
  }
  return {};
}

}  // namespace covertgeom
