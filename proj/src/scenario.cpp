/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "covertgeom/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "covertgeom/budget.hpp"
#include "covertgeom/error.hpp"
#include "covertgeom/experiments.hpp"
#include "covertgeom/parallel.hpp"
#include "json.hpp"

namespace covertgeom {

namespace {
bool positive(double v) { return v > 0.0 && std::isfinite(v); }
}  // namespace

void SystemParams::validate() const {
  require(n >= 1, "n", "blocklength n must be >= 1");
  require(positive(m), "m", "friendly density m must be positive");
  require(std::isfinite(gamma) && gamma >= 2.0, "gamma", "path-loss exponent must be >= 2");
  require(positive(p_f), "p_f", "jammer power P_f must be positive");
  require(positive(sigma_w0_sq), "sigma_w0_sq", "warden noise floor must be positive");
  require(positive(sigma_b0_sq), "sigma_b0_sq", "Bob noise floor must be positive");
  require(epsilon > 0.0 && epsilon < 0.5, "epsilon", "epsilon must lie in (0, 1/2)");
  require(zeta > 0.0 && zeta < 1.0, "zeta", "zeta must lie in (0, 1)");
}

std::string strategy_name(const JammerStrategy& s) {
  switch (s.index()) {
    case 0: return "closest";
    case 1: return "all_on";
    case 2: return "probabilistic";
    default: return "explicit";
  }
}

std::vector<std::size_t> select_jammers(const NodeLayout& layout, const JammerStrategy& strategy,
                                        Rng& rng) {
  std::vector<std::size_t> active;
  const std::size_t nf = layout.friendly.size();
  if (std::holds_alternative<ClosestPerWarden>(strategy)) {
    if (layout.wardens.empty()) return active;
    if (nf == 0)
      fail(ErrorKind::InvalidArgument, "friendly", "closest-jammer strategy needs friendly nodes");
    for (const auto& w : layout.wardens) active.push_back(nearest(w, layout.friendly).index);
  } else if (std::holds_alternative<AllOn>(strategy)) {
    active.resize(nf);
    for (std::size_t i = 0; i < nf; ++i) active[i] = i;
  } else if (const auto* pr = std::get_if<ProbabilisticOn>(&strategy)) {
    require(pr->p >= 0.0 && pr->p <= 1.0, "p", "activation probability must lie in [0, 1]");
    require(pr->iota >= 0.0 && std::isfinite(pr->iota), "iota", "exclusion radius must be >= 0");
    std::bernoulli_distribution coin(pr->p);
    for (std::size_t i = 0; i < nf; ++i) {
      if (std::hypot(layout.friendly[i].x - layout.bob.x, layout.friendly[i].y - layout.bob.y) <=
          pr->iota)
        continue;
      if (coin(rng)) active.push_back(i);
    }
  } else {
    const auto& ex = std::get<ExplicitSet>(strategy);
    for (std::size_t i : ex.indices) {
      require(i < nf, "indices", "explicit jammer index out of range");
      active.push_back(i);
    }
  }
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  return active;
}

NoiseProfile noise_profile(const NodeLayout& layout, const std::vector<std::size_t>& active,
                           const SystemParams& params) {
  NoiseProfile out;
  out.active = active;
  for (std::size_t j : active)
    require(j < layout.friendly.size(), "active", "active index out of range");

  const double g = params.gamma;
  out.sigma_w_sq.reserve(layout.wardens.size());
  out.d_aw.reserve(layout.wardens.size());
  for (const auto& w : layout.wardens) {
    double s = params.sigma_w0_sq;
    for (std::size_t j : active) s += params.p_f / std::pow(distance(w, layout.friendly[j]), g);
    out.sigma_w_sq.push_back(s);
    out.d_aw.push_back(distance(layout.alice, w));
  }
  double sb = params.sigma_b0_sq;
  out.d_bf.reserve(active.size());
  for (std::size_t j : active) {
    double d = distance(layout.bob, layout.friendly[j]);
    out.d_bf.push_back(d);
    sb += params.p_f / std::pow(d, g);
  }
  out.sigma_b_sq = sb;

  if (!layout.friendly.empty() && active.size() == layout.friendly.size()) {
    out.truncation_residual =
        g > 2.0 ? 2.0 * std::numbers::pi * params.m * params.p_f * std::pow(layout.r_pad, 2.0 - g) /
                      (g - 2.0)
                : std::numeric_limits<double>::infinity();
  }
  return out;
}

std::string noise_profile_to_json(const NoiseProfile& p) {
  nlohmann::json j;
  j["sigma_w_sq"] = p.sigma_w_sq;
  j["sigma_b_sq"] = p.sigma_b_sq;
  j["active"] = p.active;
  j["d_aw"] = p.d_aw;
  j["d_bf"] = p.d_bf;
  if (std::isfinite(p.truncation_residual))
    j["truncation_residual"] = p.truncation_residual;
  else
    j["truncation_residual"] = "inf";
  return j.dump();
}

double inv_noise_moment_bound(double gamma, double m, double p_f) {
  return std::tgamma(gamma / 2.0 + 1.0) /
         (2.0 * p_f * std::pow(std::numbers::pi, gamma / 2.0 + 1.0) * std::pow(m, gamma / 2.0));
}

double inv_noise_moment_closed_form(double gamma, double m, double p_f) {
  return std::tgamma(gamma / 2.0 + 1.0) / (p_f * std::pow(m * std::numbers::pi, gamma / 2.0));
}

MomentReport empirical_noise_moment_bounds(const SystemParams& params, double lambda, double r,
                                           long long trials, std::uint64_t seed,
                                           bool fourth_moment) {
  params.validate();
  if (fourth_moment && !(params.gamma > 2.0))
    fail(ErrorKind::Unsupported, "gamma", "fourth-moment bound needs gamma > 2");
  require(trials >= 1000, "trials", "moment estimates need at least 1000 trials");
  require(lambda > 0.0 && lambda < 1.0, "lambda", "lambda must lie in (0, 1)");

  MomentReport rep;
  rep.trials = trials;
  rep.eta1 = std::sqrt(std::log(4.0 / (4.0 - lambda)) / (params.m * std::numbers::pi));
  if (fourth_moment) {
    rep.rho = converse_rho(params.gamma, params.p_f, lambda);
    require(r > rep.eta1 && std::isfinite(r), "r", "radius must exceed eta1");
  }

  const auto n = static_cast<std::size_t>(trials);
  std::vector<double> inv(n), fourth(n);
  PlacementModel model{UniformSquare{1}, params.m, 0.0};
  parallel_for(n, [&](std::size_t i) {
    Rng rng = make_stream(seed, tag::moments, i);
    NodeLayout layout = sample_layout(model, rng);
    auto active = select_jammers(layout, ClosestPerWarden{}, rng);
    inv[i] = 1.0 / noise_profile(layout, active, params).sigma_w_sq[0];

    if (!fourth_moment) return;
    auto ring = sample_ppp_annulus({0.0, 0.0}, rep.eta1, r, params.m, rng);
    double s = params.sigma_w0_sq;
    for (const auto& p : ring)
      s += params.p_f / std::pow(std::max(std::hypot(p.x, p.y), kMinDistance), params.gamma);
    fourth[i] = s * s;
  });

  auto fill = [](MomentEstimate& e, const std::vector<double>& v, double bound) {
    MeanCI m = mean_ci(v);
    e.mean = m.mean;
    e.ci95 = m.ci95;
    e.bound = bound;
    e.within_bound = m.mean - 3.0 * (m.ci95 / 1.96) <= bound;
  };
  fill(rep.inv_sigma_sq, inv, inv_noise_moment_bound(params.gamma, params.m, params.p_f));
  rep.inv_sigma_sq_exact_bound = inv_noise_moment_closed_form(params.gamma, params.m, params.p_f);
  if (fourth_moment)
    fill(rep.sigma4_conditional, fourth, rep.rho * rep.rho * std::pow(params.m, params.gamma));
  return rep;
}

}  // namespace covertgeom
