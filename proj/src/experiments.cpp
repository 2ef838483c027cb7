/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "covertgeom/experiments.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numbers>

#include "covertgeom/error.hpp"
#include "covertgeom/parallel.hpp"
#include "covertgeom/reliability.hpp"

namespace covertgeom {

MeanCI mean_ci(const std::vector<double>& values) {
  MeanCI out;
  out.count = static_cast<long long>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double k = static_cast<double>(values.size());
  out.mean = sum / k;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.ci95 = 1.96 * std::sqrt(ss / (k - 1.0) / k);
  }
  return out;
}

namespace {

double warden_parameter(const WardenModel& w) {
  if (const auto* u = std::get_if<UniformSquare>(&w)) return static_cast<double>(u->n_w);
  return std::get<PoissonPlane>(w).lambda_n;
}

}  // namespace

CovertPeResult estimate_covert_pe(const SystemParams& params, const WardenModel& wardens,
                                  const JammerStrategy& strategy, const BudgetSource& source,
                                  const CovertPeOptions& opts) {
  params.validate();
  require(opts.placements >= 1000, "placements", "placement average needs at least 1000 layouts");
  require(opts.inner_trials == 0 || opts.inner_trials >= 1000, "inner_trials",
          "inner Monte Carlo needs 0 (exact) or at least 1000 trials");
  require(source.scale >= 0.0 && std::isfinite(source.scale), "scale",
          "power scale must be nonnegative");
  PlacementModel model{wardens, params.m, opts.r_pad};
  validate(model);

  CovertPeResult out;
  if (source.explicit_p_a) {
    require(*source.explicit_p_a >= 0.0 && std::isfinite(*source.explicit_p_a), "p_a",
            "explicit power must be nonnegative");
    out.p_a = *source.explicit_p_a * source.scale;
    out.budget = budget_single(params);
    out.budget.p_a = out.p_a;
  } else {
    out.budget = compute_budget(source.regime, params, warden_parameter(wardens));
    out.p_a = out.budget.p_a * source.scale;
  }
  const double p_a = out.p_a;
  const double rate = out.budget.rate;

  const auto count = static_cast<std::size_t>(opts.placements);
  std::vector<TrialRecord> recs(count);
  parallel_for(count, [&](std::size_t i) {
    TrialRecord& r = recs[i];
    r.seed = substream_seed(opts.seed, tag::placement, i);
    Rng rng(r.seed);
    NodeLayout layout = sample_layout(model, rng);
    auto active = select_jammers(layout, strategy, rng);
    NoiseProfile prof = noise_profile(layout, active, params);
    r.layout_digest = layout_digest(layout);
    r.p_a = p_a;
    r.d_aw = prof.d_aw;
    r.sigma_w_sq = prof.sigma_w_sq;
    r.sigma_b_sq = prof.sigma_b_sq;
    r.bob_bound = (p_a > 0.0 && rate > 0.0)
                      ? bob_error_upper(params.n, rate, p_a, prof.sigma_b_sq)
                      : 1.0;
    if (layout.wardens.empty() || p_a == 0.0) {
      r.p_e = 0.5;
      r.pe_lower = 0.5;
      return;
    }
    HypothesisPair hp = make_hypotheses(p_a, prof.d_aw, prof.sigma_w_sq, params.gamma);
    if (hp.sigma0_sq.size() == 1 || opts.inner_trials == 0)
      r.p_e = lrt_exact_multi(params.n, hp).p_e;
    else
      r.p_e = lrt_multi_mc(params.n, hp, opts.inner_trials,
                           substream_seed(opts.seed, tag::inner_mc, i))
                  .estimate.p_e;
    r.pe_lower = kl_budget_multi(params.n, p_a, prof.d_aw, prof.sigma_w_sq, params.gamma).pe_lower;
  });

  std::vector<double> pe(count), lower(count);
  for (std::size_t i = 0; i < count; ++i) {
    pe[i] = recs[i].p_e;
    lower[i] = recs[i].pe_lower;
  }
  out.p_e = mean_ci(pe);
  out.pe_lower = mean_ci(lower);
  if (opts.keep_records) out.records = std::move(recs);
  return out;
}

std::vector<ConverseRow> converse_sweep(const SystemParams& params, double lambda, double bump,
                                        const std::vector<long long>& n_grid,
                                        long long placements, std::uint64_t seed,
                                        const JammerStrategy& strategy) {
  params.validate();
  require(bump >= 0.0 && std::isfinite(bump), "bump", "power exponent bump must be >= 0");
  require(!n_grid.empty(), "n_grid", "n grid must be nonempty");
  require(placements >= 1, "placements", "placements must be >= 1");
  for (long long n : n_grid) require(n >= 1, "n_grid", "every n must be >= 1");

  const auto count = static_cast<std::size_t>(placements);
  std::vector<double> sig(count), dist(count);
  PlacementModel model{UniformSquare{1}, params.m, 0.0};
  parallel_for(count, [&](std::size_t i) {
    Rng rng = make_stream(seed, tag::placement, i);
    NodeLayout layout = sample_layout(model, rng);
    auto active = select_jammers(layout, strategy, rng);
    NoiseProfile prof = noise_profile(layout, active, params);
    sig[i] = prof.sigma_w_sq[0];
    dist[i] = prof.d_aw[0];
  });

  std::vector<ConverseRow> rows;
  for (long long n : n_grid) {
    SystemParams p = params;
    p.n = n;
    ConverseRow row;
    row.n = n;
    row.p_a = budget_single(p).p_a * std::pow(static_cast<double>(n), bump);
    row.t = converse_params(p, lambda).t;
    std::vector<double> fa(count), md(count), sum(count);
    parallel_for(count, [&](std::size_t i) {
      double s1 = sig[i] + row.p_a / std::pow(dist[i], params.gamma);
      ErrorPair e = radiometer_exact(n, sig[i], s1, row.t);
      fa[i] = e.p_fa;
      md[i] = e.p_md;
      sum[i] = e.p_fa + e.p_md;
    });
    row.p_fa = mean_ci(fa);
    row.p_md = mean_ci(md);
    row.sum = mean_ci(sum);
    rows.push_back(row);
  }
  return rows;
}

std::string axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::N: return "n";
    case SweepAxis::M: return "m";
    case SweepAxis::NW: return "n_w";
    case SweepAxis::LambdaN: return "lambda_n";
  }
  return "n";
}

SweepAxis parse_axis(const std::string& s) {
  if (s == "n") return SweepAxis::N;
  if (s == "m") return SweepAxis::M;
  if (s == "n_w" || s == "nw") return SweepAxis::NW;
  if (s == "lambda_n" || s == "lambda") return SweepAxis::LambdaN;
  fail(ErrorKind::InvalidArgument, "axis", "axis must be one of n, m, n_w, lambda_n");
}

std::vector<SweepPoint> throughput_sweep(const SystemParams& base, double n_w_or_lambda,
                                         SweepAxis axis, const std::vector<double>& grid,
                                         Regime regime) {
  require(!grid.empty(), "grid", "sweep grid must be nonempty");
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (double x : grid) {
    require(x > 0.0 && std::isfinite(x), "grid", "grid values must be positive");
    SystemParams p = base;
    double nwl = n_w_or_lambda;
    switch (axis) {
      case SweepAxis::N: p.n = std::llround(x); break;
      case SweepAxis::M: p.m = x; break;
      case SweepAxis::NW:
      case SweepAxis::LambdaN: nwl = x; break;
    }
    PowerBudget b = compute_budget(regime, p, nwl);
    out.push_back({x, b.covert_bits, b.r0, b.p_a, b.r0 >= kSaturationR0});
  }
  return out;
}

void unsaturated_points(const std::vector<SweepPoint>& pts, std::vector<double>& x,
                        std::vector<double>& y) {
  x.clear();
  y.clear();
  for (const auto& p : pts)
    if (!p.saturated) {
      x.push_back(p.x);
      y.push_back(p.covert_bits);
    }
}

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), "points", "x and y lengths differ");
  require(x.size() >= 3, "points", "power-law fit needs at least 3 points");
  const std::size_t k = x.size();
  std::vector<double> lx(k), ly(k);
  for (std::size_t i = 0; i < k; ++i) {
    require(x[i] > 0.0 && std::isfinite(x[i]) && y[i] > 0.0 && std::isfinite(y[i]), "points",
            "power-law fit needs positive finite values");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  require(sxx > 0.0, "points", "x values must not all coincide");
  ScalingFit f;
  f.points = k;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double r = ly[i] - (f.intercept + f.slope * lx[i]);
    ssr += r * r;
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  if (k > 2) {
    boost::math::students_t dist(static_cast<double>(k - 2));
    double tq = boost::math::quantile(dist, 0.975);
    f.slope_ci95 = tq * std::sqrt(ssr / static_cast<double>(k - 2) / sxx);
  }
  return f;
}

namespace {

struct EventSpec {
  std::string name;
  double closed_form;
  bool one_sided;
};

}  // namespace

std::vector<EventRow> placement_event_probs(const SystemParams& params, const WardenModel& wardens,
                                            double lambda, long long placements,
                                            std::uint64_t seed) {
  params.validate();
  require(lambda > 0.0 && lambda < 1.0, "lambda", "lambda must lie in (0, 1)");
  require(placements >= 1, "placements", "placements must be >= 1");
  constexpr double pi = std::numbers::pi;
  const double eta1 = std::sqrt(std::log(4.0 / (4.0 - lambda)) / (params.m * pi));
  const double phi = phi_radius(params.m, params.zeta);

  const bool uniform = std::holds_alternative<UniformSquare>(wardens);
  double r_alice = 0.0, r_bob = 0.0;
  std::vector<EventSpec> specs;
  PlacementModel model{wardens, params.m, 0.0};
  validate(model);
  if (uniform) {
    const double nw = static_cast<double>(std::get<UniformSquare>(wardens).n_w);
    r_alice = std::sqrt(params.epsilon / (4.0 * nw));
    r_bob = std::sqrt(params.zeta / (4.0 * pi * nw));
    specs.push_back({"A_alice_halfdisk_empty", std::pow(1.0 - pi * r_alice * r_alice / 2.0, nw), false});
    specs.push_back({"B_bob_halfdisk_empty", std::pow(1.0 - pi * r_bob * r_bob / 2.0, nw), false});
  } else {
    const double ln = std::get<PoissonPlane>(wardens).lambda_n;
    r_alice = std::sqrt(std::log(2.0 / (2.0 - params.epsilon)) / (pi * ln));
    r_bob = std::sqrt(std::log(1.0 / (1.0 - params.zeta / 2.0)) / (4.0 * pi * ln));
    specs.push_back({"A_prime_alice_disk_empty", std::exp(-ln * pi * r_alice * r_alice), false});
    specs.push_back({"B_prime_bob_disk_empty", std::exp(-ln * pi * r_bob * r_bob), false});
    // Both disks must lie inside the warden region.
    model.r_pad = std::max({default_padding(params.m), r_alice, r_bob});
  }
  specs.push_back({"warden_nn_beyond_eta1", std::exp(-params.m * pi * eta1 * eta1), false});
  specs.push_back({"bob_nn_beyond_phi", std::exp(-params.m * pi * phi * phi), false});
  specs.push_back({"bob_jammers_beyond_phi", std::exp(-params.m * pi * phi * phi), true});

  const auto count = static_cast<std::size_t>(placements);
  const std::size_t ne = specs.size();
  // -1 marks "not applicable" (no warden inside the square).
  std::vector<signed char> hit(count * ne, 0);
  parallel_for(count, [&](std::size_t i) {
    Rng rng = make_stream(seed, tag::placement, i);
    NodeLayout layout = sample_layout(model, rng);
    signed char* h = &hit[i * ne];
    bool a = true, b = true;
    for (const auto& w : layout.wardens) {
      if (std::hypot(w.x - layout.alice.x, w.y - layout.alice.y) <= r_alice) a = false;
      if (std::hypot(w.x - layout.bob.x, w.y - layout.bob.y) <= r_bob) b = false;
    }
    h[0] = a;
    h[1] = b;
    const Point2D* first = nullptr;
    for (const auto& w : layout.wardens)
      if (kWardenSquare.contains(w)) {
        first = &w;
        break;
      }
    if (layout.friendly.empty()) {
      h[2] = first ? 1 : -1;
      h[3] = 1;
      h[4] = 1;
      return;
    }
    h[2] = first ? static_cast<signed char>(nearest(*first, layout.friendly).distance > eta1) : -1;
    h[3] = nearest(layout.bob, layout.friendly).distance > phi;
    bool far = true;
    for (std::size_t j : select_jammers(layout, ClosestPerWarden{}, rng))
      if (distance(layout.bob, layout.friendly[j]) <= phi) far = false;
    h[4] = far;
  });

  std::vector<EventRow> rows;
  for (std::size_t e = 0; e < ne; ++e) {
    long long n = 0, k = 0;
    for (std::size_t i = 0; i < count; ++i) {
      signed char v = hit[i * ne + e];
      if (v < 0) continue;
      ++n;
      k += v;
    }
    EventRow r;
    r.name = specs[e].name;
    r.closed_form = specs[e].closed_form;
    r.one_sided = specs[e].one_sided;
    r.trials = n;
    if (n > 0) {
      const double nn = static_cast<double>(n);
      r.frequency = static_cast<double>(k) / nn;
      r.ci95 = 1.96 * std::sqrt(r.frequency * (1.0 - r.frequency) / nn);
      const double sd = std::sqrt(r.closed_form * (1.0 - r.closed_form) / nn);
      r.consistent = r.one_sided ? r.frequency >= r.closed_form - 3.0 * sd
                                 : std::fabs(r.frequency - r.closed_form) <= 3.0 * sd;
    }
    rows.push_back(r);
  }
  return rows;
}

double nn_distance_ks(double m, long long samples, std::uint64_t seed) {
  require(m > 0.0, "m", "density must be positive");
  require(samples >= 1, "samples", "samples must be >= 1");
  const auto count = static_cast<std::size_t>(samples);
  std::vector<double> d(count);
  PlacementModel model{UniformSquare{1}, m, 0.0};
  parallel_for(count, [&](std::size_t i) {
    Rng rng = make_stream(seed, tag::placement, i);
    NodeLayout layout = sample_layout(model, rng);
    d[i] = layout.friendly.empty() ? std::numeric_limits<double>::infinity()
                                   : nearest(layout.wardens[0], layout.friendly).distance;
  });
  std::sort(d.begin(), d.end());
  const double nn = static_cast<double>(count);
  double ks = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    double f = std::isfinite(d[i]) ? nn_distance_cdf(m, d[i]) : 1.0;
    ks = std::max({ks, f - static_cast<double>(i) / nn, static_cast<double>(i + 1) / nn - f});
  }
  return ks;
}

}  // namespace covertgeom
