/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <cmath>
#include <random>

#include "covertgeom/error.hpp"
#include "covertgeom/experiments.hpp"
#include "covertgeom/parallel.hpp"
#include "doctest.h"

using namespace covertgeom;

TEST_CASE("mean and confidence interval") {
  auto m = mean_ci({1.0, 2.0, 3.0});
  CHECK(m.mean == doctest::Approx(2.0));
  CHECK(m.ci95 == doctest::Approx(1.96 / std::sqrt(3.0)));
  CHECK(m.count == 3);
  CHECK(mean_ci({4.0}).ci95 == 0.0);
}

TEST_CASE("power-law fit") {
  std::vector<double> x{1, 2, 4, 8, 16, 32}, y;
  for (double v : x) y.push_back(7.0 * std::sqrt(v));
  auto f = fit_power_law(x, y);
  CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.points == 6);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> xs, ys;
  for (int i = 0; i < 40; ++i) {
    double v = std::pow(10.0, 0.1 * i);
    xs.push_back(v);
    ys.push_back(std::pow(v, -3.0) * (1.0 + noise(rng)));
  }
  auto g = fit_power_law(xs, ys);
  CHECK(std::fabs(g.slope + 3.0) <= g.slope_ci95);
  CHECK(g.slope_ci95 > 0.0);
  CHECK(g.slope_ci95 < 0.01);

  CHECK_THROWS_AS(fit_power_law({1, 2}, {1, 2}), Error);
  CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, -2, 3}), Error);
  CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, 2}), Error);
  CHECK_THROWS_AS(fit_power_law({2, 2, 2}, {1, 2, 3}), Error);
}

TEST_CASE("zero power leaves the warden guessing") {
  SystemParams p;
  BudgetSource src;
  src.explicit_p_a = 0.0;
  CovertPeOptions o;
  o.placements = 1000;
  auto r = estimate_covert_pe(p, UniformSquare{1}, ClosestPerWarden{}, src, o);
  CHECK(r.p_e.mean == 0.5);
  auto r3 = estimate_covert_pe(p, UniformSquare{3}, ClosestPerWarden{}, src, o);
  CHECK(r3.p_e.mean == 0.5);
}

TEST_CASE("overdriving the budget exposes Alice") {
  SystemParams p;
  CovertPeOptions o;
  o.placements = 1000;
  o.seed = 4;
  BudgetSource on;
  auto base = estimate_covert_pe(p, UniformSquare{1}, ClosestPerWarden{}, on, o);
  BudgetSource hot;
  hot.scale = 100.0;
  auto loud = estimate_covert_pe(p, UniformSquare{1}, ClosestPerWarden{}, hot, o);
  CHECK(loud.p_a == doctest::Approx(100.0 * base.p_a));
  CHECK(loud.p_e.hi() < 0.5 - p.epsilon);
  CHECK(loud.p_e.mean < base.p_e.mean);
  CHECK(base.p_e.mean >= base.pe_lower.mean);
}

TEST_CASE("placement averages are reproducible across worker counts") {
  SystemParams p;
  p.m = 500.0;
  CovertPeOptions o;
  o.placements = 1000;
  o.inner_trials = 1000;
  o.seed = 9;
  o.keep_records = true;
  BudgetSource src;
  src.regime = Regime::MultiWardenGammaGt2;
  src.scale = 50.0;
  set_thread_count(1);
  auto a = estimate_covert_pe(p, UniformSquare{4}, ClosestPerWarden{}, src, o);
  set_thread_count(4);
  auto b = estimate_covert_pe(p, UniformSquare{4}, ClosestPerWarden{}, src, o);
  set_thread_count(0);
  CHECK(a.p_e.mean == b.p_e.mean);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].layout_digest == b.records[i].layout_digest);
    CHECK(a.records[i].p_e == b.records[i].p_e);
  }
  CHECK(a.records[0].sigma_w_sq.size() == 4);
}

TEST_CASE("on-budget converse keeps missed detections high") {
  SystemParams p;
  auto rows = converse_sweep(p, 0.2, 0.0, {1000, 10000, 100000}, 200, 3);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.p_md.mean > 0.5);
    CHECK(r.sum.mean == doctest::Approx(r.p_fa.mean + r.p_md.mean));
    CHECK(r.p_fa.mean <= 0.1 + 1e-12);
  }
  CHECK_THROWS_AS(converse_sweep(p, 1.5, 0.0, {1000}, 10, 3), Error);
}

TEST_CASE("throughput sweeps follow the budget exponents") {
  SystemParams p;
  std::vector<double> grid;
  for (int i = 0; i < 9; ++i) grid.push_back(std::pow(10.0, 3.0 + 0.5 * i));
  auto pts = throughput_sweep(p, 1.0, SweepAxis::N, grid, Regime::SingleWarden);
  std::vector<double> x, y;
  unsaturated_points(pts, x, y);
  CHECK(x.size() == grid.size());
  auto f = fit_power_law(x, y);
  CHECK(f.slope == doctest::Approx(0.5).epsilon(0.04));

  SystemParams q;
  q.gamma = 3.0;
  std::vector<double> nw{2, 4, 8, 16, 32, 64};
  auto mp = throughput_sweep(q, 1.0, SweepAxis::NW, nw, Regime::MultiWardenGammaGt2);
  unsaturated_points(mp, x, y);
  auto g = fit_power_law(x, y);
  CHECK(g.slope == doctest::Approx(-3.0).epsilon(0.03));

  SystemParams s;
  s.n = 100;
  s.m = 1e6;
  auto sat = throughput_sweep(s, 1.0, SweepAxis::NW, {1.0, 1e3}, Regime::MultiWardenGammaGt2);
  CHECK(sat[0].saturated);
  CHECK(sat[0].covert_bits == doctest::Approx(100.0));
  CHECK_FALSE(sat[1].saturated);
  unsaturated_points(sat, x, y);
  CHECK(x.size() == 1);
  CHECK(parse_axis(axis_name(SweepAxis::LambdaN)) == SweepAxis::LambdaN);
}

TEST_CASE("placement event frequencies match their closed forms") {
  SystemParams p;
  auto rows = placement_event_probs(p, UniformSquare{100}, 0.2, 4000, 5);
  bool saw_eta = false;
  for (const auto& r : rows) {
    CAPTURE(r.name);
    CHECK(r.consistent);
    CHECK(r.trials == 4000);
    if (r.name == "warden_nn_beyond_eta1") {
      saw_eta = true;
      CHECK(r.closed_form == doctest::Approx(1.0 - 0.2 / 4.0));
    }
  }
  CHECK(saw_eta);
  auto prow = placement_event_probs(p, PoissonPlane{100.0}, 0.2, 4000, 6);
  for (const auto& r : prow) {
    CAPTURE(r.name);
    CHECK(r.consistent);
  }
  CHECK(nn_distance_ks(10.0, 10000, 1) < 0.02);
}
