/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <cmath>
#include <numbers>

#include "covertgeom/error.hpp"
#include "covertgeom/scenario.hpp"
#include "doctest.h"

using namespace covertgeom;

namespace {

NodeLayout fixed_layout() {
  NodeLayout l;
  l.wardens = {{0.5, 0.0}, {0.2, 0.3}};
  l.friendly = {{0.6, 0.0}, {0.2, 0.1}, {1.5, 0.0}, {0.9, 0.0}};
  l.r_pad = 0.5;
  return l;
}

}  // namespace

TEST_CASE("system parameter validation names the field") {
  SystemParams p;
  CHECK_NOTHROW(p.validate());
  auto field_of = [](SystemParams q) {
    try {
      q.validate();
    } catch (const Error& e) {
      return e.field();
    }
    return std::string();
  };
  SystemParams q = p;
  q.gamma = 1.5;
  CHECK(field_of(q) == "gamma");
  q = p;
  q.epsilon = 0.5;
  CHECK(field_of(q) == "epsilon");
  q = p;
  q.zeta = 1.0;
  CHECK(field_of(q) == "zeta");
  q = p;
  q.n = 0;
  CHECK(field_of(q) == "n");
  q = p;
  q.sigma_b0_sq = 0.0;
  CHECK(field_of(q) == "sigma_b0_sq");
}

TEST_CASE("jammer selection strategies") {
  NodeLayout l = fixed_layout();
  Rng rng(1);
  auto closest = select_jammers(l, ClosestPerWarden{}, rng);
  CHECK(closest == std::vector<std::size_t>{0, 1});
  CHECK(select_jammers(l, AllOn{}, rng) == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(select_jammers(l, ProbabilisticOn{1.0, 0.0}, rng) == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(select_jammers(l, ProbabilisticOn{0.0, 0.0}, rng).empty());
  // iota excludes nodes within 0.15 of Bob at (1, 0).
  CHECK(select_jammers(l, ProbabilisticOn{1.0, 0.15}, rng) == std::vector<std::size_t>{0, 1, 2});
  CHECK(select_jammers(l, ExplicitSet{{3, 1, 3}}, rng) == std::vector<std::size_t>{1, 3});
  CHECK_THROWS_AS(select_jammers(l, ExplicitSet{{4}}, rng), Error);
  CHECK_THROWS_AS(select_jammers(l, ProbabilisticOn{1.5, 0.0}, rng), Error);

  NodeLayout shared = l;
  shared.wardens = {{0.55, 0.0}, {0.65, 0.0}};
  CHECK(select_jammers(shared, ClosestPerWarden{}, rng) == std::vector<std::size_t>{0});

  NodeLayout empty = l;
  empty.friendly.clear();
  CHECK_THROWS_AS(select_jammers(empty, ClosestPerWarden{}, rng), Error);
}

TEST_CASE("probabilistic selection activates about p of the nodes") {
  NodeLayout l;
  for (int i = 0; i < 1000; ++i) l.friendly.push_back({0.001 * i, 0.0});
  Rng rng(9);
  double total = 0.0;
  for (int t = 0; t < 200; ++t) total += static_cast<double>(select_jammers(l, ProbabilisticOn{0.3, 0.0}, rng).size());
  double mean = total / 200.0;
  CHECK(std::fabs(mean - 300.0) < 4.0 * std::sqrt(1000 * 0.3 * 0.7 / 200.0));
}

TEST_CASE("noise profile on a fixed layout") {
  NodeLayout l = fixed_layout();
  SystemParams p;
  p.gamma = 2.0;
  p.p_f = 1.0;
  auto prof = noise_profile(l, {0}, p);
  CHECK(prof.sigma_w_sq[0] == doctest::Approx(1.0 + 1.0 / 0.01));
  CHECK(prof.sigma_b_sq == doctest::Approx(1.0 + 1.0 / 0.16));
  CHECK(prof.d_aw[0] == doctest::Approx(0.5));
  CHECK(prof.d_bf[0] == doctest::Approx(0.4));
  CHECK(prof.truncation_residual == 0.0);

  auto none = noise_profile(l, {}, p);
  CHECK(none.sigma_w_sq[0] == p.sigma_w0_sq);
  CHECK(none.sigma_b_sq == p.sigma_b0_sq);

  auto all2 = noise_profile(l, {0, 1, 2, 3}, p);
  CHECK(std::isinf(all2.truncation_residual));
  p.gamma = 3.0;
  auto all3 = noise_profile(l, {0, 1, 2, 3}, p);
  CHECK(all3.truncation_residual == doctest::Approx(2.0 * std::numbers::pi * p.m / 0.5));
  CHECK_THROWS_AS(noise_profile(l, {9}, p), Error);
}

TEST_CASE("noise profile matches re-summation and grows with jammers") {
  Rng rng(123);
  SystemParams p;
  PlacementModel model{UniformSquare{3}, 30.0, 0.0};
  for (int t = 0; t < 300; ++t) {
    NodeLayout l = sample_layout(model, rng);
    auto act = select_jammers(l, ProbabilisticOn{0.5, 0.0}, rng);
    auto prof = noise_profile(l, act, p);
    for (std::size_t k = 0; k < l.wardens.size(); ++k) {
      long double s = p.sigma_w0_sq;
      for (std::size_t j : act) {
        long double dx = l.wardens[k].x - l.friendly[j].x, dy = l.wardens[k].y - l.friendly[j].y;
        s += p.p_f / std::pow(std::sqrt(dx * dx + dy * dy), static_cast<long double>(p.gamma));
      }
      CHECK(std::fabs(prof.sigma_w_sq[k] - static_cast<double>(s)) <= 1e-12 * static_cast<double>(s));
    }
    if (l.friendly.empty()) continue;
    std::vector<std::size_t> more = act;
    more.push_back(l.friendly.size() - 1);
    std::sort(more.begin(), more.end());
    more.erase(std::unique(more.begin(), more.end()), more.end());
    auto bigger = noise_profile(l, more, p);
    for (std::size_t k = 0; k < l.wardens.size(); ++k) CHECK(bigger.sigma_w_sq[k] >= prof.sigma_w_sq[k]);
    CHECK(bigger.sigma_b_sq >= prof.sigma_b_sq);
  }
}

TEST_CASE("inverse noise moment closed forms") {
  CHECK(inv_noise_moment_closed_form(3.0, 200.0, 1.0) ==
        doctest::Approx(std::tgamma(2.5) / std::pow(200.0 * std::numbers::pi, 1.5)));
  for (double g : {2.0, 3.0, 4.0})
    CHECK(inv_noise_moment_closed_form(g, 100.0, 2.0) / inv_noise_moment_bound(g, 100.0, 2.0) ==
          doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("empirical inverse noise moment sits at or below the d^gamma closed form") {
  // 1/(s0 + P/d^g) <= d^g / P, and E[d^g] is the closed form.
  for (double m : {50.0, 100.0, 200.0})
    for (double g : {2.0, 3.0, 4.0}) {
      SystemParams p;
      p.m = m;
      p.gamma = g;
      auto rep = empirical_noise_moment_bounds(p, 0.1, 0.25, 10000, 5, false);
      CAPTURE(m);
      CAPTURE(g);
      CHECK(rep.inv_sigma_sq.mean - 3.0 * rep.inv_sigma_sq.ci95 / 1.96 <= rep.inv_sigma_sq_exact_bound);
      CHECK(rep.inv_sigma_sq.mean > 0.5 * rep.inv_sigma_sq_exact_bound);
    }
}

TEST_CASE("inverse noise moment shrinks as jammer power grows") {
  SystemParams p;
  double prev = 1e300;
  for (double pf : {1.0, 1e2, 1e4, 1e6}) {
    p.p_f = pf;
    auto rep = empirical_noise_moment_bounds(p, 0.1, 0.25, 2000, 8, false);
    CHECK(rep.inv_sigma_sq.mean < prev);
    prev = rep.inv_sigma_sq.mean;
  }
  CHECK(prev < 1e-9);
}

TEST_CASE("moment estimator argument checks") {
  SystemParams p;
  p.gamma = 2.0;
  CHECK_THROWS_AS(empirical_noise_moment_bounds(p, 0.1, 0.25, 2000, 1), Error);
  p.gamma = 3.0;
  CHECK_THROWS_AS(empirical_noise_moment_bounds(p, 0.1, 0.25, 10, 1), Error);
  CHECK_THROWS_AS(empirical_noise_moment_bounds(p, 1.5, 0.25, 2000, 1), Error);
  CHECK_THROWS_AS(empirical_noise_moment_bounds(p, 0.1, 1e-6, 2000, 1), Error);
}
