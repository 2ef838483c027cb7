/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "covertgeom/geometry.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

#include "covertgeom/error.hpp"
#include "json.hpp"

namespace covertgeom {

double distance(const Point2D& a, const Point2D& b) {
  return std::max(std::hypot(a.x - b.x, a.y - b.y), kMinDistance);
}

double default_padding(double m) { return std::sqrt(std::log(1e12) / (m * std::numbers::pi)); }

void validate(const PlacementModel& model) {
  require(model.m > 0.0 && std::isfinite(model.m), "m", "friendly density must be positive");
  require(std::isfinite(model.r_pad), "r_pad", "padding must be finite");
  std::visit(
      [](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, UniformSquare>)
          require(w.n_w >= 1, "n_w", "warden count must be >= 1");
        else
          require(w.lambda_n > 0.0 && std::isfinite(w.lambda_n), "lambda_n",
                  "warden density must be positive");
      },
      model.warden_model);
}

std::vector<Point2D> sample_ppp_rect(const Rect& region, double density, Rng& rng) {
  std::poisson_distribution<long long> count_dist(density * region.area());
  long long count = count_dist(rng);
  std::uniform_real_distribution<double> ux(region.x0, region.x1);
  std::uniform_real_distribution<double> uy(region.y0, region.y1);
  std::vector<Point2D> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    double x = ux(rng);
    double y = uy(rng);
    pts.push_back({x, y});
  }
  return pts;
}

std::vector<Point2D> sample_ppp_annulus(const Point2D& center, double r_in, double r_out,
                                        double density, Rng& rng) {
  const double a2 = r_in * r_in;
  const double b2 = r_out * r_out;
  std::poisson_distribution<long long> count_dist(density * std::numbers::pi * (b2 - a2));
  long long count = count_dist(rng);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Point2D> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    double r = std::sqrt(a2 + (b2 - a2) * u01(rng));
    double th = 2.0 * std::numbers::pi * u01(rng);
    pts.push_back({center.x + r * std::cos(th), center.y + r * std::sin(th)});
  }
  return pts;
}

NodeLayout sample_layout(const PlacementModel& model, Rng& rng) {
  validate(model);
  NodeLayout out;
  out.r_pad = model.r_pad > 0.0 ? model.r_pad : default_padding(model.m);
  if (const auto* u = std::get_if<UniformSquare>(&model.warden_model)) {
    out.warden_region = kWardenSquare;
    std::uniform_real_distribution<double> ux(kWardenSquare.x0, kWardenSquare.x1);
    std::uniform_real_distribution<double> uy(kWardenSquare.y0, kWardenSquare.y1);
    out.wardens.reserve(static_cast<std::size_t>(u->n_w));
    for (int k = 0; k < u->n_w; ++k) {
      double x = ux(rng);
      double y = uy(rng);
      out.wardens.push_back({x, y});
    }
  } else {
    const auto& p = std::get<PoissonPlane>(model.warden_model);
    out.warden_region = kWardenSquare.inflated(out.r_pad);
    out.wardens = sample_ppp_rect(out.warden_region, p.lambda_n, rng);
  }
  out.sample_region = out.warden_region.inflated(out.r_pad);
  out.friendly = sample_ppp_rect(out.sample_region, model.m, rng);
  return out;
}

NearestResult nearest(const Point2D& point, const std::vector<Point2D>& set) {
  if (set.empty()) fail(ErrorKind::InvalidArgument, "set", "nearest: empty point set");
  NearestResult best{0, std::numeric_limits<double>::infinity()};
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < set.size(); ++i) {
    double dx = set[i].x - point.x;
    double dy = set[i].y - point.y;
    double d2 = dx * dx + dy * dy;
    if (d2 < best_sq) {
      best_sq = d2;
      best.index = i;
    }
  }
  best.distance = distance(point, set[best.index]);
  return best;
}

double nn_distance_cdf(double m, double x) {
  if (!(x > 0.0)) return 0.0;
  return -std::expm1(-m * std::numbers::pi * x * x);
}

std::uint64_t layout_digest(const NodeLayout& layout) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* p, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  auto mix_points = [&](const std::vector<Point2D>& pts) {
    std::uint64_t n = pts.size();
    mix(&n, sizeof n);
    for (const auto& p : pts) {
      mix(&p.x, sizeof p.x);
      mix(&p.y, sizeof p.y);
    }
  };
  mix(&layout.alice.x, sizeof(double));
  mix(&layout.alice.y, sizeof(double));
  mix(&layout.bob.x, sizeof(double));
  mix(&layout.bob.y, sizeof(double));
  mix_points(layout.wardens);
  mix_points(layout.friendly);
  return h;
}

namespace {

nlohmann::json points_json(const std::vector<Point2D>& pts) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : pts) a.push_back({p.x, p.y});
  return a;
}

nlohmann::json rect_json(const Rect& r) { return {r.x0, r.y0, r.x1, r.y1}; }

Point2D point_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::InvalidArgument, "layout", "point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Rect rect_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4)
    fail(ErrorKind::InvalidArgument, "layout", "rectangle must be [x0, y0, x1, y1]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

}  // namespace

std::string layout_to_json(const NodeLayout& layout) {
  nlohmann::json j;
  j["alice"] = {layout.alice.x, layout.alice.y};
  j["bob"] = {layout.bob.x, layout.bob.y};
  j["wardens"] = points_json(layout.wardens);
  j["friendly"] = points_json(layout.friendly);
  j["warden_region"] = rect_json(layout.warden_region);
  j["sample_region"] = rect_json(layout.sample_region);
  j["r_pad"] = layout.r_pad;
  return j.dump();
}

NodeLayout layout_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    NodeLayout out;
    out.alice = point_from(j.at("alice"));
    out.bob = point_from(j.at("bob"));
    for (const auto& p : j.at("wardens")) out.wardens.push_back(point_from(p));
    for (const auto& p : j.at("friendly")) out.friendly.push_back(point_from(p));
    out.sample_region = rect_from(j.at("sample_region"));
    out.warden_region = j.contains("warden_region") ? rect_from(j["warden_region"]) : kWardenSquare;
    out.r_pad = j.value("r_pad", 0.0);
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, "layout", std::string("layout JSON: ") + e.what());
  }
}

}  // namespace covertgeom
