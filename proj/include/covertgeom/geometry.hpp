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

#include "covertgeom/rng.hpp"

namespace covertgeom {

/// Distances below this are clamped before any 1/d^gamma.
inline constexpr double kMinDistance = 1e-12;

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2D& a, const Point2D& b);

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double area() const { return (x1 - x0) * (y1 - y0); }
  bool contains(const Point2D& p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  Rect inflated(double r) const { return {x0 - r, y0 - r, x1 + r, y1 + r}; }
};

/// Warden square: Alice and Bob sit at the midpoints of its left and right edges.
inline constexpr Rect kWardenSquare{0.0, -0.5, 1.0, 0.5};

struct UniformSquare {
  int n_w = 1;
};
struct PoissonPlane {
  double lambda_n = 1.0;
};
using WardenModel = std::variant<UniformSquare, PoissonPlane>;

struct PlacementModel {
  WardenModel warden_model = UniformSquare{1};
  double m = 100.0;
  /// Padding around the warden region; <= 0 selects default_padding(m).
  double r_pad = 0.0;
};

/// sqrt(ln(1e12)/(m pi)): a disk of this radius is empty of a density-m PPP
/// with probability 1e-12.
double default_padding(double m);

struct NodeLayout {
  Point2D alice{0.0, 0.0};
  Point2D bob{1.0, 0.0};
  std::vector<Point2D> wardens;
  std::vector<Point2D> friendly;
  Rect warden_region = kWardenSquare;
  Rect sample_region = kWardenSquare;  // friendly PPP support
  double r_pad = 0.0;
};

void validate(const PlacementModel& model);

/// Uniform wardens live in the square. Poisson wardens live in the square
/// inflated by r_pad. Friendly nodes live in the warden region inflated by
/// r_pad again.
NodeLayout sample_layout(const PlacementModel& model, Rng& rng);

/// Homogeneous PPP of given density on a rectangle.
std::vector<Point2D> sample_ppp_rect(const Rect& region, double density, Rng& rng);
/// Homogeneous PPP on the annulus r_in <= |p - center| <= r_out.
std::vector<Point2D> sample_ppp_annulus(const Point2D& center, double r_in, double r_out,
                                        double density, Rng& rng);

struct NearestResult {
  std::size_t index = 0;
  double distance = 0.0;
};

/// Closest point; ties go to the smallest index.
NearestResult nearest(const Point2D& point, const std::vector<Point2D>& set);

/// 1 - exp(-m pi x^2).
double nn_distance_cdf(double m, double x);

/// Stable FNV-1a digest over the coordinate bytes.
std::uint64_t layout_digest(const NodeLayout& layout);

std::string layout_to_json(const NodeLayout& layout);
NodeLayout layout_from_json(const std::string& text);

}  // namespace covertgeom
