#pragma once

#include <cmath>
#include <numbers>

#include "trackgen/geometry.hpp"

namespace fixtures {

using trackgen::Point2D;
using trackgen::Point3D;
using trackgen::Polyline2D;
using trackgen::Polyline3D;

inline Polyline2D straight(std::size_t n, double spacing, double angle = 0.0) {
  Polyline2D line;
  line.spacing = spacing;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = spacing * static_cast<double>(k);
    line.points.push_back({s * std::cos(angle), s * std::sin(angle)});
  }
  return line;
}

/// Arc of radius `r` centred at the origin, sampled every `spacing` of arc length.
inline Polyline2D arc(double r, double spacing, double sweep) {
  Polyline2D line;
  line.spacing = spacing;
  const auto n = static_cast<std::size_t>(std::round(sweep * r / spacing));
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = spacing * static_cast<double>(k) / r;
    line.points.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return line;
}

inline Polyline3D lift(const Polyline2D& line, double z) {
  Polyline3D out;
  out.spacing = line.spacing;
  for (const auto& p : line.points) {
    out.points.push_back({p.x, p.y, z});
  }
  return out;
}

/// Helix with uniform parameter step dt.
inline Polyline3D helix(double r, double c, double dt, std::size_t n) {
  Polyline3D out;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = dt * static_cast<double>(k);
    out.points.push_back({r * std::cos(t), r * std::sin(t), c * t});
  }
  out.spacing = r * dt;
  return out;
}

}  // namespace fixtures
