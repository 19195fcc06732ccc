#include "trackgen/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "stencil.hpp"

namespace trackgen {

double planar_step(const Point2D& prev, const Point2D& curr) {
  return std::hypot(curr.x - prev.x, curr.y - prev.y);
}

double spatial_step(const Point3D& prev, const Point3D& curr) {
  const double dx = curr.x - prev.x;
  const double dy = curr.y - prev.y;
  const double dz = curr.z - prev.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double total_length_2d(const Polyline2D& line) {
  double sum = 0.0;
  for (std::size_t k = 1; k < line.points.size(); ++k) {
    sum += planar_step(line.points[k - 1], line.points[k]);
  }
  return sum;
}

double total_length_3d(const Polyline3D& line) {
  if (line.points.size() < 2) {
    throw GeometryError("total_length_3d: need at least 2 points, got " +
                        std::to_string(line.points.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 1; k < line.points.size(); ++k) {
    sum += spatial_step(line.points[k - 1], line.points[k]);
  }
  return sum;
}

Differences first_second_differences(std::span<const double> f, double spacing) {
  const std::size_t n = f.size();
  if (n < 3) {
    throw GeometryError("first_second_differences: need at least 3 samples, got " +
                        std::to_string(n));
  }
  if (!(spacing > 0.0)) {
    throw GeometryError("first_second_differences: spacing must be positive");
  }
  const double h = spacing;
  Differences out;
  out.first.resize(n);
  out.second.resize(n);

  for (std::size_t k = 1; k + 1 < n; ++k) {
    out.first[k] = stencil::central_first(f[k - 1], f[k + 1], h);
    out.second[k] = stencil::central_second(f[k - 1], f[k], f[k + 1], h);
  }

  out.first[0] = stencil::forward_first(f[0], f[1], f[2], h);
  out.first[n - 1] = stencil::backward_first(f[n - 1], f[n - 2], f[n - 3], h);

  if (n >= 4) {
    out.second[0] = stencil::forward_second(f[0], f[1], f[2], f[3], h);
    out.second[n - 1] = stencil::backward_second(f[n - 1], f[n - 2], f[n - 3], f[n - 4], h);
  } else {
    // three samples only support one second difference
    out.second[0] = out.second[1];
    out.second[2] = out.second[1];
  }
  return out;
}

Polyline2D resample_uniform(const Polyline2D& raw, double spacing) {
  const auto& pts = raw.points;
  if (pts.size() < 2) {
    throw GeometryError("resample_uniform: need at least 2 points, got " +
                        std::to_string(pts.size()));
  }
  if (!(spacing > 0.0)) {
    throw GeometryError("resample_uniform: spacing must be positive");
  }

  std::vector<double> cumulative(pts.size(), 0.0);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    cumulative[k] = cumulative[k - 1] + planar_step(pts[k - 1], pts[k]);
  }
  const double total = cumulative.back();
  if (spacing > total / 2.0) {
    throw GeometryError("resample_uniform: spacing " + std::to_string(spacing) +
                        " exceeds half the arc length " + std::to_string(total));
  }

  const auto intervals = static_cast<std::size_t>(std::max(1.0, std::round(total / spacing)));
  const double step = total / static_cast<double>(intervals);

  Polyline2D out;
  out.spacing = step;
  out.points.reserve(intervals + 1);
  out.points.push_back(pts.front());

  std::size_t seg = 1;
  for (std::size_t i = 1; i < intervals; ++i) {
    const double s = step * static_cast<double>(i);
    while (seg + 1 < pts.size() && cumulative[seg] < s) {
      ++seg;
    }
    const double len = cumulative[seg] - cumulative[seg - 1];
    const double t = len > 0.0 ? (s - cumulative[seg - 1]) / len : 0.0;
    const Point2D& a = pts[seg - 1];
    const Point2D& b = pts[seg];
    out.points.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
  }
  out.points.push_back(pts.back());
  return out;
}

double effective_spacing(const Polyline2D& line) {
  if (line.spacing > 0.0) {
    return line.spacing;
  }
  if (line.points.size() < 2) {
    return kDefaultSpacing;
  }
  return total_length_2d(line) / static_cast<double>(line.points.size() - 1);
}

namespace {

using stencil::Vec3;
using stencil::norm;
using stencil::space_curvature;

std::vector<double> column(const auto& points, auto member) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    out.push_back(p.*member);
  }
  return out;
}

}  // namespace

CurvatureProfile curvature_2d(const Polyline2D& line) {
  const double h = effective_spacing(line);
  const auto xs = column(line.points, &Point2D::x);
  const auto ys = column(line.points, &Point2D::y);
  const auto dx = first_second_differences(xs, h);
  const auto dy = first_second_differences(ys, h);

  CurvatureProfile out;
  out.values.resize(line.size());
  for (std::size_t k = 0; k < line.size(); ++k) {
    const double speed2 = dx.first[k] * dx.first[k] + dy.first[k] * dy.first[k];
    if (speed2 < kMinSquaredSpeed2D) {
      throw GeometryError("curvature_2d: degenerate derivative at point " + std::to_string(k));
    }
    const double cross = dx.second[k] * dy.first[k] - dx.first[k] * dy.second[k];
    out.values[k] = std::abs(cross) / std::pow(speed2, 1.5);
  }
  return out;
}

CurvatureProfile curvature_3d(const Polyline3D& line) {
  Polyline2D planar = project_xy(line);
  const double h = effective_spacing(planar);
  const auto xs = column(line.points, &Point3D::x);
  const auto ys = column(line.points, &Point3D::y);
  const auto zs = column(line.points, &Point3D::z);
  const auto dx = first_second_differences(xs, h);
  const auto dy = first_second_differences(ys, h);
  const auto dz = first_second_differences(zs, h);

  CurvatureProfile out;
  out.values.resize(line.size());
  for (std::size_t k = 0; k < line.size(); ++k) {
    const Vec3 u{dx.first[k], dy.first[k], dz.first[k]};
    const Vec3 v{dx.second[k], dy.second[k], dz.second[k]};
    const double speed = norm(u);
    if (speed < kMinSpeed3D) {
      throw GeometryError("curvature_3d: vanishing first derivative at point " +
                          std::to_string(k));
    }
    out.values[k] = space_curvature(u, v);
  }
  return out;
}

Polyline2D scale_xy(const Polyline2D& line, double factor) {
  if (!(factor > 0.0)) {
    throw GeometryError("scale_xy: factor must be positive, got " + std::to_string(factor));
  }
  Polyline2D out;
  out.spacing = line.spacing * factor;
  out.points.reserve(line.size());
  for (const auto& p : line.points) {
    out.points.push_back({factor * p.x, factor * p.y});
  }
  return out;
}

Polyline2D project_xy(const Polyline3D& line) {
  Polyline2D out;
  out.spacing = line.spacing;
  out.points.reserve(line.size());
  for (const auto& p : line.points) {
    out.points.push_back({p.x, p.y});
  }
  return out;
}

}  // namespace trackgen
