#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trackgen {

/// Raised when a polyline cannot support a finite-difference evaluation
/// (too few points, coincident samples, vanishing derivative).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

struct Point3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3D&, const Point3D&) = default;
};

/// Ordered centerline samples in the horizontal plane. `spacing` is the
/// nominal arc-length gap between samples; zero means "unknown / raw".
struct Polyline2D {
  std::vector<Point2D> points;
  double spacing = 0.0;

  [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// A centerline with elevation. x, y (and ordering) come from the source
/// Polyline2D it was generated from.
struct Polyline3D {
  std::vector<Point3D> points;
  double spacing = 0.0;

  [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// Curvature (1/m), one value per polyline point.
struct CurvatureProfile {
  std::vector<double> values;

  [[nodiscard]] std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

struct Differences {
  std::vector<double> first;
  std::vector<double> second;
};

/// Below this squared speed a point is considered degenerate.
inline constexpr double kMinSquaredSpeed2D = 1e-12;
/// Below this first-derivative magnitude a 3D point is considered degenerate.
inline constexpr double kMinSpeed3D = 1e-6;
inline constexpr double kDefaultSpacing = 1.0;

double planar_step(const Point2D& prev, const Point2D& curr);
double spatial_step(const Point3D& prev, const Point3D& curr);

double total_length_2d(const Polyline2D& line);
double total_length_3d(const Polyline3D& line);

/// Second-order accurate finite differences: central in the interior,
/// one-sided three/four-point stencils at the two ends.
Differences first_second_differences(std::span<const double> series, double spacing);

/// Resamples `raw` at uniform arc length along its piecewise-linear
/// interpolant. Both end points are kept, so the effective spacing is
/// total_length / round(total_length / spacing) and is stored on the result.
Polyline2D resample_uniform(const Polyline2D& raw, double spacing = kDefaultSpacing);

CurvatureProfile curvature_2d(const Polyline2D& line);
CurvatureProfile curvature_3d(const Polyline3D& line);

Polyline2D scale_xy(const Polyline2D& line, double factor);

Polyline2D project_xy(const Polyline3D& line);

/// Mean planar gap of the line; used when a polyline carries no spacing.
double effective_spacing(const Polyline2D& line);

}  // namespace trackgen
