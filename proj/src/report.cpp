#include "trackgen/report.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trackgen {

namespace {

// Slopes re-measured from z carry rounding from the recursion.
constexpr double kLimitTolerance = 1e-9;

void check_partition(const Polyline3D& line, const SegmentPartition& part, const char* where) {
  if (part.point_count != line.size()) {
    throw ReportError(std::string(where) + ": partition covers " +
                      std::to_string(part.point_count) + " points, centerline has " +
                      std::to_string(line.size()));
  }
}

std::vector<double> measured_slopes(const Polyline3D& line, const SegmentPartition& part) {
  std::vector<double> g(part.segment_count());
  for (std::size_t m = 0; m < g.size(); ++m) {
    const std::size_t from = part.start(m) == 0 ? 0 : part.start(m) - 1;
    const double drop = line.points[from].z - line.points[part.end(m) - 1].z;
    g[m] = drop / part.planar_lengths[m];
  }
  return g;
}

double relative_error(double generated, double actual, const char* field) {
  if (actual == 0.0) {
    throw ReportError(std::string("compare_reports: reference ") + field + " is zero");
  }
  return std::abs(generated - actual) / std::abs(actual);
}

}  // namespace

GeometryReport geometry_report(const Polyline3D& line3d, const SegmentPartition& part,
                               const TrackTargets& targets) {
  check_partition(line3d, part, "geometry_report");
  GeometryReport r;
  r.total_length = total_length_3d(line3d);
  r.height_difference = line3d.points.front().z - line3d.points.back().z;
  for (std::size_t k = 1; k < line3d.size(); ++k) {
    r.height_variation += std::abs(line3d.points[k].z - line3d.points[k - 1].z);
  }
  r.per_segment_slopes = measured_slopes(line3d, part);
  const auto& g = r.per_segment_slopes;
  r.max_slope = *std::max_element(g.begin(), g.end());
  double sum = 0.0;
  for (double s : g) {
    sum += s;
  }
  r.average_slope = sum / static_cast<double>(g.size());
  r.drop_ratio = r.height_difference / r.total_length;
  r.slope_within_limits = std::all_of(g.begin(), g.end(), [&](double s) {
    return s >= targets.slope_min - kLimitTolerance && s <= targets.slope_max + kLimitTolerance;
  });
  return r;
}

ComparisonReport compare_reports(const GeometryReport& generated, const GeometryReport& actual) {
  return {relative_error(generated.total_length, actual.total_length, "total_length"),
          relative_error(generated.height_difference, actual.height_difference,
                         "height_difference"),
          relative_error(generated.average_slope, actual.average_slope, "average_slope")};
}

SeriesBundle export_series(const Polyline3D& line3d, const SegmentPartition& part,
                           const CurvatureProfile& planar_curvature) {
  check_partition(line3d, part, "export_series");
  if (planar_curvature.size() != line3d.size()) {
    throw ReportError("export_series: curvature profile does not match the centerline");
  }
  const std::size_t n = line3d.size();
  const auto slopes = measured_slopes(line3d, part);
  const auto owner = part.owner_of_points();
  const auto spatial = curvature_3d(line3d);

  SeriesBundle out;
  out.distance.resize(n);
  out.height.resize(n);
  out.slope.resize(n);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      s += spatial_step(line3d.points[k - 1], line3d.points[k]);
    }
    out.distance[k] = s;
    out.height[k] = line3d.points[k].z;
    out.slope[k] = slopes[owner[k]];
  }
  out.planar_curvature = planar_curvature.values;
  out.spatial_curvature = spatial.values;
  return out;
}

}  // namespace trackgen
