#pragma once

#include <stdexcept>
#include <vector>

#include "trackgen/geometry.hpp"
#include "trackgen/optimizer.hpp"
#include "trackgen/segmentation.hpp"

namespace trackgen {

class ReportError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GeometryReport {
  double total_length = 0.0;       // 3D arc length, m
  double height_difference = 0.0;  // z_first - z_last, m
  double height_variation = 0.0;   // sum of |dz|, m
  double max_slope = 0.0;
  double average_slope = 0.0;  // unweighted mean over segments
  double drop_ratio = 0.0;     // height_difference / total_length
  bool slope_within_limits = true;
  std::vector<double> per_segment_slopes;
};

/// Relative errors |generated - actual| / actual.
struct ComparisonReport {
  double total_length = 0.0;
  double height_difference = 0.0;
  double average_slope = 0.0;
};

/// Per-segment slopes are the segment's net drop over its planar length,
/// with the step entering the segment counted in it.
GeometryReport geometry_report(const Polyline3D& line3d, const SegmentPartition& part,
                               const TrackTargets& targets);

ComparisonReport compare_reports(const GeometryReport& generated, const GeometryReport& actual);

struct SeriesBundle {
  std::vector<double> distance;  // cumulative 3D arc length
  std::vector<double> height;
  std::vector<double> slope;
  std::vector<double> planar_curvature;
  std::vector<double> spatial_curvature;
};

SeriesBundle export_series(const Polyline3D& line3d, const SegmentPartition& part,
                           const CurvatureProfile& planar_curvature);

}  // namespace trackgen
