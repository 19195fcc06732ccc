#pragma once

#include <cstdint>
#include <optional>

#include "trackgen/geometry.hpp"
#include "trackgen/optimizer.hpp"
#include "trackgen/segmentation.hpp"

namespace trackgen {

/// Everything a generation run needs besides the centerline and the seed.
struct TrackSpec {
  TrackTargets targets;
  CostWeights weights;
  OptimizerConfig optimizer;
  SegmentationConfig segmentation;
  double resample_spacing = kDefaultSpacing;
  std::optional<std::size_t> segment_count;
  bool scaled = false;
  double f_init = 1.0;

  /// Throws OptimizerError / SegmentationError naming the offending field.
  void validate() const;
};

struct PreparedLine {
  Polyline2D line;
  CurvatureProfile planar_curvature;
  SegmentPartition partition;
};

/// resample -> planar curvature -> segmentation -> optional count adjustment.
PreparedLine prepare_line(const Polyline2D& raw, const TrackSpec& spec);

RunResult run_generation(const PreparedLine& prepared, const TrackSpec& spec, std::uint64_t seed);

}  // namespace trackgen
