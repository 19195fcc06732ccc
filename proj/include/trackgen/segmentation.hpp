#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trackgen/geometry.hpp"

namespace trackgen {

class SegmentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SegmentKind : std::uint8_t { Straight, Curved };

struct SegmentationConfig {
  double curvature_threshold = 0.005;  // 1/m
  std::size_t smoothing_window = 5;    // odd, >= 3

  void validate() const;
};

/// Contiguous split of the points [0, n) into segments. Segment m owns the
/// points [start(m), end(m)); a boundary point belongs to the later segment.
/// The planar length of a segment includes the step that enters its first
/// point, so planar lengths sum to the total planar length of the line.
struct SegmentPartition {
  std::vector<std::size_t> starts;  // starts[0] == 0
  std::size_t point_count = 0;
  std::vector<SegmentKind> kinds;
  std::vector<double> planar_lengths;

  [[nodiscard]] std::size_t segment_count() const { return starts.size(); }
  [[nodiscard]] std::size_t start(std::size_t m) const { return starts[m]; }
  [[nodiscard]] std::size_t end(std::size_t m) const {
    return m + 1 < starts.size() ? starts[m + 1] : point_count;
  }
  [[nodiscard]] std::size_t points_in(std::size_t m) const { return end(m) - start(m); }
  [[nodiscard]] double total_planar_length() const;

  /// Segment index owning each point.
  [[nodiscard]] std::vector<std::size_t> owner_of_points() const;

  /// Throws SegmentationError when coverage or size invariants fail.
  void validate() const;
};

std::vector<SegmentKind> classify_points(const CurvatureProfile& profile,
                                         const SegmentationConfig& config);

/// Majority vote over a centred window, combined with the point's own
/// curvature test, followed by absorbing single-point runs into their
/// neighbourhood; repeated until nothing changes.
std::vector<SegmentKind> smooth_labels(const std::vector<SegmentKind>& labels,
                                       const CurvatureProfile& profile,
                                       const SegmentationConfig& config);

SegmentPartition build_partition(const std::vector<SegmentKind>& labels, const Polyline2D& line);

/// Splits the longest / merges the shortest segment until exactly `count`
/// segments remain.
SegmentPartition adjust_partition_count(const SegmentPartition& part, const Polyline2D& line,
                                        std::size_t count);

/// Recomputes planar lengths for the same index ranges on another line
/// (e.g. a uniformly scaled copy).
SegmentPartition with_planar_lengths(const SegmentPartition& part, const Polyline2D& line);

/// classify -> smooth -> build.
SegmentPartition segment_line(const Polyline2D& line, const CurvatureProfile& profile,
                              const SegmentationConfig& config);

}  // namespace trackgen
