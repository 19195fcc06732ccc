#pragma once

#include <span>
#include <vector>

#include "trackgen/geometry.hpp"
#include "trackgen/optimizer.hpp"
#include "trackgen/segmentation.hpp"

namespace trackgen {

/// Evaluates the track cost directly from segment heights without building
/// a Polyline3D. Planar steps, xy derivatives and planar curvature are
/// precomputed once per line; the elevation enters only through per-step
/// drops, so changing one segment's height touches only the points whose
/// difference stencils reach into that segment.
///
/// Agrees with cost(reconstruct_elevation(...)) up to rounding.
class CostModel {
 public:
  CostModel(const Polyline2D& line, const SegmentPartition& part,
            const CurvatureProfile& planar_curvature, const TrackTargets& targets,
            const CostWeights& weights);

  [[nodiscard]] CostBreakdown evaluate(std::span<const double> heights) const;

  /// Caches per-point residuals for `heights` so that single-segment
  /// variations can be evaluated in time proportional to the segment.
  void rebase(std::span<const double> heights);

  [[nodiscard]] double base_total() const { return base_.total; }

  /// Total cost of the cached heights with segment `m` set to `height`.
  [[nodiscard]] double total_with(std::size_t m, double height) const;

  [[nodiscard]] std::size_t segment_count() const { return lengths_.size(); }
  [[nodiscard]] const std::vector<double>& segment_lengths() const { return lengths_; }

 private:
  template <typename DropFn>
  double point_residual(std::size_t p, DropFn drop) const;
  double combine(double length_sum, double variation, double curvature_sum,
                               double slope_sum, CostBreakdown* parts) const;

  std::size_t n_ = 0;
  double spacing_ = 0.0;
  std::vector<double> steps_;        // steps_[k]: planar step into point k (steps_[0] = 0)
  std::vector<std::size_t> owner_;   // segment owning point k
  std::vector<double> xd_, xdd_, yd_, ydd_;
  std::vector<double> planar_curvature_;
  std::vector<double> lengths_;
  std::vector<std::size_t> first_step_, last_step_;
  TrackTargets targets_;
  CostWeights weights_;

  struct Base {
    std::vector<double> heights;
    std::vector<double> residuals;
    double length_sum = 0.0;
    double variation = 0.0;
    double curvature_sum = 0.0;
    double slope_sum = 0.0;
    double total = 0.0;
  } base_;
};

}  // namespace trackgen
