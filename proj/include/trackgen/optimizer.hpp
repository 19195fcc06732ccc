#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "trackgen/geometry.hpp"
#include "trackgen/segmentation.hpp"

namespace trackgen {

class OptimizerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Design targets of a track: 3D length, net drop, mean per-segment slope
/// and the admissible slope band.
struct TrackTargets {
  double total_length = 0.0;       // L, m
  double height_difference = 0.0;  // H, m
  double average_slope = 0.0;      // g-bar
  double slope_min = 0.0;
  double slope_max = 0.0;

  void validate() const;
};

/// Weights of the length, height, curvature and average-slope residuals.
struct CostWeights {
  double a = 1.0;
  double b = 0.7;
  double c = 1.0;
  double d = 1.0;

  void validate() const;
};

struct OptimizerConfig {
  double learning_rate = 2e-3;         // step on segment heights
  double scale_learning_rate = 1e-5;   // step on the scale factor
  double convergence_threshold = 1e-3; // stop when |J_i - J_{i-1}| falls below this
  std::size_t max_iterations = 100000;
  std::uint64_t seed = 0;
  double secant_epsilon = 1e-9;  // smaller moves give no secant information

  void validate() const;
};

struct OptimizerState {
  std::vector<double> heights;  // h_m, positive = drop
  std::vector<double> previous_heights;
  double cost = 0.0;
  double previous_cost = 0.0;
  std::optional<double> scale;
  std::optional<double> previous_scale;
  std::size_t iteration = 0;
};

struct CostBreakdown {
  double length_term = 0.0;
  double height_term = 0.0;
  double curvature_term = 0.0;
  double slope_term = 0.0;
  double total = 0.0;
};

struct RunResult {
  Polyline3D centerline;
  SegmentPartition partition;  // planar lengths of the returned geometry
  OptimizerState final_state;
  CostBreakdown final_cost;
  std::vector<double> cost_history;  // J_0 .. J_iterations
  std::size_t iterations = 0;
  bool converged = false;
  std::optional<double> recovered_scale;
  bool scale_clamped = false;
};

/// Proportional split of H over the segments, perturbed by up to +-20 % with
/// a generator seeded by `seed`, then projected into the slope band.
std::vector<double> init_heights(const SegmentPartition& part, const TrackTargets& targets,
                                 std::uint64_t seed);

/// z_0 = H and z_k = z_{k-1} - step_k * g_m, with m the segment owning point k.
Polyline3D reconstruct_elevation(const Polyline2D& line, const SegmentPartition& part,
                                 std::span<const double> heights, double start_height);

std::vector<double> slopes_from_heights(std::span<const double> heights,
                                        const SegmentPartition& part);

CostBreakdown cost(const Polyline3D& line3d, const SegmentPartition& part,
                   const CurvatureProfile& planar_curvature, const TrackTargets& targets,
                   const CostWeights& weights);

std::vector<double> project_heights(std::span<const double> heights,
                                    const SegmentPartition& part, const TrackTargets& targets);

/// Componentwise quotient (curr_J - prev_J) / (curr_h - prev_h); components
/// that moved less than `eps` get 0.
std::vector<double> secant_gradient(std::span<const double> curr_h, std::span<const double> prev_h,
                                    double curr_cost, double prev_cost, double eps);

/// h <- project(h - learning_rate * grad); keeps the old iterate for the next secant.
OptimizerState pgd_step(const OptimizerState& state, std::span<const double> grad,
                        const SegmentPartition& part, const TrackTargets& targets,
                        const OptimizerConfig& config);

RunResult optimize(const Polyline2D& line, const SegmentPartition& part,
                   const TrackTargets& targets, const CostWeights& weights,
                   const OptimizerConfig& config);

/// Joint search over segment heights and a uniform xy scale factor f.
/// x, y are rescaled by the current f every iteration and segment lengths
/// follow; f < 1e-3 is clamped and reported through RunResult::scale_clamped.
RunResult optimize_with_scale(const Polyline2D& line, const SegmentPartition& part,
                              const TrackTargets& targets, const CostWeights& weights,
                              const OptimizerConfig& config, double initial_scale);

inline constexpr double kMinScale = 1e-3;

}  // namespace trackgen
