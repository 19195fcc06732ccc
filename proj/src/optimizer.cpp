#include "trackgen/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "trackgen/cost_model.hpp"

namespace trackgen {

void TrackTargets::validate() const {
  if (!(total_length > 0.0)) {
    throw OptimizerError("targets.total_length must be positive");
  }
  if (!(height_difference > 0.0)) {
    throw OptimizerError("targets.height_difference must be positive");
  }
  if (!(slope_min < slope_max)) {
    throw OptimizerError("targets.slope_min must be below targets.slope_max");
  }
  if (average_slope < slope_min || average_slope > slope_max) {
    throw OptimizerError("targets.average_slope must lie within [slope_min, slope_max]");
  }
}

void CostWeights::validate() const {
  for (double w : {a, b, c, d}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw OptimizerError("weights must be finite and non-negative");
    }
  }
  if (a + b + c + d <= 0.0) {
    throw OptimizerError("at least one weight must be positive");
  }
}

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) {
    throw OptimizerError("optimizer.learning_rate must be positive");
  }
  if (!(scale_learning_rate > 0.0)) {
    throw OptimizerError("optimizer.scale_learning_rate must be positive");
  }
  if (!(convergence_threshold > 0.0)) {
    throw OptimizerError("optimizer.convergence_threshold must be positive");
  }
  if (max_iterations < 1) {
    throw OptimizerError("optimizer.max_iterations must be at least 1");
  }
  if (!(secant_epsilon > 0.0)) {
    throw OptimizerError("optimizer.secant_epsilon must be positive");
  }
}

namespace {

// Uniform doubles from a 64-bit Mersenne Twister, mapped by hand so the
// stream does not depend on the standard library's distribution code.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}

  double operator()(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

 private:
  std::mt19937_64 engine_;
};

constexpr double kInitialSpread = 0.2;

// Probe used for a coordinate whose last move was below secant_epsilon.
constexpr double kStallProbe = 1e-4;

void check_sizes(std::span<const double> heights, const SegmentPartition& part,
                 const char* where) {
  if (heights.size() != part.segment_count()) {
    throw OptimizerError(std::string(where) + ": " + std::to_string(heights.size()) +
                         " heights for " + std::to_string(part.segment_count()) + " segments");
  }
}

std::vector<double> draw_heights(const SegmentPartition& part, const TrackTargets& targets,
                                 Uniform& rng) {
  const double total = part.total_planar_length();
  std::vector<double> h(part.segment_count());
  for (std::size_t m = 0; m < h.size(); ++m) {
    const double u = rng(-kInitialSpread, kInitialSpread);
    h[m] = targets.height_difference * part.planar_lengths[m] / total * (1.0 + u);
  }
  return project_heights(h, part, targets);
}

}  // namespace

std::vector<double> init_heights(const SegmentPartition& part, const TrackTargets& targets,
                                 std::uint64_t seed) {
  Uniform rng(seed);
  return draw_heights(part, targets, rng);
}

Polyline3D reconstruct_elevation(const Polyline2D& line, const SegmentPartition& part,
                                 std::span<const double> heights, double start_height) {
  check_sizes(heights, part, "reconstruct_elevation");
  if (part.point_count != line.size()) {
    throw OptimizerError("reconstruct_elevation: partition covers " +
                         std::to_string(part.point_count) + " points, line has " +
                         std::to_string(line.size()));
  }
  const auto slopes = slopes_from_heights(heights, part);
  Polyline3D out;
  out.spacing = line.spacing;
  out.points.reserve(line.size());
  double z = start_height;
  for (std::size_t m = 0; m < part.segment_count(); ++m) {
    for (std::size_t k = part.start(m); k < part.end(m); ++k) {
      if (k > 0) {
        z -= planar_step(line.points[k - 1], line.points[k]) * slopes[m];
      }
      out.points.push_back({line.points[k].x, line.points[k].y, z});
    }
  }
  return out;
}

std::vector<double> slopes_from_heights(std::span<const double> heights,
                                        const SegmentPartition& part) {
  check_sizes(heights, part, "slopes_from_heights");
  std::vector<double> g(heights.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (!(part.planar_lengths[m] > 0.0)) {
      throw OptimizerError("slopes_from_heights: segment " + std::to_string(m) +
                           " has zero length");
    }
    g[m] = heights[m] / part.planar_lengths[m];
  }
  return g;
}

CostBreakdown cost(const Polyline3D& line3d, const SegmentPartition& part,
                   const CurvatureProfile& planar_curvature, const TrackTargets& targets,
                   const CostWeights& weights) {
  const std::size_t n = line3d.size();
  if (planar_curvature.size() != n || part.point_count != n) {
    throw OptimizerError("cost: profile sizes do not match the centerline");
  }
  const auto spatial_curvature = curvature_3d(line3d);

  double length = 0.0;
  double variation = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    length += spatial_step(line3d.points[k - 1], line3d.points[k]);
    variation += std::abs(line3d.points[k].z - line3d.points[k - 1].z);
  }
  double curvature_gap = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    curvature_gap += std::abs(planar_curvature[k] - spatial_curvature[k]);
  }
  double slope_sum = 0.0;
  for (std::size_t m = 0; m < part.segment_count(); ++m) {
    const std::size_t from = part.start(m) == 0 ? 0 : part.start(m) - 1;
    const double drop = line3d.points[from].z - line3d.points[part.end(m) - 1].z;
    slope_sum += drop / part.planar_lengths[m];
  }
  const double j = static_cast<double>(part.segment_count());

  CostBreakdown out;
  out.length_term = weights.a * std::abs(targets.total_length - length);
  out.height_term = weights.b * std::abs(targets.height_difference - variation);
  out.curvature_term = weights.c / static_cast<double>(n) * curvature_gap;
  out.slope_term = weights.d * std::abs(slope_sum / j - targets.average_slope);
  out.total = out.length_term + out.height_term + out.curvature_term + out.slope_term;
  return out;
}

std::vector<double> project_heights(std::span<const double> heights,
                                    const SegmentPartition& part, const TrackTargets& targets) {
  check_sizes(heights, part, "project_heights");
  std::vector<double> out(heights.begin(), heights.end());
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double d = part.planar_lengths[m];
    const double g = out[m] / d;
    if (g <= targets.slope_min) {
      out[m] = targets.slope_min * d;
    } else if (g >= targets.slope_max) {
      out[m] = targets.slope_max * d;
    }
  }
  return out;
}

std::vector<double> secant_gradient(std::span<const double> curr_h, std::span<const double> prev_h,
                                    double curr_cost, double prev_cost, double eps) {
  if (curr_h.size() != prev_h.size()) {
    throw OptimizerError("secant_gradient: iterate sizes differ");
  }
  std::vector<double> grad(curr_h.size(), 0.0);
  for (std::size_t m = 0; m < grad.size(); ++m) {
    const double step = curr_h[m] - prev_h[m];
    if (std::abs(step) >= eps) {
      grad[m] = (curr_cost - prev_cost) / step;
    }
  }
  return grad;
}

OptimizerState pgd_step(const OptimizerState& state, std::span<const double> grad,
                        const SegmentPartition& part, const TrackTargets& targets,
                        const OptimizerConfig& config) {
  check_sizes(state.heights, part, "pgd_step");
  if (grad.size() != state.heights.size()) {
    throw OptimizerError("pgd_step: gradient size mismatch");
  }
  std::vector<double> moved(state.heights.size());
  for (std::size_t m = 0; m < moved.size(); ++m) {
    moved[m] = state.heights[m] - config.learning_rate * grad[m];
  }
  OptimizerState next;
  next.previous_heights = state.heights;
  next.previous_cost = state.cost;
  next.heights = project_heights(moved, part, targets);
  next.cost = state.cost;
  next.scale = state.scale;
  next.previous_scale = state.scale;
  next.iteration = state.iteration + 1;
  return next;
}

namespace {

// Per-segment secant: the cost change when only segment m returns to its
// previous height, divided by that height change. A coordinate that did not
// move is probed by a small step towards the interior of its slope band.
std::vector<double> coordinate_secants(const CostModel& model, const OptimizerState& state,
                                       const SegmentPartition& part,
                                       const TrackTargets& targets,
                                       const OptimizerConfig& config) {
  const std::size_t j = state.heights.size();
  std::vector<double> grad(j);
  const double here = model.base_total();
  for (std::size_t m = 0; m < j; ++m) {
    const double h = state.heights[m];
    const double prev = state.previous_heights[m];
    const double there = model.total_with(m, prev);
    const auto secant = secant_gradient(std::span(&h, 1), std::span(&prev, 1), here, there,
                                        config.secant_epsilon);
    if (std::abs(h - prev) >= config.secant_epsilon) {
      grad[m] = secant[0];
      continue;
    }
    const double upper = targets.slope_max * part.planar_lengths[m];
    const double probe = h + kStallProbe >= upper ? h - kStallProbe : h + kStallProbe;
    grad[m] = (model.total_with(m, probe) - here) / (probe - h);
  }
  return grad;
}

bool settled(const std::vector<double>& history, const OptimizerConfig& config) {
  // the first move follows a random direction and is not a convergence signal
  return history.size() >= 3 &&
         std::abs(history.back() - history[history.size() - 2]) < config.convergence_threshold;
}

}  // namespace

RunResult optimize(const Polyline2D& line, const SegmentPartition& part,
                   const TrackTargets& targets, const CostWeights& weights,
                   const OptimizerConfig& config) {
  targets.validate();
  weights.validate();
  config.validate();
  part.validate();
  if (part.point_count != line.size()) {
    throw OptimizerError("optimize: partition does not match the line");
  }

  const auto planar_curvature = curvature_2d(line);
  CostModel model(line, part, planar_curvature, targets, weights);
  const std::size_t j = part.segment_count();

  Uniform rng(config.seed);
  OptimizerState state;
  state.heights = draw_heights(part, targets, rng);
  model.rebase(state.heights);
  state.cost = model.base_total();

  std::vector<double> grad(j);
  for (auto& g : grad) {
    g = rng(-1.0, 1.0);
  }

  RunResult result;
  result.cost_history.push_back(state.cost);
  for (std::size_t i = 1; i <= config.max_iterations; ++i) {
    state = pgd_step(state, grad, part, targets, config);
    model.rebase(state.heights);
    state.cost = model.base_total();
    result.cost_history.push_back(state.cost);
    if (settled(result.cost_history, config)) {
      result.converged = true;
      break;
    }
    if (i < config.max_iterations) {
      grad = coordinate_secants(model, state, part, targets, config);
    }
  }

  result.iterations = state.iteration;
  result.centerline = reconstruct_elevation(line, part, state.heights, targets.height_difference);
  result.partition = part;
  result.final_cost = model.evaluate(state.heights);
  result.final_state = std::move(state);
  return result;
}

RunResult optimize_with_scale(const Polyline2D& line, const SegmentPartition& part,
                              const TrackTargets& targets, const CostWeights& weights,
                              const OptimizerConfig& config, double initial_scale) {
  targets.validate();
  weights.validate();
  config.validate();
  part.validate();
  if (!(initial_scale > 0.0)) {
    throw OptimizerError("optimize_with_scale: initial scale must be positive");
  }
  if (part.point_count != line.size()) {
    throw OptimizerError("optimize_with_scale: partition does not match the line");
  }

  struct Scaled {
    Polyline2D line;
    SegmentPartition part;
    CostModel model;
  };
  auto at_scale = [&](double f) {
    Polyline2D scaled = scale_xy(line, f);
    SegmentPartition scaled_part = with_planar_lengths(part, scaled);
    const auto k2d = curvature_2d(scaled);
    CostModel model(scaled, scaled_part, k2d, targets, weights);
    return Scaled{std::move(scaled), std::move(scaled_part), std::move(model)};
  };

  const std::size_t j = part.segment_count();
  Uniform rng(config.seed);
  bool clamped = false;

  double f = initial_scale;
  Scaled current = at_scale(f);
  OptimizerState state;
  state.heights = draw_heights(current.part, targets, rng);
  state.scale = f;
  current.model.rebase(state.heights);
  state.cost = current.model.base_total();

  std::vector<double> grad(j);
  for (auto& g : grad) {
    g = rng(-1.0, 1.0);
  }
  double scale_grad = rng(-1.0, 1.0);

  RunResult result;
  result.cost_history.push_back(state.cost);
  for (std::size_t i = 1; i <= config.max_iterations; ++i) {
    const double previous_f = f;
    f -= config.scale_learning_rate * scale_grad;
    if (f < kMinScale) {
      f = kMinScale;
      clamped = true;
    }
    Scaled next = at_scale(f);
    state = pgd_step(state, grad, next.part, targets, config);
    state.previous_scale = previous_f;
    state.scale = f;
    next.model.rebase(state.heights);
    state.cost = next.model.base_total();
    result.cost_history.push_back(state.cost);

    // cost at the current heights but the previous scale, for the f secant
    const double cost_at_previous_f = current.model.evaluate(state.heights).total;
    current = std::move(next);

    if (settled(result.cost_history, config)) {
      result.converged = true;
      break;
    }
    if (i == config.max_iterations) {
      break;
    }
    grad = coordinate_secants(current.model, state, current.part, targets, config);
    if (std::abs(f - previous_f) >= config.secant_epsilon) {
      scale_grad = (state.cost - cost_at_previous_f) / (f - previous_f);
    } else {
      const double probe = f + kStallProbe;
      scale_grad = (at_scale(probe).model.evaluate(state.heights).total - state.cost) /
                   (probe - f);
    }
  }

  result.iterations = state.iteration;
  result.centerline =
      reconstruct_elevation(current.line, current.part, state.heights, targets.height_difference);
  result.partition = current.part;
  result.final_cost = current.model.evaluate(state.heights);
  result.recovered_scale = f;
  result.scale_clamped = clamped;
  result.final_state = std::move(state);
  return result;
}

}  // namespace trackgen
