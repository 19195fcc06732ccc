#include "trackgen/cost_model.hpp"

#include <cmath>
#include <string>

#include "stencil.hpp"

namespace trackgen {

CostModel::CostModel(const Polyline2D& line, const SegmentPartition& part,
                     const CurvatureProfile& planar_curvature, const TrackTargets& targets,
                     const CostWeights& weights)
    : n_(line.size()),
      spacing_(effective_spacing(line)),
      planar_curvature_(planar_curvature.values),
      lengths_(part.planar_lengths),
      targets_(targets),
      weights_(weights) {
  if (n_ < 3) {
    throw OptimizerError("CostModel: need at least 3 points");
  }
  if (part.point_count != n_ || planar_curvature.size() != n_) {
    throw OptimizerError("CostModel: partition / curvature sizes do not match the line");
  }
  steps_.assign(n_, 0.0);
  for (std::size_t k = 1; k < n_; ++k) {
    steps_[k] = planar_step(line.points[k - 1], line.points[k]);
  }
  owner_ = part.owner_of_points();

  std::vector<double> xs(n_), ys(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    xs[k] = line.points[k].x;
    ys[k] = line.points[k].y;
  }
  auto dx = first_second_differences(xs, spacing_);
  auto dy = first_second_differences(ys, spacing_);
  xd_ = std::move(dx.first);
  xdd_ = std::move(dx.second);
  yd_ = std::move(dy.first);
  ydd_ = std::move(dy.second);

  const std::size_t j = part.segment_count();
  first_step_.resize(j);
  last_step_.resize(j);
  for (std::size_t m = 0; m < j; ++m) {
    first_step_[m] = std::max<std::size_t>(part.start(m), 1);
    last_step_[m] = part.end(m) - 1;
  }
}

// drop(i) is z_{i-1} - z_i for step i in [1, n).
template <typename DropFn>
double CostModel::point_residual(std::size_t p, DropFn drop) const {
  const double h = spacing_;
  double zd = 0.0;
  double zdd = 0.0;
  if (p == 0) {
    const double z0 = 0.0;
    const double z1 = z0 - drop(1);
    const double z2 = z1 - drop(2);
    zd = stencil::forward_first(z0, z1, z2, h);
    zdd = n_ >= 4 ? stencil::forward_second(z0, z1, z2, z2 - drop(3), h)
                  : stencil::central_second(z0, z1, z2, h);
  } else if (p + 1 == n_) {
    const double z0 = 0.0;
    const double z1 = z0 + drop(p);
    const double z2 = z1 + drop(p - 1);
    zd = stencil::backward_first(z0, z1, z2, h);
    zdd = n_ >= 4 ? stencil::backward_second(z0, z1, z2, z2 + drop(p - 2), h)
                  : stencil::central_second(z2, z1, z0, h);
  } else {
    const double zm = drop(p);
    const double zp = -drop(p + 1);
    zd = stencil::central_first(zm, zp, h);
    zdd = stencil::central_second(zm, 0.0, zp, h);
  }
  const stencil::Vec3 u{xd_[p], yd_[p], zd};
  const stencil::Vec3 v{xdd_[p], ydd_[p], zdd};
  if (stencil::norm(u) < kMinSpeed3D) {
    throw GeometryError("curvature_3d: vanishing first derivative at point " + std::to_string(p));
  }
  return std::abs(planar_curvature_[p] - stencil::space_curvature(u, v));
}

double CostModel::combine(double length_sum, double variation, double curvature_sum,
                          double slope_sum, CostBreakdown* parts) const {
  const double j = static_cast<double>(lengths_.size());
  CostBreakdown c;
  c.length_term = weights_.a * std::abs(targets_.total_length - length_sum);
  c.height_term = weights_.b * std::abs(targets_.height_difference - variation);
  c.curvature_term = weights_.c / static_cast<double>(n_) * curvature_sum;
  c.slope_term = weights_.d * std::abs(slope_sum / j - targets_.average_slope);
  c.total = c.length_term + c.height_term + c.curvature_term + c.slope_term;
  if (parts != nullptr) {
    *parts = c;
  }
  return c.total;
}

CostBreakdown CostModel::evaluate(std::span<const double> heights) const {
  if (heights.size() != lengths_.size()) {
    throw OptimizerError("CostModel::evaluate: expected " + std::to_string(lengths_.size()) +
                         " heights, got " + std::to_string(heights.size()));
  }
  double length_sum = 0.0;
  double variation = 0.0;
  double slope_sum = 0.0;
  for (std::size_t m = 0; m < lengths_.size(); ++m) {
    const double g = heights[m] / lengths_[m];
    length_sum += lengths_[m] * std::sqrt(1.0 + g * g);
    variation += std::abs(heights[m]);
    slope_sum += g;
  }
  auto drop = [&](std::size_t i) {
    const std::size_t m = owner_[i];
    return steps_[i] * heights[m] / lengths_[m];
  };
  double curvature_sum = 0.0;
  for (std::size_t p = 0; p < n_; ++p) {
    curvature_sum += point_residual(p, drop);
  }
  CostBreakdown out;
  combine(length_sum, variation, curvature_sum, slope_sum, &out);
  return out;
}

void CostModel::rebase(std::span<const double> heights) {
  if (heights.size() != lengths_.size()) {
    throw OptimizerError("CostModel::rebase: height count mismatch");
  }
  base_.heights.assign(heights.begin(), heights.end());
  base_.length_sum = 0.0;
  base_.variation = 0.0;
  base_.slope_sum = 0.0;
  for (std::size_t m = 0; m < lengths_.size(); ++m) {
    const double g = heights[m] / lengths_[m];
    base_.length_sum += lengths_[m] * std::sqrt(1.0 + g * g);
    base_.variation += std::abs(heights[m]);
    base_.slope_sum += g;
  }
  const auto& hs = base_.heights;
  auto drop = [&](std::size_t i) {
    const std::size_t m = owner_[i];
    return steps_[i] * hs[m] / lengths_[m];
  };
  base_.residuals.resize(n_);
  base_.curvature_sum = 0.0;
  for (std::size_t p = 0; p < n_; ++p) {
    base_.residuals[p] = point_residual(p, drop);
    base_.curvature_sum += base_.residuals[p];
  }
  base_.total = combine(base_.length_sum, base_.variation, base_.curvature_sum,
                        base_.slope_sum, nullptr);
}

double CostModel::total_with(std::size_t m, double height) const {
  const double d = lengths_[m];
  const double g_old = base_.heights[m] / d;
  const double g_new = height / d;
  const double length_sum =
      base_.length_sum - d * std::sqrt(1.0 + g_old * g_old) + d * std::sqrt(1.0 + g_new * g_new);
  const double variation = base_.variation - std::abs(base_.heights[m]) + std::abs(height);
  const double slope_sum = base_.slope_sum - g_old + g_new;

  auto drop = [&](std::size_t i) {
    const std::size_t owner = owner_[i];
    const double h = owner == m ? height : base_.heights[owner];
    return steps_[i] * h / lengths_[owner];
  };
  const std::size_t fs = first_step_[m];
  const std::size_t ls = last_step_[m];
  const std::size_t lo = fs - 1;
  const std::size_t hi = std::min(n_ - 1, ls);
  double delta = 0.0;
  for (std::size_t p = lo; p <= hi; ++p) {
    delta += point_residual(p, drop) - base_.residuals[p];
  }
  // the one-sided end stencils reach three steps inwards
  if (lo > 0 && fs <= 3) {
    delta += point_residual(0, drop) - base_.residuals[0];
  }
  if (hi < n_ - 1 && ls + 3 >= n_) {
    delta += point_residual(n_ - 1, drop) - base_.residuals[n_ - 1];
  }
  return combine(length_sum, variation, base_.curvature_sum + delta, slope_sum, nullptr);
}

}  // namespace trackgen
