#include "trackgen/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trackgen {

double Primitive::arc_length() const {
  return kind == Kind::Line ? length : radius * std::abs(sweep);
}

void SynthRecipe::validate() const {
  if (primitives.empty()) {
    throw RecipeError("recipe has no primitives");
  }
  for (std::size_t i = 0; i < primitives.size(); ++i) {
    const auto& p = primitives[i];
    const std::string where = "primitive " + std::to_string(i) + ": ";
    if (p.kind == Primitive::Kind::Line && !(p.length > 0.0)) {
      throw RecipeError(where + "line length must be positive");
    }
    if (p.kind == Primitive::Kind::Arc) {
      if (!(p.radius > 0.0)) {
        throw RecipeError(where + "arc radius must be positive");
      }
      if (p.sweep == 0.0 || !std::isfinite(p.sweep)) {
        throw RecipeError(where + "arc sweep must be non-zero");
      }
    }
    if (p.slope && !std::isfinite(*p.slope)) {
      throw RecipeError(where + "slope must be finite");
    }
  }
}

double SynthRecipe::total_length() const {
  double sum = 0.0;
  for (const auto& p : primitives) {
    sum += p.arc_length();
  }
  return sum;
}

bool SynthRecipe::has_slopes() const {
  return std::all_of(primitives.begin(), primitives.end(),
                     [](const Primitive& p) { return p.slope.has_value(); });
}

TrackPath::TrackPath(SynthRecipe recipe) : recipe_(std::move(recipe)) {
  recipe_.validate();
  Point2D origin{0.0, 0.0};
  double heading = recipe_.start_heading;
  double s = 0.0;
  for (const auto& p : recipe_.primitives) {
    placed_.push_back({p, s, origin, heading});
    const double len = p.arc_length();
    if (p.kind == Primitive::Kind::Line) {
      origin = {origin.x + len * std::cos(heading), origin.y + len * std::sin(heading)};
    } else {
      const double sign = p.sweep > 0.0 ? 1.0 : -1.0;
      const double end_heading = heading + p.sweep;
      origin = {origin.x + sign * p.radius * (std::sin(end_heading) - std::sin(heading)),
                origin.y - sign * p.radius * (std::cos(end_heading) - std::cos(heading))};
      heading = end_heading;
    }
    s += len;
    joint_s_.push_back(s);
  }
  joint_s_.pop_back();
  total_ = s;
}

const TrackPath::Placed& TrackPath::locate(double s) const {
  auto it = std::upper_bound(placed_.begin(), placed_.end(), s,
                             [](double value, const Placed& p) { return value < p.s0; });
  return it == placed_.begin() ? placed_.front() : *std::prev(it);
}

Point2D TrackPath::position(double s) const {
  s = std::clamp(s, 0.0, total_);
  const Placed& p = locate(s);
  const double t = s - p.s0;
  if (p.primitive.kind == Primitive::Kind::Line) {
    return {p.origin.x + t * std::cos(p.heading0), p.origin.y + t * std::sin(p.heading0)};
  }
  const double sign = p.primitive.sweep > 0.0 ? 1.0 : -1.0;
  const double h = p.heading0 + sign * t / p.primitive.radius;
  return {p.origin.x + sign * p.primitive.radius * (std::sin(h) - std::sin(p.heading0)),
          p.origin.y - sign * p.primitive.radius * (std::cos(h) - std::cos(p.heading0))};
}

double TrackPath::heading(double s) const {
  s = std::clamp(s, 0.0, total_);
  const Placed& p = locate(s);
  if (p.primitive.kind == Primitive::Kind::Line) {
    return p.heading0;
  }
  const double sign = p.primitive.sweep > 0.0 ? 1.0 : -1.0;
  return p.heading0 + sign * (s - p.s0) / p.primitive.radius;
}

double TrackPath::drop_until(double s) const {
  s = std::clamp(s, 0.0, total_);
  double drop = 0.0;
  for (const auto& p : placed_) {
    if (p.s0 >= s) {
      break;
    }
    const double covered = std::min(s - p.s0, p.primitive.arc_length());
    drop += covered * p.primitive.slope.value_or(0.0);
  }
  return drop;
}

SynthTrack synth_track(const SynthRecipe& recipe, double spacing) {
  recipe.validate();
  if (!(spacing > 0.0)) {
    throw RecipeError("spacing must be positive");
  }
  const TrackPath path(recipe);
  const double total = path.length();
  if (spacing > total / 2.0) {
    throw RecipeError("spacing exceeds half the track length");
  }
  const auto intervals = static_cast<std::size_t>(std::max(2.0, std::round(total / spacing)));
  const double step = total / static_cast<double>(intervals);

  SynthTrack out;
  out.planar.spacing = step;
  out.planar.points.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double s = i == intervals ? total : step * static_cast<double>(i);
    out.planar.points.push_back(path.position(s));
  }
  out.net_drop = path.drop_until(total);

  if (recipe.has_slopes()) {
    Polyline3D truth;
    truth.spacing = step;
    truth.points.reserve(out.planar.size());
    for (std::size_t i = 0; i <= intervals; ++i) {
      const double s = i == intervals ? total : step * static_cast<double>(i);
      const Point2D& p = out.planar.points[i];
      truth.points.push_back({p.x, p.y, out.net_drop - path.drop_until(s)});
    }
    out.truth = std::move(truth);
  }
  return out;
}

}  // namespace trackgen
