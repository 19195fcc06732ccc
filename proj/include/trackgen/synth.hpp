#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "trackgen/geometry.hpp"

namespace trackgen {

class RecipeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A straight of `length` metres, or a circular arc of `radius` metres
/// turning by `sweep` radians (positive = left). Primitives join
/// tangent-continuously. `slope`, when set, is the true drop per planar
/// metre used for ground-truth elevation.
struct Primitive {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  double length = 0.0;
  double radius = 0.0;
  double sweep = 0.0;
  std::optional<double> slope;

  static Primitive line(double length, std::optional<double> slope = std::nullopt) {
    return {Kind::Line, length, 0.0, 0.0, slope};
  }
  static Primitive arc(double radius, double sweep, std::optional<double> slope = std::nullopt) {
    return {Kind::Arc, 0.0, radius, sweep, slope};
  }
  [[nodiscard]] double arc_length() const;
};

struct SynthRecipe {
  std::vector<Primitive> primitives;
  double start_heading = 0.0;  // radians from +x

  void validate() const;
  [[nodiscard]] double total_length() const;
  /// True when every primitive carries a slope.
  [[nodiscard]] bool has_slopes() const;
};

/// Arc-length evaluation of the composed planar path.
class TrackPath {
 public:
  explicit TrackPath(SynthRecipe recipe);

  [[nodiscard]] double length() const { return total_; }
  [[nodiscard]] Point2D position(double s) const;
  [[nodiscard]] double heading(double s) const;
  /// Integral of the primitive slopes over [0, s].
  [[nodiscard]] double drop_until(double s) const;
  [[nodiscard]] const std::vector<double>& joints() const { return joint_s_; }

 private:
  struct Placed {
    Primitive primitive;
    double s0;
    Point2D origin;
    double heading0;
  };
  [[nodiscard]] const Placed& locate(double s) const;

  SynthRecipe recipe_;
  std::vector<Placed> placed_;
  std::vector<double> joint_s_;
  double total_ = 0.0;
};

struct SynthTrack {
  Polyline2D planar;
  std::optional<Polyline3D> truth;  // present when the recipe carries slopes
  double net_drop = 0.0;
};

/// Samples the recipe at uniform arc length (effective spacing
/// total / round(total / spacing)); endpoints included.
SynthTrack synth_track(const SynthRecipe& recipe, double spacing);

}  // namespace trackgen
