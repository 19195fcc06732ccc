#pragma once

// Second-order finite-difference stencils shared by the geometry routines
// and the incremental cost model, so both evaluate identical expressions.

#include <cmath>

namespace trackgen::stencil {

inline double central_first(double fm1, double fp1, double h) { return (fp1 - fm1) / (2.0 * h); }

inline double central_second(double fm1, double f0, double fp1, double h) {
  return (fp1 - 2.0 * f0 + fm1) / (h * h);
}

inline double forward_first(double f0, double f1, double f2, double h) {
  return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
}

inline double forward_second(double f0, double f1, double f2, double f3, double h) {
  return (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
}

// f0 is the last sample, f1 the one before it, ...
inline double backward_first(double f0, double f1, double f2, double h) {
  return (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h);
}

inline double backward_second(double f0, double f1, double f2, double f3, double h) {
  return (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
}

struct Vec3 {
  double x, y, z;
};

inline double norm(const Vec3& a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

// sqrt(|u|^2 |v|^2 - (u.v)^2) / |u|^3, evaluated through |u x v|.
inline double space_curvature(const Vec3& u, const Vec3& v) {
  const Vec3 c{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
  const double speed = norm(u);
  return norm(c) / (speed * speed * speed);
}

}  // namespace trackgen::stencil
