#pragma once

// Closed-form Stokeslet of a straight segment, independent of the library's quadrature.

#include <cmath>

#include "slenderquad/geometry.hpp"

namespace analytic {

/// S[f](x) for the fiber x(s) = (s, 0, 0), s in [0, 1], constant f, and x = (x0, d, 0).
inline slenderquad::Vec3 segment_stokeslet(double x0, double d, const slenderquad::Vec3& f) {
  const double u0 = -x0, u1 = 1.0 - x0;
  const double r0 = std::hypot(u0, d), r1 = std::hypot(u1, d);
  const double i0 = std::asinh(u1 / d) - std::asinh(u0 / d);
  const double ixx = i0 - (u1 / r1 - u0 / r0);  // int u^2 / r^3
  const double ixy = d * (1.0 / r1 - 1.0 / r0);  // int (-u) d / r^3
  const double iyy = u1 / r1 - u0 / r0;          // int d^2 / r^3
  return {i0 * f.x() + ixx * f.x() + ixy * f.y(), i0 * f.y() + ixy * f.x() + iyy * f.y(), i0 * f.z()};
}

}  // namespace analytic
