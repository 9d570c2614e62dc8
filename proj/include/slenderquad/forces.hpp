#pragma once

// Force densities used by the validation experiments.

#include "slenderquad/finitepart.hpp"
#include "slenderquad/geometry.hpp"

namespace slenderquad {

/// f1 = cos(2 pi s)^2 + e^{-s} + e^{-L+s}, f2 = sin(4 pi s)^2, f3 = e^{-2s}.
VectorField oscillating_force(double length);

/// f1 = x(s) + 10 (first coordinate of the centerline), f2 = sin s, f3 = cos s.
VectorField centerline_force(const FiberCurve& curve);

/// Constant density.
VectorField constant_force(const Vec3& value);

}  // namespace slenderquad
