#include "slenderquad/forces.hpp"

#include <cmath>
#include <numbers>

namespace slenderquad {

VectorField oscillating_force(double length) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return {
      [length](double s) -> Vec3 {
        const double c = std::cos(two_pi * s);
        const double sn = std::sin(2.0 * two_pi * s);
        return {c * c + std::exp(-s) + std::exp(-length + s), sn * sn, std::exp(-2.0 * s)};
      },
      [length](double s) -> Vec3 {
        return {-two_pi * std::sin(2.0 * two_pi * s) - std::exp(-s) + std::exp(-length + s),
                2.0 * two_pi * std::sin(4.0 * two_pi * s), -2.0 * std::exp(-2.0 * s)};
      }};
}

VectorField centerline_force(const FiberCurve& curve) {
  return {[curve](double s) -> Vec3 { return {curve.position(s).x() + 10.0, std::sin(s), std::cos(s)}; },
          [curve](double s) -> Vec3 { return {curve.tangent(s).x(), std::cos(s), -std::sin(s)}; }};
}

VectorField constant_force(const Vec3& value) {
  return {[value](double) -> Vec3 { return value; }, [](double) -> Vec3 { return Vec3::Zero(); }};
}

}  // namespace slenderquad
