#pragma once

// Arclength-parameterized fiber centerlines and their panel discretization.

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "slenderquad/quadcore.hpp"

namespace slenderquad {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class CurveKind { straight, helix, custom };

/// A centerline x(s), s in [0, L], with its first two arclength derivatives.
class FiberCurve {
public:
  using PointFn = std::function<Vec3(double)>;

  FiberCurve(CurveKind kind, std::vector<double> parameters, double length, PointFn position,
             PointFn tangent, PointFn second_derivative);

  CurveKind kind() const { return kind_; }
  const std::vector<double>& parameters() const { return parameters_; }
  double length() const { return length_; }

  Vec3 position(double s) const { return position_(s); }
  Vec3 tangent(double s) const { return tangent_(s); }
  Vec3 second_derivative(double s) const { return second_derivative_(s); }

  /// Rigidly moved copy: x -> rotation * x + shift. The result is a custom curve.
  FiberCurve transformed(const Mat3& rotation, const Vec3& shift) const;

private:
  CurveKind kind_;
  std::vector<double> parameters_;
  double length_;
  PointFn position_;
  PointFn tangent_;
  PointFn second_derivative_;
};

/// Constant curvature/torsion helix around the z axis, starting at (a, 0, 0).
FiberCurve make_helix(double curvature, double torsion, double length);
FiberCurve make_straight(const Vec3& direction, double length);
/// Caller guarantees arclength parameterization; see arclength_defect().
FiberCurve make_custom(FiberCurve::PointFn position, FiberCurve::PointFn tangent,
                       FiberCurve::PointFn second_derivative, double length);

/// Largest of | |x_s| - 1 | and |x_s . x_ss| over the given arclength samples.
double arclength_defect(const FiberCurve& curve, const std::vector<double>& samples);

struct PanelizedCurve {
  PanelGrid grid;
  std::vector<Vec3> positions;
  std::vector<Vec3> tangents;
  std::vector<Vec3> second_derivs;
  /// panel_coeffs[m][c]: Legendre coefficients of coordinate c on panel m.
  std::vector<std::array<LegendreCoeffs, 3>> panel_coeffs;

  int node_count() const { return grid.node_count(); }
  /// Interpolated position on panel m at local coordinate eta.
  Vec3 interpolate(int panel, double eta) const;
};

PanelizedCurve discretize(const FiberCurve& curve, int panel_count, const QuadratureRule& rule);

}  // namespace slenderquad
