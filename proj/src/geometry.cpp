#include "slenderquad/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace slenderquad {

FiberCurve::FiberCurve(CurveKind kind, std::vector<double> parameters, double length,
                       PointFn position, PointFn tangent, PointFn second_derivative)
    : kind_(kind),
      parameters_(std::move(parameters)),
      length_(length),
      position_(std::move(position)),
      tangent_(std::move(tangent)),
      second_derivative_(std::move(second_derivative)) {
  if (!(length_ > 0.0)) throw std::invalid_argument("fiber length must be positive");
  if (!position_ || !tangent_ || !second_derivative_)
    throw std::invalid_argument("fiber curve needs position and both derivatives");
}

FiberCurve FiberCurve::transformed(const Mat3& rotation, const Vec3& shift) const {
  auto x = position_;
  auto xs = tangent_;
  auto xss = second_derivative_;
  return FiberCurve(
      CurveKind::custom, parameters_, length_,
      [x, rotation, shift](double s) -> Vec3 { return rotation * x(s) + shift; },
      [xs, rotation](double s) -> Vec3 { return rotation * xs(s); },
      [xss, rotation](double s) -> Vec3 { return rotation * xss(s); });
}

FiberCurve make_helix(double curvature, double torsion, double length) {
  if (!(curvature > 0.0)) throw std::invalid_argument("helix curvature must be positive");
  if (!(length > 0.0)) throw std::invalid_argument("helix length must be positive");
  const double k2 = curvature * curvature + torsion * torsion;
  const double a = curvature / k2;
  const double b = torsion / k2;
  const double w = std::sqrt(k2);  // angular rate 1/c
  return FiberCurve(
      CurveKind::helix, {curvature, torsion}, length,
      [=](double s) -> Vec3 { return {a * std::cos(w * s), a * std::sin(w * s), b * w * s}; },
      [=](double s) -> Vec3 {
        return {-a * w * std::sin(w * s), a * w * std::cos(w * s), b * w};
      },
      [=](double s) -> Vec3 {
        return {-a * w * w * std::cos(w * s), -a * w * w * std::sin(w * s), 0.0};
      });
}

FiberCurve make_straight(const Vec3& direction, double length) {
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("straight fiber direction must be a unit vector");
  const Vec3 d = direction;
  return FiberCurve(
      CurveKind::straight, {d.x(), d.y(), d.z()}, length,
      [d](double s) -> Vec3 { return s * d; }, [d](double) -> Vec3 { return d; },
      [](double) -> Vec3 { return Vec3::Zero(); });
}

FiberCurve make_custom(FiberCurve::PointFn position, FiberCurve::PointFn tangent,
                       FiberCurve::PointFn second_derivative, double length) {
  return FiberCurve(CurveKind::custom, {}, length, std::move(position), std::move(tangent),
                    std::move(second_derivative));
}

double arclength_defect(const FiberCurve& curve, const std::vector<double>& samples) {
  double worst = 0.0;
  for (double s : samples) {
    const Vec3 t = curve.tangent(s);
    worst = std::max(worst, std::abs(t.norm() - 1.0));
    worst = std::max(worst, std::abs(t.dot(curve.second_derivative(s))));
  }
  return worst;
}

Vec3 PanelizedCurve::interpolate(int panel, double eta) const {
  const auto& c = panel_coeffs.at(panel);
  return {legendre_eval(c[0], eta), legendre_eval(c[1], eta), legendre_eval(c[2], eta)};
}

PanelizedCurve discretize(const FiberCurve& curve, int panel_count, const QuadratureRule& rule) {
  PanelizedCurve out;
  out.grid = panelize(curve.length(), panel_count, rule);
  const int total = out.grid.node_count();
  out.positions.reserve(total);
  out.tangents.reserve(total);
  out.second_derivs.reserve(total);
  for (double s : out.grid.global_nodes) {
    out.positions.push_back(curve.position(s));
    out.tangents.push_back(curve.tangent(s));
    out.second_derivs.push_back(curve.second_derivative(s));
  }

  const int n = rule.order;
  std::vector<double> column(n);
  out.panel_coeffs.resize(panel_count);
  for (int m = 0; m < panel_count; ++m) {
    for (int c = 0; c < 3; ++c) {
      for (int l = 0; l < n; ++l) column[l] = out.positions[out.grid.global_index(m, l)][c];
      out.panel_coeffs[m][c] = to_legendre(column, rule);
    }
  }
  return out;
}

}  // namespace slenderquad
