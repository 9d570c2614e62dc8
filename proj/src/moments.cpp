// Moments q_k^p(z) = int_{-1}^{1} eta^k / |eta - z|^p d eta, p = 1, 3.
//
// With z = a + ib and u(eta) = sqrt((eta - a)^2 + b^2):
//   p = 1:  k q_k = [eta^{k-1} u] + (2k - 1) a q_{k-1} - (k - 1)|z|^2 q_{k-2}
//   p = 3:  q_k   = q^{(1)}_{k-2} + 2a q_{k-1} - |z|^2 q_{k-2}
// Both upward recursions have homogeneous solutions growing like |z|^k, so
// they are used only for |z| <= kRecursionRadius. Outside that disc the
// moments come from a graded composite Gauss-Legendre rule.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slenderquad/nearsing.hpp"
#include "slenderquad/quadcore.hpp"

namespace slenderquad {

namespace {

constexpr double kRecursionRadius = 1.5;
constexpr int kGradedOrder = 24;

std::vector<double> recursion_p1(double a, double b, int count) {
  std::vector<double> q(count, 0.0);
  const double u_hi = std::hypot(1.0 - a, b);
  const double u_lo = std::hypot(1.0 + a, b);
  const double z2 = a * a + b * b;
  q[0] = std::asinh((1.0 - a) / b) + std::asinh((1.0 + a) / b);
  if (count > 1) q[1] = u_hi - u_lo + a * q[0];
  for (int k = 2; k < count; ++k) {
    const double boundary = u_hi - ((k - 1) % 2 == 0 ? u_lo : -u_lo);
    q[k] = (boundary + (2.0 * k - 1.0) * a * q[k - 1] - (k - 1.0) * z2 * q[k - 2]) / k;
  }
  return q;
}

// [(eta - a) / (b^2 u)] between -1 and 1, without cancellation when a is
// outside (-1, 1).
double base_p3(double a, double b) {
  const double t_hi = 1.0 - a;
  const double t_lo = -1.0 - a;
  const double u_hi = std::hypot(t_hi, b);
  const double u_lo = std::hypot(t_lo, b);
  if (t_hi > 0.0 && t_lo < 0.0) return (t_hi / u_hi - t_lo / u_lo) / (b * b);
  const double x = (b / t_hi) * (b / t_hi);
  const double y = (b / t_lo) * (b / t_lo);
  const double sx = std::sqrt(1.0 + x);
  const double sy = std::sqrt(1.0 + y);
  const double sign = t_hi > 0.0 ? 1.0 : -1.0;
  return sign * (-4.0 * a) / (t_hi * t_hi * t_lo * t_lo * sx * sy * (sx + sy));
}

std::vector<double> recursion_p3(double a, double b, int count) {
  std::vector<double> q(count, 0.0);
  const auto q1 = recursion_p1(a, b, std::max(count - 2, 1));
  const double z2 = a * a + b * b;
  q[0] = base_p3(a, b);
  if (count > 1) q[1] = 1.0 / std::hypot(1.0 + a, b) - 1.0 / std::hypot(1.0 - a, b) + a * q[0];
  for (int k = 2; k < count; ++k) q[k] = q1[k - 2] + 2.0 * a * q[k - 1] - z2 * q[k - 2];
  return q;
}

// Panels graded geometrically away from the point of [-1, 1] closest to z.
std::vector<double> graded_quadrature(double a, double b, int p, int count) {
  static const QuadratureRule rule = gauss_legendre(kGradedOrder);
  const double c = std::clamp(a, -1.0, 1.0);
  const double delta = std::max(std::hypot(a - c, b), 1e-300);
  std::vector<double> q(count, 0.0);

  auto integrate_panel = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (int l = 0; l < rule.order; ++l) {
      const double eta = mid + half * rule.nodes[l];
      const double u = std::hypot(eta - a, b);
      const double w = half * rule.weights[l] / (p == 1 ? u : u * u * u);
      double power = 1.0;
      for (int k = 0; k < count; ++k) {
        q[k] += w * power;
        power *= eta;
      }
    }
  };

  for (double end : {-1.0, 1.0}) {
    const double span = std::abs(end - c);
    if (span == 0.0) continue;
    const double dir = end > c ? 1.0 : -1.0;
    double inner = 0.0;
    double width = std::min(delta, span);
    while (inner < span) {
      const double outer = std::min(span, inner + width);
      integrate_panel(std::min(c + dir * inner, c + dir * outer), std::max(c + dir * inner, c + dir * outer));
      inner = outer;
      width *= 2.0;
    }
  }
  return q;
}

}  // namespace

std::vector<double> qkp_moments(std::complex<double> z1, int p, int count) {
  if (!(z1.imag() > 0.0)) throw std::invalid_argument("qkp_moments: Im(z1) must be positive");
  if (p != 1 && p != 3) throw std::invalid_argument("qkp_moments: p must be 1 or 3");
  if (count < 1 || count > kMaxRuleOrder) throw std::invalid_argument("qkp_moments: count out of range");
  const double a = z1.real();
  const double b = z1.imag();
  if (std::abs(z1) > kRecursionRadius) return graded_quadrature(a, b, p, count);
  return p == 1 ? recursion_p1(a, b, count) : recursion_p3(a, b, count);
}

}  // namespace slenderquad
