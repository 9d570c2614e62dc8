#pragma once

// Stokeslet line integral
//   S[f](x) = int_0^L ( f(s)/|x - x(s)| + ((x - x(s)).f(s)) (x - x(s)) / |x - x(s)|^3 ) ds
// at field points x off the fiber. Panels far from x use the regular
// Gauss-Legendre rule. Near panels divide out the complex root pair of
// R^2(eta) = |x - x(eta)|^2 closest to [-1, 1] and integrate the remaining
// smooth factor against analytically known moments.

#include <complex>
#include <span>
#include <vector>

#include "slenderquad/finitepart.hpp"
#include "slenderquad/geometry.hpp"

namespace slenderquad {

struct RootPair {
  std::complex<double> z1;  ///< Im(z1) > 0; the partner root is conj(z1)
  double residual = 0.0;    ///< |R^2(z1)|
  int iterations = 0;
};

struct NearEvalConfig {
  /// A panel is near when the field point is within switch_factor * panel arclength of it.
  double switch_factor = 1.0;
  double newton_tol = 1e-13;
  int newton_max_iter = 30;
};

/// Per-call dispatch counters.
struct NearEvalStats {
  int regular_panels = 0;
  int special_panels = 0;
  int fallbacks = 0;  ///< near panels sent to regular quadrature (root not found, or not near in eta)

  NearEvalStats& operator+=(const NearEvalStats& o) {
    regular_panels += o.regular_panels;
    special_panels += o.special_panels;
    fallbacks += o.fallbacks;
    return *this;
  }
};

/// q_k = int_{-1}^{1} eta^k / |eta - z1|^p d eta for k = 0..count-1, p in {1, 3}.
std::vector<double> qkp_moments(std::complex<double> z1, int p, int count);

/// Newton iteration on R^2(eta) built from the panel's Legendre expansion.
RootPair find_root(std::span<const LegendreCoeffs, 3> panel_coeffs, const Vec3& x_bar,
                   const NearEvalConfig& cfg = {});

/// Regular composite Gauss-Legendre evaluation over the whole fiber.
Vec3 eval_S_regular(const PanelizedCurve& curve, const LineDensity& f, const Vec3& x_bar);

/// Regular contribution of a single panel.
Vec3 eval_S_regular_panel(const PanelizedCurve& curve, const LineDensity& f, int panel, const Vec3& x_bar);

/// Special contribution of one panel using the given root pair.
Vec3 eval_S_special(const PanelizedCurve& curve, const LineDensity& f, int panel, const Vec3& x_bar,
                    const RootPair& root);

/// Panel-by-panel dispatch between the regular and the special rule.
Vec3 eval_S(const PanelizedCurve& curve, const LineDensity& f, const Vec3& x_bar, const NearEvalConfig& cfg = {},
            NearEvalStats* stats = nullptr);

/// S at many field points; OpenMP over points, and the serial reference.
std::vector<Vec3> eval_S_many(const PanelizedCurve& curve, const LineDensity& f, std::span<const Vec3> points,
                              const NearEvalConfig& cfg = {}, NearEvalStats* stats = nullptr);
std::vector<Vec3> eval_S_many_serial(const PanelizedCurve& curve, const LineDensity& f,
                                     std::span<const Vec3> points, const NearEvalConfig& cfg = {},
                                     NearEvalStats* stats = nullptr);
std::vector<Vec3> eval_S_regular_many(const PanelizedCurve& curve, const LineDensity& f,
                                      std::span<const Vec3> points);

}  // namespace slenderquad
