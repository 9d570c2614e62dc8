#include "slenderquad/nearsing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "slenderquad/errors.hpp"

namespace slenderquad {

namespace {

using cplx = std::complex<double>;

Vec3 stokeslet(const Vec3& r, const Vec3& f) {
  const double r2 = r.squaredNorm();
  if (r2 == 0.0) throw DivisionByZero("Stokeslet evaluated on the centerline");
  const double inv = 1.0 / std::sqrt(r2);
  return inv * f + (r.dot(f) * inv * inv * inv) * r;
}

// Bernstein ellipse parameter of z: 1 on [-1, 1], growing with distance.
double ellipse_radius(cplx z) {
  const cplx w = z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  return std::max(std::abs(w), 1.0 / std::abs(w));
}

RootPair newton(std::span<const LegendreCoeffs, 3> coeffs, const Vec3& x_bar, cplx z, const NearEvalConfig& cfg) {
  auto r2_and_deriv = [&](cplx eta, cplx& r2, cplx& dr2) {
    r2 = 0.0;
    dr2 = 0.0;
    for (int c = 0; c < 3; ++c) {
      cplx x, dx;
      legendre_eval_with_derivative(coeffs[c], eta, x, dx);
      const cplx diff = x_bar[c] - x;
      r2 += diff * diff;
      dr2 -= 2.0 * diff * dx;
    }
  };

  RootPair out;
  cplx r2, dr2;
  for (int it = 1; it <= cfg.newton_max_iter; ++it) {
    r2_and_deriv(z, r2, dr2);
    if (dr2 == 0.0) throw RootNotFound("find_root: vanishing derivative");
    const cplx step = r2 / dr2;
    z -= step;
    out.iterations = it;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 10.0)
      throw RootNotFound("find_root: Newton iteration diverged");
    if (std::abs(step) <= cfg.newton_tol * (1.0 + std::abs(z))) {
      r2_and_deriv(z, r2, dr2);
      out.z1 = z.imag() >= 0.0 ? z : std::conj(z);
      out.residual = std::abs(r2);
      return out;
    }
  }
  throw RootNotFound("find_root: no convergence within the iteration limit");
}

}  // namespace

RootPair find_root(std::span<const LegendreCoeffs, 3> coeffs, const Vec3& x_bar, const NearEvalConfig& cfg) {
  const Vec3 lo(legendre_eval(coeffs[0], -1.0), legendre_eval(coeffs[1], -1.0), legendre_eval(coeffs[2], -1.0));
  const Vec3 hi(legendre_eval(coeffs[0], 1.0), legendre_eval(coeffs[1], 1.0), legendre_eval(coeffs[2], 1.0));
  const Vec3 chord = hi - lo;
  const double h = chord.norm();
  if (h == 0.0) throw RootNotFound("find_root: degenerate panel");

  // Start 1: project onto the chord; exact for straight panels.
  const double t = (x_bar - lo).dot(chord) / (h * h);
  const double d = (x_bar - (lo + t * chord)).norm();
  std::vector<cplx> starts{{std::clamp(2.0 * t - 1.0, -1.0, 1.0), std::max(2.0 * d / h, 1e-14)}};

  // Start 2: the closest of a few samples along the panel, with the local
  // speed |dx/deta| as the length scale. Catches curved panels where the
  // chord start runs off to a distant root.
  constexpr int kSamples = 16;
  double best_d = std::numeric_limits<double>::infinity();
  double best_eta = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double eta = -1.0 + 2.0 * i / kSamples;
    const Vec3 x(legendre_eval(coeffs[0], eta), legendre_eval(coeffs[1], eta), legendre_eval(coeffs[2], eta));
    const double dist = (x_bar - x).norm();
    if (dist < best_d) {
      best_d = dist;
      best_eta = eta;
    }
  }
  const double speed = Vec3(legendre_derivative(coeffs[0], best_eta), legendre_derivative(coeffs[1], best_eta),
                            legendre_derivative(coeffs[2], best_eta))
                           .norm();
  if (speed > 0.0) starts.emplace_back(best_eta, std::max(best_d / speed, 1e-14));

  std::optional<RootPair> best;
  for (const cplx& z0 : starts) {
    try {
      RootPair r = newton(coeffs, x_bar, z0, cfg);
      if (!best || ellipse_radius(r.z1) < ellipse_radius(best->z1)) best = r;
      if (ellipse_radius(r.z1) < 1.5) break;
    } catch (const RootNotFound&) {
    }
  }
  if (!best) throw RootNotFound("find_root: Newton iteration failed from every start");
  return *best;
}

Vec3 eval_S_regular_panel(const PanelizedCurve& curve, const LineDensity& f, int panel, const Vec3& x_bar) {
  const auto& grid = curve.grid;
  Vec3 acc = Vec3::Zero();
  for (int l = 0; l < grid.order(); ++l) {
    const int j = grid.global_index(panel, l);
    acc += grid.rule.weights[l] * stokeslet(x_bar - curve.positions[j], f.samples()[j]);
  }
  return grid.jacobian() * acc;
}

Vec3 eval_S_regular(const PanelizedCurve& curve, const LineDensity& f, const Vec3& x_bar) {
  Vec3 acc = Vec3::Zero();
  for (int m = 0; m < curve.grid.panel_count; ++m) acc += eval_S_regular_panel(curve, f, m, x_bar);
  return acc;
}

Vec3 eval_S_special(const PanelizedCurve& curve, const LineDensity& f, int panel, const Vec3& x_bar,
                    const RootPair& root) {
  const auto& grid = curve.grid;
  const int n = grid.order();
  const auto& nodes = grid.rule.nodes;
  const auto w1 = solve_vandermonde_transpose(nodes, qkp_moments(root.z1, 1, n));
  const auto w3 = solve_vandermonde_transpose(nodes, qkp_moments(root.z1, 3, n));

  Vec3 acc = Vec3::Zero();
  for (int l = 0; l < n; ++l) {
    const int j = grid.global_index(panel, l);
    const Vec3 r = x_bar - curve.positions[j];
    const double r2 = r.squaredNorm();
    if (r2 == 0.0) throw DivisionByZero("Stokeslet evaluated on the centerline");
    // omega / R^2 is real and positive at real nodes, so the principal root applies.
    const double omega = std::norm(nodes[l] - root.z1);
    const double smooth = std::sqrt(omega / r2);
    const Vec3& fv = f.samples()[j];
    acc += (w1[l] * smooth) * fv + (w3[l] * smooth * smooth * smooth * r.dot(fv)) * r;
  }
  return grid.jacobian() * acc;
}

Vec3 eval_S(const PanelizedCurve& curve, const LineDensity& f, const Vec3& x_bar, const NearEvalConfig& cfg,
            NearEvalStats* stats) {
  if (!(cfg.switch_factor > 0.0)) throw std::invalid_argument("eval_S: switch_factor must be positive");
  const auto& grid = curve.grid;
  NearEvalStats local;
  Vec3 acc = Vec3::Zero();
  for (int m = 0; m < grid.panel_count; ++m) {
    double dist = std::numeric_limits<double>::infinity();
    for (int l = 0; l < grid.order(); ++l)
      dist = std::min(dist, (x_bar - curve.positions[grid.global_index(m, l)]).norm());
    if (dist == 0.0) throw DivisionByZero("eval_S: field point coincides with a node");

    if (dist > cfg.switch_factor * grid.panel_width) {
      acc += eval_S_regular_panel(curve, f, m, x_bar);
      ++local.regular_panels;
      continue;
    }
    try {
      const RootPair root = find_root(curve.panel_coeffs[m], x_bar, cfg);
      if (root.z1.imag() < 1.0 && root.z1.imag() > 0.0) {
        acc += eval_S_special(curve, f, m, x_bar, root);
        ++local.special_panels;
        continue;
      }
    } catch (const RootNotFound&) {
      ++local.fallbacks;
      acc += eval_S_regular_panel(curve, f, m, x_bar);
      continue;
    }
    acc += eval_S_regular_panel(curve, f, m, x_bar);
    ++local.regular_panels;
  }
  if (stats) *stats += local;
  return acc;
}

std::vector<Vec3> eval_S_many(const PanelizedCurve& curve, const LineDensity& f, std::span<const Vec3> points,
                              const NearEvalConfig& cfg, NearEvalStats* stats) {
  const int count = static_cast<int>(points.size());
  std::vector<Vec3> out(count);
  std::vector<NearEvalStats> per_point(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < count; ++i) out[i] = eval_S(curve, f, points[i], cfg, &per_point[i]);
  if (stats)
    for (const auto& s : per_point) *stats += s;
  return out;
}

std::vector<Vec3> eval_S_many_serial(const PanelizedCurve& curve, const LineDensity& f,
                                     std::span<const Vec3> points, const NearEvalConfig& cfg,
                                     NearEvalStats* stats) {
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(eval_S(curve, f, x, cfg, stats));
  return out;
}

std::vector<Vec3> eval_S_regular_many(const PanelizedCurve& curve, const LineDensity& f,
                                      std::span<const Vec3> points) {
  const int count = static_cast<int>(points.size());
  std::vector<Vec3> out(count);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) out[i] = eval_S_regular(curve, f, points[i]);
  return out;
}

}  // namespace slenderquad
