#pragma once

// Panel-based Gauss-Legendre quadrature, Legendre transforms and
// Vandermonde solvers shared by every other module.

#include <complex>
#include <span>
#include <vector>

namespace slenderquad {

inline constexpr int kMaxRuleOrder = 64;

/// Gauss-Legendre nodes (increasing) and weights on [-1, 1].
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int order);

/// [0, L] split into equal panels, each carrying a copy of the rule.
struct PanelGrid {
  QuadratureRule rule;
  double fiber_length = 0.0;
  int panel_count = 0;
  double panel_width = 0.0;
  std::vector<double> global_nodes;

  int order() const { return rule.order; }
  int node_count() const { return panel_count * rule.order; }
  int panel_of(int global_index) const { return global_index / rule.order; }
  int local_of(int global_index) const { return global_index % rule.order; }
  int global_index(int panel, int local) const { return panel * rule.order + local; }

  /// Arclength of local coordinate eta on the given panel.
  double arclength(int panel, double eta) const {
    return panel * panel_width + 0.5 * panel_width * (eta + 1.0);
  }
  /// Half panel width, the Jacobian ds/deta.
  double jacobian() const { return 0.5 * panel_width; }
};

PanelGrid panelize(double fiber_length, int panel_count, const QuadratureRule& rule);

enum class PolyBasis { legendre, monomial };

/// Coefficients of a degree < n polynomial on [-1, 1], tagged with their basis.
struct LegendreCoeffs {
  PolyBasis basis = PolyBasis::legendre;
  std::vector<double> coeffs;
};

/// Exact interpolation of node samples in the Legendre basis.
LegendreCoeffs to_legendre(std::span<const double> samples, const QuadratureRule& rule);

/// Exact interpolation of node samples in the monomial basis.
LegendreCoeffs to_monomial(std::span<const double> samples, const QuadratureRule& rule);

double legendre_eval(const LegendreCoeffs& c, double eta);
std::complex<double> legendre_eval(const LegendreCoeffs& c, std::complex<double> eta);

/// Value and eta-derivative of the expansion in one pass.
void legendre_eval_with_derivative(const LegendreCoeffs& c, std::complex<double> eta,
                                   std::complex<double>& value, std::complex<double>& deriv);
double legendre_derivative(const LegendreCoeffs& c, double eta);

/// Row-major n x n matrix D with (D p)_l = d/deta of the interpolant of p at node l.
std::vector<double> differentiation_matrix(const QuadratureRule& rule);

/// Solves sum_l nodes_l^k b_l = rhs_k, k = 0..n-1 (the transposed Vandermonde
/// system A^T b = rhs with A_lk = nodes_l^k) by Bjorck-Pereyra elimination.
std::vector<double> solve_vandermonde_transpose(std::span<const double> nodes,
                                                std::span<const double> rhs);

/// Solves sum_k c_k nodes_l^k = rhs_l (monomial interpolation, A c = rhs).
std::vector<double> solve_vandermonde(std::span<const double> nodes, std::span<const double> rhs);

/// Evaluates the per-panel Legendre interpolant of node samples at arclength
/// targets. A target on a panel boundary belongs to the lower panel.
std::vector<double> interpolate_to_uniform(std::span<const double> panel_samples,
                                           const PanelGrid& grid,
                                           std::span<const double> targets);

}  // namespace slenderquad
