#include "slenderquad/quadcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slenderquad {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

template <typename T>
T clenshaw_legendre(const std::vector<double>& c, T x) {
  // b_k = c_k + (2k+1)/(k+1) x b_{k+1} - (k+1)/(k+2) b_{k+2}
  T b1 = 0.0;
  T b2 = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    const T bk = c[k] + ((2.0 * k + 1.0) / (k + 1.0)) * x * b1 - ((k + 1.0) / (k + 2.0)) * b2;
    b2 = b1;
    b1 = bk;
  }
  return b1;
}

template <typename T>
T horner(const std::vector<double>& c, T x) {
  T acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <typename T>
void legendre_value_deriv(const std::vector<double>& c, T x, T& value, T& deriv) {
  const int n = static_cast<int>(c.size());
  value = 0.0;
  deriv = 0.0;
  if (n == 0) return;
  T p_prev = 1.0, p = x;
  T dp_prev = 0.0, dp = 1.0;
  value = c[0];
  if (n > 1) {
    value += c[1] * p;
    deriv += c[1] * dp;
  }
  for (int k = 1; k + 1 < n; ++k) {
    const T p_next = ((2.0 * k + 1.0) * x * p - static_cast<double>(k) * p_prev) / (k + 1.0);
    const T dp_next = dp_prev + (2.0 * k + 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
    value += c[k + 1] * p;
    deriv += c[k + 1] * dp;
  }
}

template <typename T>
void monomial_value_deriv(const std::vector<double>& c, T x, T& value, T& deriv) {
  value = 0.0;
  deriv = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    deriv = deriv * x + value;
    value = value * x + c[k];
  }
}

void require_order(int order) {
  if (order < 1 || order > kMaxRuleOrder)
    throw std::invalid_argument("quadrature order must be in [1, 64], got " + std::to_string(order));
}

}  // namespace

QuadratureRule gauss_legendre(int order) {
  require_order(order);
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);

  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like guess for the i-th largest root, refined by Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(order, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    legendre_pair(order, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[order - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[order - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

PanelGrid panelize(double fiber_length, int panel_count, const QuadratureRule& rule) {
  if (!(fiber_length > 0.0)) throw std::invalid_argument("fiber length must be positive");
  if (panel_count < 1) throw std::invalid_argument("panel count must be at least 1");
  PanelGrid grid;
  grid.rule = rule;
  grid.fiber_length = fiber_length;
  grid.panel_count = panel_count;
  grid.panel_width = fiber_length / panel_count;
  grid.global_nodes.reserve(static_cast<std::size_t>(panel_count) * rule.order);
  for (int m = 0; m < panel_count; ++m)
    for (double eta : rule.nodes) grid.global_nodes.push_back(grid.arclength(m, eta));
  return grid;
}

LegendreCoeffs to_legendre(std::span<const double> samples, const QuadratureRule& rule) {
  const int n = rule.order;
  if (static_cast<int>(samples.size()) != n)
    throw std::invalid_argument("sample count does not match rule order");
  // Discrete Legendre transform; the n-point rule is exact for P_j P_k, j,k < n.
  LegendreCoeffs out{PolyBasis::legendre, std::vector<double>(n, 0.0)};
  for (int l = 0; l < n; ++l) {
    const double x = rule.nodes[l];
    const double ws = rule.weights[l] * samples[l];
    double p0 = 1.0, p1 = x;
    out.coeffs[0] += ws;
    if (n > 1) out.coeffs[1] += ws * p1;
    for (int k = 1; k + 1 < n; ++k) {
      const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
      out.coeffs[k + 1] += ws * p1;
    }
  }
  for (int k = 0; k < n; ++k) out.coeffs[k] *= 0.5 * (2.0 * k + 1.0);
  return out;
}

LegendreCoeffs to_monomial(std::span<const double> samples, const QuadratureRule& rule) {
  if (static_cast<int>(samples.size()) != rule.order)
    throw std::invalid_argument("sample count does not match rule order");
  return {PolyBasis::monomial, solve_vandermonde(rule.nodes, samples)};
}

double legendre_eval(const LegendreCoeffs& c, double eta) {
  if (std::abs(eta) > 10.0) throw std::invalid_argument("legendre_eval: |eta| > 10");
  return c.basis == PolyBasis::legendre ? clenshaw_legendre(c.coeffs, eta) : horner(c.coeffs, eta);
}

std::complex<double> legendre_eval(const LegendreCoeffs& c, std::complex<double> eta) {
  if (std::abs(eta) > 10.0) throw std::invalid_argument("legendre_eval: |eta| > 10");
  return c.basis == PolyBasis::legendre ? clenshaw_legendre(c.coeffs, eta) : horner(c.coeffs, eta);
}

void legendre_eval_with_derivative(const LegendreCoeffs& c, std::complex<double> eta,
                                   std::complex<double>& value, std::complex<double>& deriv) {
  if (c.basis == PolyBasis::legendre)
    legendre_value_deriv(c.coeffs, eta, value, deriv);
  else
    monomial_value_deriv(c.coeffs, eta, value, deriv);
}

double legendre_derivative(const LegendreCoeffs& c, double eta) {
  double value = 0.0, deriv = 0.0;
  if (c.basis == PolyBasis::legendre)
    legendre_value_deriv(c.coeffs, eta, value, deriv);
  else
    monomial_value_deriv(c.coeffs, eta, value, deriv);
  return deriv;
}

std::vector<double> differentiation_matrix(const QuadratureRule& rule) {
  const int n = rule.order;
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> unit(n, 0.0);
  for (int k = 0; k < n; ++k) {
    std::fill(unit.begin(), unit.end(), 0.0);
    unit[k] = 1.0;
    const auto c = to_legendre(unit, rule);
    for (int l = 0; l < n; ++l) d[static_cast<std::size_t>(l) * n + k] = legendre_derivative(c, rule.nodes[l]);
  }
  return d;
}

std::vector<double> interpolate_to_uniform(std::span<const double> panel_samples,
                                           const PanelGrid& grid,
                                           std::span<const double> targets) {
  const int n = grid.order();
  if (static_cast<int>(panel_samples.size()) != grid.node_count())
    throw std::invalid_argument("interpolate_to_uniform: sample count does not match grid");

  std::vector<LegendreCoeffs> coeffs;
  coeffs.reserve(grid.panel_count);
  for (int m = 0; m < grid.panel_count; ++m)
    coeffs.push_back(to_legendre(panel_samples.subspan(static_cast<std::size_t>(m) * n, n), grid.rule));

  std::vector<double> out;
  out.reserve(targets.size());
  for (double s : targets) {
    if (s < 0.0 || s > grid.fiber_length)
      throw std::out_of_range("interpolation target outside [0, L]");
    // ceil(s/ds) - 1 puts boundary points in the lower panel.
    int m = static_cast<int>(std::ceil(s / grid.panel_width)) - 1;
    m = std::clamp(m, 0, grid.panel_count - 1);
    const double eta = std::clamp(2.0 * (s - m * grid.panel_width) / grid.panel_width - 1.0, -1.0, 1.0);
    out.push_back(legendre_eval(coeffs[m], eta));
  }
  return out;
}

}  // namespace slenderquad
