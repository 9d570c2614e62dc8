#include "slenderquad/finitepart.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slenderquad {

namespace {

// Spectral derivative d/ds of node samples, panel by panel.
template <typename T>
std::vector<T> spectral_derivative(const std::vector<T>& samples, const PanelGrid& grid, const T& zero) {
  const int n = grid.order();
  const auto d = differentiation_matrix(grid.rule);
  const double scale = 1.0 / grid.jacobian();
  std::vector<T> out(samples.size(), zero);
  for (int m = 0; m < grid.panel_count; ++m) {
    for (int l = 0; l < n; ++l) {
      T acc = zero;
      for (int k = 0; k < n; ++k) acc += d[static_cast<std::size_t>(l) * n + k] * samples[grid.global_index(m, k)];
      out[grid.global_index(m, l)] = scale * acc;
    }
  }
  return out;
}

void check_size(std::size_t samples, const PanelGrid& grid) {
  if (samples != static_cast<std::size_t>(grid.node_count()))
    throw std::invalid_argument("density sample count must equal panel_count * order");
}

// Off-diagonal g with the length ratio formed before it multiplies anything.
Vec3 g_offdiag(const Vec3& x_node, const Vec3& x_target, double s_node, double s_target,
               const Vec3& tangent_target, const Vec3& f_node, const Vec3& f_target) {
  const Vec3 r = x_node - x_target;
  const double rlen = r.norm();
  const double ds = s_node - s_target;
  const double ratio = std::abs(ds) / rlen;
  const Vec3 rhat = r / rlen;
  const Vec3 near = ratio * (f_node + rhat * rhat.dot(f_node));
  const Vec3 local = f_target + tangent_target * tangent_target.dot(f_target);
  return (near - local) / ds;
}

Vec3 g_limit(const Vec3& xs, const Vec3& xss, const Vec3& f, const Vec3& df) {
  return 0.5 * (xs * xss.dot(f) + xss * xs.dot(f)) + df + xs * xs.dot(df);
}

}  // namespace

ScalarDensity::ScalarDensity(std::vector<double> samples, const PanelGrid& grid)
    : samples_(std::move(samples)) {
  check_size(samples_.size(), grid);
  derivatives_ = spectral_derivative(samples_, grid, 0.0);
}

ScalarDensity::ScalarDensity(const ScalarField& field, const PanelGrid& grid) {
  samples_.reserve(grid.global_nodes.size());
  for (double s : grid.global_nodes) samples_.push_back(field.value(s));
  if (field.derivative) {
    for (double s : grid.global_nodes) derivatives_.push_back(field.derivative(s));
  } else {
    derivatives_ = spectral_derivative(samples_, grid, 0.0);
  }
}

LineDensity::LineDensity(std::vector<Vec3> samples, const PanelGrid& grid) : samples_(std::move(samples)) {
  check_size(samples_.size(), grid);
  derivatives_ = spectral_derivative(samples_, grid, Vec3::Zero().eval());
}

LineDensity::LineDensity(const VectorField& field, const PanelGrid& grid) {
  samples_.reserve(grid.global_nodes.size());
  for (double s : grid.global_nodes) samples_.push_back(field.value(s));
  if (field.derivative) {
    for (double s : grid.global_nodes) derivatives_.push_back(field.derivative(s));
  } else {
    derivatives_ = spectral_derivative(samples_, grid, Vec3::Zero().eval());
  }
}

std::vector<double> LineDensity::component(int c) const {
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto& v : samples_) out.push_back(v[c]);
  return out;
}

SlenderParams::SlenderParams(double epsilon, double mu) : epsilon_(epsilon), mu_(mu) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(mu > 0.0)) throw std::invalid_argument("viscosity must be positive");
}

double SlenderParams::c() const { return std::log(epsilon_ * epsilon_ * std::numbers::e); }

double qk_signkernel(int k, double eta_bar) {
  if (k < 0 || k > 63) throw std::invalid_argument("qk_signkernel: k must be in [0, 63]");
  if (!(eta_bar >= -1.0 && eta_bar <= 1.0))
    throw std::invalid_argument("qk_signkernel: eta_bar must be in [-1, 1]");
  const double alternating = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k+1)
  return (1.0 + alternating - 2.0 * std::pow(eta_bar, k + 1)) / (k + 1);
}

ModifiedWeightTable build_weight_table(const QuadratureRule& rule) {
  const int n = rule.order;
  ModifiedWeightTable table;
  table.order = n;
  table.weights.resize(static_cast<std::size_t>(n) * n);
  std::vector<double> q(n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) q[k] = qk_signkernel(k, rule.nodes[l]);
    const auto b = solve_vandermonde_transpose(rule.nodes, q);
    std::copy(b.begin(), b.end(), table.weights.begin() + static_cast<std::ptrdiff_t>(l) * n);
  }
  return table;
}

double g0_scalar(const ScalarField& f, double s, double s_bar) {
  if (s == s_bar) return f.derivative(s_bar);
  return (f.value(s) - f.value(s_bar)) / (s - s_bar);
}

Vec3 g_vector(const PanelizedCurve& curve, const LineDensity& f, int node, int target) {
  const auto& grid = curve.grid;
  if (node < 0 || target < 0 || node >= grid.node_count() || target >= grid.node_count())
    throw std::out_of_range("g_vector: node index outside grid");
  if (node == target)
    return g_limit(curve.tangents[target], curve.second_derivs[target], f.samples()[target],
                   f.derivatives()[target]);
  return g_offdiag(curve.positions[node], curve.positions[target], grid.global_nodes[node],
                   grid.global_nodes[target], curve.tangents[target], f.samples()[node],
                   f.samples()[target]);
}

Vec3 g_vector_at(const FiberCurve& curve, const VectorField& f, double s, double s_bar) {
  if (s == s_bar) return g_vector_limit(curve, f, s_bar);
  return g_offdiag(curve.position(s), curve.position(s_bar), s, s_bar, curve.tangent(s_bar), f.value(s),
                   f.value(s_bar));
}

Vec3 g_vector_limit(const FiberCurve& curve, const VectorField& f, double s_bar) {
  return g_limit(curve.tangent(s_bar), curve.second_derivative(s_bar), f.value(s_bar), f.derivative(s_bar));
}

double eval_L(const ScalarDensity& f, const PanelGrid& grid, const ModifiedWeightTable& table, int target) {
  if (target < 0 || target >= grid.node_count()) throw std::out_of_range("eval_L: target outside grid");
  if (table.order != grid.order()) throw std::invalid_argument("eval_L: weight table order mismatch");
  const int n = grid.order();
  const int self = grid.panel_of(target);
  const auto& fs = f.samples();
  const double f_bar = fs[target];
  const double s_bar = grid.global_nodes[target];

  double acc = 0.0;
  for (int m = 0; m < grid.panel_count; ++m) {
    double panel = 0.0;
    if (m == self) {
      const auto b = table.row(grid.local_of(target));
      for (int k = 0; k < n; ++k) {
        const int j = grid.global_index(m, k);
        const double g0 = (j == target) ? f.derivatives()[target] : (fs[j] - f_bar) / (grid.global_nodes[j] - s_bar);
        panel += b[k] * g0;
      }
    } else {
      for (int k = 0; k < n; ++k) {
        const int j = grid.global_index(m, k);
        panel += grid.rule.weights[k] * (fs[j] - f_bar) / (grid.global_nodes[j] - s_bar);
      }
      if (m < self) panel = -panel;
    }
    acc += panel;
  }
  return grid.jacobian() * acc;
}

Vec3 eval_K(const PanelizedCurve& curve, const LineDensity& f, const ModifiedWeightTable& table, int target) {
  const auto& grid = curve.grid;
  if (target < 0 || target >= grid.node_count()) throw std::out_of_range("eval_K: target outside grid");
  if (table.order != grid.order()) throw std::invalid_argument("eval_K: weight table order mismatch");
  if (f.size() != static_cast<std::size_t>(grid.node_count()))
    throw std::invalid_argument("eval_K: density not sampled on the curve's grid");
  const int n = grid.order();
  const int self = grid.panel_of(target);

  Vec3 acc = Vec3::Zero();
  for (int m = 0; m < grid.panel_count; ++m) {
    Vec3 panel = Vec3::Zero();
    if (m == self) {
      const auto b = table.row(grid.local_of(target));
      for (int k = 0; k < n; ++k) panel += b[k] * g_vector(curve, f, grid.global_index(m, k), target);
    } else {
      for (int k = 0; k < n; ++k)
        panel += grid.rule.weights[k] * g_vector(curve, f, grid.global_index(m, k), target);
      if (m < self) panel = -panel;
    }
    acc += panel;
  }
  return grid.jacobian() * acc;
}

Vec3 eval_Lambda(const PanelizedCurve& curve, const LineDensity& f, const SlenderParams& params, int target,
                 LocalOperatorForm form) {
  if (target < 0 || target >= curve.node_count()) throw std::out_of_range("eval_Lambda: target outside grid");
  const double c = params.c();
  if (!(c < 0.0)) throw std::invalid_argument("eval_Lambda: requires epsilon < exp(-1/2) so that c < 0");
  const Vec3& t = curve.tangents[target];
  const Vec3& fv = f.samples()[target];
  const Vec3 tt_f = t * t.dot(fv);
  const Vec3 local = form == LocalOperatorForm::two_identity ? Vec3(2.0 * fv - tt_f) : Vec3(2.0 * (fv - tt_f));
  return -c * (fv + tt_f) + local;
}

std::vector<double> apply_L(const ScalarDensity& f, const PanelGrid& grid, const ModifiedWeightTable& table) {
  const int total = grid.node_count();
  std::vector<double> out(total);
#pragma omp parallel for schedule(static)
  for (int t = 0; t < total; ++t) out[t] = eval_L(f, grid, table, t);
  return out;
}

std::vector<double> apply_L_serial(const ScalarDensity& f, const PanelGrid& grid,
                                   const ModifiedWeightTable& table) {
  std::vector<double> out(grid.node_count());
  for (int t = 0; t < grid.node_count(); ++t) out[t] = eval_L(f, grid, table, t);
  return out;
}

std::vector<Vec3> apply_K(const PanelizedCurve& curve, const LineDensity& f, const ModifiedWeightTable& table) {
  const int total = curve.node_count();
  std::vector<Vec3> out(total);
#pragma omp parallel for schedule(static)
  for (int t = 0; t < total; ++t) out[t] = eval_K(curve, f, table, t);
  return out;
}

std::vector<Vec3> apply_K_serial(const PanelizedCurve& curve, const LineDensity& f,
                                 const ModifiedWeightTable& table) {
  std::vector<Vec3> out(curve.node_count());
  for (int t = 0; t < curve.node_count(); ++t) out[t] = eval_K(curve, f, table, t);
  return out;
}

std::vector<Vec3> centerline_velocity(const PanelizedCurve& curve, const LineDensity& f,
                                      const SlenderParams& params, const BackgroundFlow& background,
                                      const ModifiedWeightTable& table, LocalOperatorForm form) {
  const int total = curve.node_count();
  const double scale = 1.0 / (8.0 * std::numbers::pi * params.mu());
  std::vector<Vec3> out(total);
#pragma omp parallel for schedule(static)
  for (int t = 0; t < total; ++t) {
    const Vec3 forcing = eval_Lambda(curve, f, params, t, form) + eval_K(curve, f, table, t);
    out[t] = background(curve.positions[t]) - scale * forcing;
  }
  return out;
}

}  // namespace slenderquad
