#pragma once

// Local operator Lambda, the model finite-part operator L and the full
// non-local operator K. The self panel of every target is integrated with
// precomputed product-integration weights for the sign kernel
// (s - s')/|s - s'|; all other panels use plain Gauss-Legendre weights.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "slenderquad/geometry.hpp"
#include "slenderquad/quadcore.hpp"

namespace slenderquad {

/// Closure pair for an analytically known scalar density.
struct ScalarField {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// Closure pair for an analytically known force density.
struct VectorField {
  std::function<Vec3(double)> value;
  std::function<Vec3(double)> derivative;
};

/// Scalar samples at every grid node together with their arclength derivative.
class ScalarDensity {
public:
  /// Derivatives from spectral differentiation of each panel's interpolant.
  ScalarDensity(std::vector<double> samples, const PanelGrid& grid);
  /// Samples and derivatives taken from the closures.
  ScalarDensity(const ScalarField& field, const PanelGrid& grid);

  const std::vector<double>& samples() const { return samples_; }
  const std::vector<double>& derivatives() const { return derivatives_; }

private:
  std::vector<double> samples_;
  std::vector<double> derivatives_;
};

/// Force per unit length f(s) at every grid node, plus f'(s).
class LineDensity {
public:
  LineDensity(std::vector<Vec3> samples, const PanelGrid& grid);
  LineDensity(const VectorField& field, const PanelGrid& grid);

  const std::vector<Vec3>& samples() const { return samples_; }
  const std::vector<Vec3>& derivatives() const { return derivatives_; }
  std::size_t size() const { return samples_.size(); }
  /// Component c of every sample, for scalar operators.
  std::vector<double> component(int c) const;

private:
  std::vector<Vec3> samples_;
  std::vector<Vec3> derivatives_;
};

/// b(eta_l) for every node of a reference panel: weights[l * n + k] is the
/// weight of node k when the sign kernel jumps at node l.
struct ModifiedWeightTable {
  int order = 0;
  std::vector<double> weights;

  double operator()(int target, int node) const { return weights[static_cast<std::size_t>(target) * order + node]; }
  std::span<const double> row(int target) const {
    return {weights.data() + static_cast<std::size_t>(target) * order, static_cast<std::size_t>(order)};
  }
};

/// Slenderness eps in (0, 1) and viscosity mu; c = log(eps^2 e) is derived.
class SlenderParams {
public:
  SlenderParams(double epsilon, double mu = 1.0);
  double epsilon() const { return epsilon_; }
  double mu() const { return mu_; }
  double c() const;

private:
  double epsilon_;
  double mu_;
};

/// How the "2 - ss" term of Lambda is read: 2I - ss (default) or 2(I - ss).
enum class LocalOperatorForm { two_identity, two_projector };

/// int_{-1}^{1} eta^k sign(eta - eta_bar) d eta.
double qk_signkernel(int k, double eta_bar);

ModifiedWeightTable build_weight_table(const QuadratureRule& rule);

/// (f(s) - f(s_bar)) / (s - s_bar), or f'(s_bar) when s == s_bar.
double g0_scalar(const ScalarField& f, double s, double s_bar);

/// Smooth factor of the K integrand between grid nodes; the diagonal uses
/// the analytic limit.
Vec3 g_vector(const PanelizedCurve& curve, const LineDensity& f, int node_index, int target_index);

/// The same factor from closures at arbitrary s != s_bar.
Vec3 g_vector_at(const FiberCurve& curve, const VectorField& f, double s, double s_bar);
/// lim_{s -> s_bar} of g_vector_at.
Vec3 g_vector_limit(const FiberCurve& curve, const VectorField& f, double s_bar);

double eval_L(const ScalarDensity& f, const PanelGrid& grid, const ModifiedWeightTable& table,
              int target_index);
Vec3 eval_K(const PanelizedCurve& curve, const LineDensity& f, const ModifiedWeightTable& table,
            int target_index);
Vec3 eval_Lambda(const PanelizedCurve& curve, const LineDensity& f, const SlenderParams& params,
                 int target_index, LocalOperatorForm form = LocalOperatorForm::two_identity);

/// L or K at every node. The plain versions run the target loop with
/// OpenMP; the _serial versions are the single-threaded reference. Both
/// produce bit-identical output.
std::vector<double> apply_L(const ScalarDensity& f, const PanelGrid& grid, const ModifiedWeightTable& table);
std::vector<double> apply_L_serial(const ScalarDensity& f, const PanelGrid& grid,
                                   const ModifiedWeightTable& table);
std::vector<Vec3> apply_K(const PanelizedCurve& curve, const LineDensity& f, const ModifiedWeightTable& table);
std::vector<Vec3> apply_K_serial(const PanelizedCurve& curve, const LineDensity& f,
                                 const ModifiedWeightTable& table);

using BackgroundFlow = std::function<Vec3(const Vec3&)>;

/// dx/dt at every node: u_inf(x) - (Lambda[f] + K[f]) / (8 pi mu).
std::vector<Vec3> centerline_velocity(const PanelizedCurve& curve, const LineDensity& f,
                                      const SlenderParams& params, const BackgroundFlow& background,
                                      const ModifiedWeightTable& table,
                                      LocalOperatorForm form = LocalOperatorForm::two_identity);

}  // namespace slenderquad
