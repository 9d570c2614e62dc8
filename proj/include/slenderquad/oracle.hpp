#pragma once

// Reference computations used to validate the production quadrature:
// adaptive Gauss-Kronrod integration (its own code path, sharing nothing
// with the panel rules), the Legendre diagonalization of L, and the
// uniform-grid self-convergence metric for K.

#include <functional>
#include <vector>

#include "slenderquad/errors.hpp"
#include "slenderquad/finitepart.hpp"
#include "slenderquad/geometry.hpp"

namespace slenderquad {

/// AccuracyFailure for vector-valued integrals.
class VectorAccuracyFailure : public AccuracyFailure {
public:
  VectorAccuracyFailure(const std::string& what, const Vec3& best, double error_estimate)
      : AccuracyFailure(what, best.norm(), error_estimate), best_vector_(best) {}
  const Vec3& best_vector() const noexcept { return best_vector_; }

private:
  Vec3 best_vector_;
};

struct AdaptiveOptions {
  int max_depth = 50;
  int max_intervals = 20000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod. Succeeds when the summed
/// error estimate is below tol * max(1, |I|); throws AccuracyFailure otherwise.
double adaptive_integrate(const std::function<double(double)>& integrand, double a, double b, double tol,
                          const AdaptiveOptions& opts = {});
Vec3 adaptive_integrate(const std::function<Vec3(double)>& integrand, double a, double b, double tol,
                        const AdaptiveOptions& opts = {});

/// lambda_n with lambda_0 = 0, lambda_n = lambda_{n-1} + 2/n.
double legendre_lambda(int n);
/// P_n(-1 + 2 s / L).
double shifted_legendre(int n, double s, double length);
/// sum_n alpha_n P~_n(s) with its derivative.
ScalarField legendre_series(const std::vector<double>& alphas, double length);
/// Exact L[f](s_bar) = -sum_n alpha_n lambda_n P~_n(s_bar).
double diagonalization_L(const std::vector<double>& alphas, double length, double s_bar);

/// L[f](s_bar) by adaptive integration on [0, s_bar] and [s_bar, L].
double reference_L(const ScalarField& f, double length, double s_bar, double tol);

/// K[f](s_bar) from the original finite-part integrand, split at s_bar.
Vec3 reference_K(const FiberCurve& curve, const VectorField& f, double s_bar, double tol);

/// Arclength of the centerline point closest to x_bar.
double closest_arclength(const FiberCurve& curve, const Vec3& x_bar);

/// S[f](x_bar) by adaptive integration, split at the closest centerline point.
Vec3 reference_S(const FiberCurve& curve, const VectorField& f, const Vec3& x_bar, double tol,
                 bool split_at_closest = true);

struct ErrorGrid {
  int uniform_count = 0;     ///< N_u; the grid has N_u + 1 points s_l = l L / N_u
  int reference_panels = 0;
  std::vector<int> panels;
  std::vector<double> errors;  ///< e_M for each entry of panels
};

/// e_M = max_l |K^M(s_l) - K^Ref(s_l)|_2 after per-panel Legendre
/// interpolation of both to the uniform grid.
ErrorGrid convergence_study(const FiberCurve& curve, const VectorField& f, const std::vector<int>& panel_list,
                            int reference_panels, int uniform_count, int rule_order = 16);

/// Uniform-grid values of K computed with the given panel count.
std::vector<Vec3> K_on_uniform_grid(const FiberCurve& curve, const VectorField& f, int panels, int uniform_count,
                                    int rule_order = 16);

}  // namespace slenderquad
