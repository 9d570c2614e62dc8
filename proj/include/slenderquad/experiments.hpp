#pragma once

// The three validation studies behind the slenderquad CLI:
//   eigen-test     L applied to Legendre series vs the exact diagonalization
//   k-convergence  uniform-grid self-convergence of K on a helix
//   field-test     Stokeslet field errors near the helix, regular vs special

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "slenderquad/geometry.hpp"
#include "slenderquad/nearsing.hpp"
#include "slenderquad/oracle.hpp"

namespace slenderquad {

enum class Experiment { eigen_test, k_convergence, field_test };
enum class ForceKind { testf, testf_simple, legendre, custom_coeffs };

struct FiberSpec {
  CurveKind kind = CurveKind::helix;
  std::vector<double> params{8.0, 3.0};  ///< helix: curvature, torsion; straight: direction
  double length = 1.5;
};

struct ForceSpec {
  ForceKind kind = ForceKind::testf;
  int legendre_terms = 5;            ///< P for legendre:P
  std::vector<double> coeffs;        ///< alpha_n for custom-coeffs
};

struct FieldGridSpec {
  int radial_count = 20;
  int angular_count = 20;
  int z_count = 16;
  bool quarter_circle = true;
  double min_boundary_distance = 2.2e-3;
  double inner_radius_fraction = 0.05;  ///< innermost radius as a fraction of the projected radius
};

struct ExperimentConfig {
  Experiment experiment = Experiment::eigen_test;
  std::vector<int> panels{1, 2, 4, 8};
  int rule_order = 16;
  FiberSpec fiber;
  ForceSpec force;
  double epsilon = 1e-3;
  std::uint64_t seed = 42;
  std::string output_path = "results.csv";
  int reference_panels = 128;
  int uniform_count = 400;
  FieldGridSpec grid;
  double oracle_tol = 1e-13;
  NearEvalConfig near;
};

/// Thrown for malformed or out-of-range experiment settings.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

Experiment parse_experiment(const std::string& text);
std::string to_string(Experiment e);
/// "helix:kappa,tau,L" or "straight:dx,dy,dz,L".
FiberSpec parse_fiber(const std::string& text);
/// "testf", "testf-simple", "legendre:P" or "coeffs:a0,a1,...".
ForceSpec parse_force(const std::string& text);
std::vector<int> parse_panels(const std::string& text);

/// Checks every setting against the preconditions of the operations it feeds.
void validate(const ExperimentConfig& cfg);

FiberCurve make_fiber(const FiberSpec& spec);
/// Seeded alpha_n in [-1, 1].
std::vector<double> random_alphas(std::uint64_t seed, int count);

nlohmann::json to_json(const ExperimentConfig& cfg);

struct EigenRow {
  int panels;
  double max_error;
};

struct EigenReport {
  std::vector<double> alphas;
  std::vector<EigenRow> rows;
  bool passed = false;
};

struct ConvergenceReport {
  ErrorGrid errors;
  bool passed = false;
};

struct FieldPoint {
  Vec3 x;
  double distance;  ///< to the centerline
};

struct FieldRow {
  std::string mode;  ///< "regular" or "special"
  int panels;
  std::size_t point;  ///< index into FieldReport::points
  double error;
};

struct FieldSummary {
  std::string mode;
  int panels;
  double max_error;
};

struct FieldReport {
  std::vector<FieldPoint> points;
  std::size_t xy_count = 0;  ///< points per z-plane; point i lies in column i % xy_count
  std::vector<bool> oracle_failed;
  std::vector<FieldRow> rows;
  std::vector<FieldSummary> summary;
  NearEvalStats stats;
  bool passed = false;

  int oracle_failures() const;
};

/// Field points in polar coordinates inside the projected circle of a
/// z-axis helix, repeated over z-planes spanning one period around the
/// fiber midpoint.
std::vector<FieldPoint> helix_field_grid(const FiberCurve& helix, const FieldGridSpec& spec);

EigenReport run_eigen_test(const ExperimentConfig& cfg);
ConvergenceReport run_k_convergence(const ExperimentConfig& cfg);
FieldReport run_field_test(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const EigenReport& report);
void write_csv(std::ostream& out, const ConvergenceReport& report);
void write_csv(std::ostream& out, const FieldReport& report);
/// Per-(mode, M, x, y) maximum over the z-planes.
void write_xy_csv(std::ostream& out, const FieldReport& report);
void write_summary_csv(std::ostream& out, const FieldReport& report);

}  // namespace slenderquad
