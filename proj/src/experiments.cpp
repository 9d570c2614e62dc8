#include "slenderquad/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "slenderquad/finitepart.hpp"
#include "slenderquad/forces.hpp"

namespace slenderquad {

namespace {

constexpr double kEigenThreshold = 1e-12;
constexpr double kSpecialFieldThreshold = 1e-8;
constexpr double kConvergencePlateau = 1e-11;
constexpr double kConvergenceFineThreshold = 1e-10;
constexpr double kSelfReferenceThreshold = 1e-12;

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse " + what + " value '" + item + "'");
    }
  }
  return out;
}

std::pair<std::string, std::string> split_kind(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {text, ""};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

VectorField field_force(const ExperimentConfig& cfg, const FiberCurve& curve) {
  return cfg.force.kind == ForceKind::testf_simple ? centerline_force(curve) : oscillating_force(curve.length());
}

std::ostream& precise(std::ostream& out) { return out << std::setprecision(17); }

}  // namespace

Experiment parse_experiment(const std::string& text) {
  if (text == "eigen-test") return Experiment::eigen_test;
  if (text == "k-convergence") return Experiment::k_convergence;
  if (text == "field-test") return Experiment::field_test;
  throw ConfigError("unknown experiment '" + text + "'");
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::eigen_test: return "eigen-test";
    case Experiment::k_convergence: return "k-convergence";
    case Experiment::field_test: return "field-test";
  }
  return "unknown";
}

FiberSpec parse_fiber(const std::string& text) {
  const auto [kind, rest] = split_kind(text);
  const auto values = parse_numbers(rest, "fiber");
  FiberSpec spec;
  if (kind == "helix") {
    if (values.size() != 3) throw ConfigError("helix fiber needs kappa,tau,L");
    spec.kind = CurveKind::helix;
    spec.params = {values[0], values[1]};
    spec.length = values[2];
  } else if (kind == "straight") {
    if (values.size() != 4) throw ConfigError("straight fiber needs dx,dy,dz,L");
    spec.kind = CurveKind::straight;
    spec.params = {values[0], values[1], values[2]};
    spec.length = values[3];
  } else {
    throw ConfigError("unknown fiber kind '" + kind + "'");
  }
  return spec;
}

ForceSpec parse_force(const std::string& text) {
  const auto [kind, rest] = split_kind(text);
  ForceSpec spec;
  if (kind == "testf") {
    spec.kind = ForceKind::testf;
  } else if (kind == "testf-simple") {
    spec.kind = ForceKind::testf_simple;
  } else if (kind == "legendre") {
    const auto values = parse_numbers(rest, "legendre");
    if (values.size() != 1 || values[0] != std::floor(values[0]) || values[0] < 1)
      throw ConfigError("legendre force needs a positive integer term count");
    spec.kind = ForceKind::legendre;
    spec.legendre_terms = static_cast<int>(values[0]);
  } else if (kind == "coeffs" || kind == "custom-coeffs") {
    spec.kind = ForceKind::custom_coeffs;
    spec.coeffs = parse_numbers(rest, "coefficient");
    if (spec.coeffs.empty()) throw ConfigError("coefficient force needs at least one value");
  } else {
    throw ConfigError("unknown force '" + text + "'");
  }
  return spec;
}

std::vector<int> parse_panels(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_numbers(text, "panel")) {
    if (v != std::floor(v) || v < 1) throw ConfigError("panel counts must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError("panel list is empty");
  return out;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.rule_order < 1 || cfg.rule_order > kMaxRuleOrder) throw ConfigError("rule order must be in [1, 64]");
  if (cfg.panels.empty()) throw ConfigError("panel list is empty");
  for (int m : cfg.panels)
    if (m < 1) throw ConfigError("panel counts must be positive");
  if (!(cfg.fiber.length > 0.0)) throw ConfigError("fiber length must be positive");
  if (cfg.fiber.kind == CurveKind::helix && !(cfg.fiber.params.at(0) > 0.0))
    throw ConfigError("helix curvature must be positive");
  if (cfg.fiber.kind == CurveKind::straight) {
    const Vec3 d(cfg.fiber.params.at(0), cfg.fiber.params.at(1), cfg.fiber.params.at(2));
    if (std::abs(d.norm() - 1.0) > 1e-12) throw ConfigError("straight fiber direction must be a unit vector");
  }
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < std::exp(-0.5)))
    throw ConfigError("epsilon must lie in (0, exp(-1/2))");

  switch (cfg.experiment) {
    case Experiment::eigen_test:
      if (cfg.force.kind == ForceKind::legendre) {
        if (cfg.force.legendre_terms > cfg.rule_order)
          throw ConfigError("legendre:P needs P <= rule order");
      } else if (cfg.force.kind == ForceKind::custom_coeffs) {
        if (static_cast<int>(cfg.force.coeffs.size()) > cfg.rule_order)
          throw ConfigError("more coefficients than the rule order");
      } else {
        throw ConfigError("eigen-test needs force legendre:P or coeffs:...");
      }
      break;
    case Experiment::k_convergence:
      if (cfg.force.kind != ForceKind::testf && cfg.force.kind != ForceKind::testf_simple)
        throw ConfigError("k-convergence needs force testf or testf-simple");
      if (cfg.uniform_count < 1) throw ConfigError("uniform count must be positive");
      for (int m : cfg.panels)
        if (m > cfg.reference_panels) throw ConfigError("reference panels must be >= every panel count");
      break;
    case Experiment::field_test:
      if (cfg.fiber.kind != CurveKind::helix) throw ConfigError("field-test needs a helix fiber");
      if (cfg.force.kind != ForceKind::testf && cfg.force.kind != ForceKind::testf_simple)
        throw ConfigError("field-test needs force testf or testf-simple");
      if (cfg.grid.radial_count < 1 || cfg.grid.angular_count < 1 || cfg.grid.z_count < 1)
        throw ConfigError("field grid counts must be positive");
      if (!(cfg.grid.min_boundary_distance > 0.0)) throw ConfigError("minimum boundary distance must be positive");
      if (!(cfg.grid.inner_radius_fraction >= 0.0 && cfg.grid.inner_radius_fraction < 1.0))
        throw ConfigError("inner radius fraction must lie in [0, 1)");
      if (!(cfg.near.switch_factor > 0.0)) throw ConfigError("switch factor must be positive");
      break;
  }
}

FiberCurve make_fiber(const FiberSpec& spec) {
  if (spec.kind == CurveKind::helix) return make_helix(spec.params.at(0), spec.params.at(1), spec.length);
  if (spec.kind == CurveKind::straight)
    return make_straight(Vec3(spec.params.at(0), spec.params.at(1), spec.params.at(2)), spec.length);
  throw ConfigError("custom fibers cannot be built from a spec");
}

std::vector<double> random_alphas(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  // 53 random bits mapped to [0, 1), then to [-1, 1); platform independent.
  for (auto& a : out) a = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return out;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["experiment"] = to_string(cfg.experiment);
  j["panels"] = cfg.panels;
  j["rule_order"] = cfg.rule_order;
  j["fiber"] = {{"kind", cfg.fiber.kind == CurveKind::helix ? "helix" : "straight"},
                {"params", cfg.fiber.params},
                {"length", cfg.fiber.length}};
  static const char* force_names[] = {"testf", "testf-simple", "legendre", "custom-coeffs"};
  j["force"] = {{"kind", force_names[static_cast<int>(cfg.force.kind)]},
                {"legendre_terms", cfg.force.legendre_terms},
                {"coeffs", cfg.force.coeffs}};
  j["epsilon"] = cfg.epsilon;
  j["seed"] = cfg.seed;
  j["output_path"] = cfg.output_path;
  j["reference_panels"] = cfg.reference_panels;
  j["uniform_count"] = cfg.uniform_count;
  j["grid"] = {{"radial_count", cfg.grid.radial_count},
               {"angular_count", cfg.grid.angular_count},
               {"z_count", cfg.grid.z_count},
               {"quarter_circle", cfg.grid.quarter_circle},
               {"min_boundary_distance", cfg.grid.min_boundary_distance},
               {"inner_radius_fraction", cfg.grid.inner_radius_fraction}};
  j["oracle_tol"] = cfg.oracle_tol;
  j["near"] = {{"switch_factor", cfg.near.switch_factor},
               {"newton_tol", cfg.near.newton_tol},
               {"newton_max_iter", cfg.near.newton_max_iter}};
  return j;
}

int FieldReport::oracle_failures() const {
  return static_cast<int>(std::count(oracle_failed.begin(), oracle_failed.end(), true));
}

std::vector<FieldPoint> helix_field_grid(const FiberCurve& helix, const FieldGridSpec& spec) {
  if (helix.kind() != CurveKind::helix) throw std::invalid_argument("helix_field_grid needs a helix");
  const double kappa = helix.parameters()[0];
  const double tau = helix.parameters()[1];
  const double k2 = kappa * kappa + tau * tau;
  const double radius = kappa / k2;
  const double pitch = 2.0 * std::numbers::pi * tau / k2;
  const double z_mid = 0.5 * (tau / std::sqrt(k2)) * helix.length();

  const double r_max = radius - spec.min_boundary_distance;
  const double r_min = spec.inner_radius_fraction * radius;
  const double sweep = spec.quarter_circle ? 0.5 * std::numbers::pi : 2.0 * std::numbers::pi;

  std::vector<FieldPoint> out;
  out.reserve(static_cast<std::size_t>(spec.radial_count) * spec.angular_count * spec.z_count);
  for (int k = 0; k < spec.z_count; ++k) {
    const double z = z_mid + pitch * (static_cast<double>(k) / spec.z_count - 0.5);
    for (int i = 0; i < spec.radial_count; ++i) {
      const double r = spec.radial_count == 1 ? r_max : r_min + (r_max - r_min) * i / (spec.radial_count - 1);
      for (int j = 0; j < spec.angular_count; ++j) {
        const double theta = spec.quarter_circle
                                 ? (spec.angular_count == 1 ? 0.0 : sweep * j / (spec.angular_count - 1))
                                 : sweep * j / spec.angular_count;
        const Vec3 x(r * std::cos(theta), r * std::sin(theta), z);
        const double s = closest_arclength(helix, x);
        out.push_back({x, (helix.position(s) - x).norm()});
      }
    }
  }
  return out;
}

EigenReport run_eigen_test(const ExperimentConfig& cfg) {
  validate(cfg);
  EigenReport report;
  report.alphas = cfg.force.kind == ForceKind::legendre ? random_alphas(cfg.seed, cfg.force.legendre_terms)
                                                       : cfg.force.coeffs;
  const double length = cfg.fiber.length;
  const auto rule = gauss_legendre(cfg.rule_order);
  const auto table = build_weight_table(rule);
  const auto field = legendre_series(report.alphas, length);
  report.passed = true;
  for (int m : cfg.panels) {
    const auto grid = panelize(length, m, rule);
    const ScalarDensity density(field, grid);
    const auto values = apply_L(density, grid, table);
    double worst = 0.0;
    for (int t = 0; t < grid.node_count(); ++t)
      worst = std::max(worst, std::abs(values[t] - diagonalization_L(report.alphas, length, grid.global_nodes[t])));
    report.rows.push_back({m, worst});
    if (!(worst <= kEigenThreshold)) report.passed = false;
  }
  return report;
}

ConvergenceReport run_k_convergence(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto curve = make_fiber(cfg.fiber);
  ConvergenceReport report;
  report.errors = convergence_study(curve, field_force(cfg, curve), cfg.panels, cfg.reference_panels,
                                    cfg.uniform_count, cfg.rule_order);
  const auto& e = report.errors.errors;
  const auto& m = report.errors.panels;
  report.passed = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (m[i] == cfg.reference_panels && !(e[i] <= kSelfReferenceThreshold)) report.passed = false;
    if (m[i] >= 64 && m[i] < cfg.reference_panels && !(e[i] <= kConvergenceFineThreshold)) report.passed = false;
    if (i > 0 && m[i] > m[i - 1] && e[i - 1] > kConvergencePlateau && !(e[i] < e[i - 1])) report.passed = false;
  }
  return report;
}

FieldReport run_field_test(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto curve = make_fiber(cfg.fiber);
  const auto force = field_force(cfg, curve);
  const auto rule = gauss_legendre(cfg.rule_order);

  FieldReport report;
  report.points = helix_field_grid(curve, cfg.grid);
  report.xy_count = static_cast<std::size_t>(cfg.grid.radial_count) * cfg.grid.angular_count;
  const int count = static_cast<int>(report.points.size());
  std::vector<Vec3> xs(count);
  for (int i = 0; i < count; ++i) xs[i] = report.points[i].x;

  std::vector<Vec3> reference(count);
  std::vector<char> failed(count, 0);
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < count; ++i) {
    try {
      reference[i] = reference_S(curve, force, xs[i], cfg.oracle_tol);
    } catch (const VectorAccuracyFailure& e) {
      reference[i] = e.best_vector();
      failed[i] = 1;
    }
  }
  report.oracle_failed.assign(failed.begin(), failed.end());

  report.passed = true;
  for (const std::string mode : {"regular", "special"}) {
    for (int m : cfg.panels) {
      const auto discrete = discretize(curve, m, rule);
      const LineDensity density(force, discrete.grid);
      const auto values = mode == "regular" ? eval_S_regular_many(discrete, density, xs)
                                            : eval_S_many(discrete, density, xs, cfg.near, &report.stats);
      double worst = 0.0;
      for (int i = 0; i < count; ++i) {
        const double e = (values[i] - reference[i]).norm();
        report.rows.push_back({mode, m, static_cast<std::size_t>(i), e});
        if (!failed[i]) worst = std::max(worst, e);
      }
      report.summary.push_back({mode, m, worst});
      if (mode == "special" && m >= 8 && cfg.force.kind == ForceKind::testf_simple &&
          !(worst <= kSpecialFieldThreshold))
        report.passed = false;
    }
  }
  return report;
}

void write_csv(std::ostream& out, const EigenReport& report) {
  precise(out) << "M,max_error\n";
  for (const auto& r : report.rows) out << r.panels << ',' << r.max_error << '\n';
}

void write_csv(std::ostream& out, const ConvergenceReport& report) {
  precise(out) << "M,e_M\n";
  for (std::size_t i = 0; i < report.errors.panels.size(); ++i)
    out << report.errors.panels[i] << ',' << report.errors.errors[i] << '\n';
}

void write_csv(std::ostream& out, const FieldReport& report) {
  precise(out) << "mode,M,x,y,z,distance,error,oracle_failed\n";
  for (const auto& r : report.rows) {
    const auto& p = report.points[r.point];
    out << r.mode << ',' << r.panels << ',' << p.x.x() << ',' << p.x.y() << ',' << p.x.z() << ',' << p.distance
        << ',' << r.error << ',' << (report.oracle_failed[r.point] ? 1 : 0) << '\n';
  }
}

void write_xy_csv(std::ostream& out, const FieldReport& report) {
  precise(out) << "mode,M,x,y,max_error\n";
  std::map<std::pair<std::string, int>, std::vector<double>> columns;
  std::vector<std::pair<std::string, int>> order;
  for (const auto& r : report.rows) {
    const auto key = std::make_pair(r.mode, r.panels);
    auto [it, inserted] = columns.try_emplace(key, report.xy_count, 0.0);
    if (inserted) order.push_back(key);
    auto& col = it->second[r.point % report.xy_count];
    col = std::max(col, r.error);
  }
  for (const auto& key : order) {
    const auto& col = columns[key];
    for (std::size_t c = 0; c < report.xy_count; ++c) {
      const auto& p = report.points[c];
      out << key.first << ',' << key.second << ',' << p.x.x() << ',' << p.x.y() << ',' << col[c] << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const FieldReport& report) {
  precise(out) << "mode,M,max_error\n";
  for (const auto& s : report.summary) out << s.mode << ',' << s.panels << ',' << s.max_error << '\n';
}

}  // namespace slenderquad
