#include <algorithm>
#include <cmath>
#include <sstream>

#include <doctest.h>

#include "slenderquad/experiments.hpp"

using namespace slenderquad;

TEST_CASE("parsers") {
  CHECK(parse_experiment("field-test") == Experiment::field_test);
  CHECK(to_string(Experiment::k_convergence) == "k-convergence");
  CHECK_THROWS_AS(parse_experiment("bogus"), ConfigError);

  const auto h = parse_fiber("helix:8,3,1.5");
  CHECK(h.kind == CurveKind::helix);
  CHECK(h.params == std::vector<double>{8.0, 3.0});
  CHECK(h.length == 1.5);
  const auto s = parse_fiber("straight:0,1,0,2");
  CHECK(s.kind == CurveKind::straight);
  CHECK(s.length == 2.0);
  CHECK_THROWS_AS(parse_fiber("helix:8,3"), ConfigError);
  CHECK_THROWS_AS(parse_fiber("spiral:1,2,3"), ConfigError);

  CHECK(parse_force("testf").kind == ForceKind::testf);
  CHECK(parse_force("testf-simple").kind == ForceKind::testf_simple);
  CHECK(parse_force("legendre:5").legendre_terms == 5);
  CHECK(parse_force("coeffs:1,0.5").coeffs == std::vector<double>{1.0, 0.5});
  CHECK_THROWS_AS(parse_force("legendre:x"), ConfigError);

  CHECK(parse_panels("1,2,4,8") == std::vector<int>{1, 2, 4, 8});
  CHECK_THROWS_AS(parse_panels("1,a"), ConfigError);
}

TEST_CASE("validation") {
  ExperimentConfig cfg;
  cfg.force = parse_force("legendre:5");
  CHECK_NOTHROW(validate(cfg));
  auto bad = cfg;
  bad.rule_order = 0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.force.legendre_terms = 17;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.epsilon = 0.9;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.panels = {0};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.experiment = Experiment::k_convergence;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.force = parse_force("testf");
  bad.panels = {256};
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("seeded coefficients") {
  const auto a = random_alphas(42, 5);
  CHECK(a == random_alphas(42, 5));
  CHECK(a != random_alphas(43, 5));
  for (double x : a) {
    CHECK(x >= -1.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("helix field grid") {
  const auto h = make_helix(8.0, 3.0, 1.5);
  const FieldGridSpec spec;
  const auto points = helix_field_grid(h, spec);
  CHECK(points.size() == 20u * 20u * 16u);
  double closest = 1.0;
  for (const auto& p : points) {
    closest = std::min(closest, p.distance);
    CHECK(p.x.x() >= -1e-15);
    CHECK(p.x.y() >= -1e-15);
    CHECK(std::hypot(p.x.x(), p.x.y()) <= 8.0 / 73.0 - 2.2e-3 + 1e-15);
  }
  CHECK(closest >= 2.2e-3 * (1.0 - 1e-6));
  CHECK(closest <= 2.3e-3);
}

TEST_CASE("eigen test runs and is deterministic") {
  ExperimentConfig cfg;
  cfg.fiber = parse_fiber("straight:1,0,0,1");
  cfg.force = parse_force("legendre:5");
  const auto r = run_eigen_test(cfg);
  CHECK(r.passed);
  for (const auto& row : r.rows) CHECK(row.max_error <= 1e-13);
  std::ostringstream a, b;
  write_csv(a, r);
  write_csv(b, run_eigen_test(cfg));
  CHECK(a.str() == b.str());

  cfg.force = parse_force("legendre:1");
  for (const auto& row : run_eigen_test(cfg).rows) CHECK(row.max_error <= 1e-14);
}

TEST_CASE("field test on a small grid") {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::field_test;
  cfg.panels = {8};
  cfg.force = parse_force("testf-simple");
  cfg.grid.radial_count = 5;
  cfg.grid.angular_count = 5;
  cfg.grid.z_count = 4;
  const auto r = run_field_test(cfg);
  CHECK(r.oracle_failures() == 0);
  CHECK(r.passed);
  REQUIRE(r.summary.size() == 2);
  CHECK(r.summary[1].mode == "special");
  CHECK(r.summary[1].max_error <= 1e-8);
  std::ostringstream xy;
  write_xy_csv(xy, r);
  // Header plus one row per (mode, column).
  const std::string text = xy.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 25);
}
