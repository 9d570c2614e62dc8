#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "slenderquad/errors.hpp"
#include "slenderquad/quadcore.hpp"

using namespace slenderquad;

namespace {

std::vector<double> sample(const QuadratureRule& rule, double (*fn)(double)) {
  std::vector<double> out;
  for (double x : rule.nodes) out.push_back(fn(x));
  return out;
}

double p3(double x) { return 0.5 * (5.0 * x * x * x - 3.0 * x); }

}  // namespace

TEST_CASE("gauss_legendre small orders") {
  const auto r1 = gauss_legendre(1);
  REQUIRE(r1.nodes.size() == 1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));

  const auto r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre order 16 against frozen tables") {
  const auto r = gauss_legendre(16);
  // Abramowitz and Stegun, Table 25.4.
  CHECK(std::abs(r.nodes[0] + 0.989400934991649932596) < 1e-15);
  CHECK(std::abs(r.weights[0] - 0.027152459411754094852) < 1e-15);
  CHECK(std::abs(r.nodes[8] - 0.095012509837637440185) < 1e-15);
  CHECK(std::abs(r.weights[8] - 0.189450610455068496285) < 1e-15);
  double sum = 0.0, m30 = 0.0;
  for (int l = 0; l < 16; ++l) {
    sum += r.weights[l];
    m30 += r.weights[l] * std::pow(r.nodes[l], 30);
  }
  CHECK(std::abs(sum - 2.0) < 1e-14);
  CHECK(std::abs(m30 - 2.0 / 31.0) < 1e-13);
  for (int l = 1; l < 16; ++l) CHECK(r.nodes[l] > r.nodes[l - 1]);
}

TEST_CASE("gauss_legendre rejects bad orders") {
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(65), std::invalid_argument);
  CHECK_NOTHROW(gauss_legendre(64));
}

TEST_CASE("panelize") {
  const auto rule = gauss_legendre(16);
  const auto g1 = panelize(1.0, 1, rule);
  REQUIRE(g1.node_count() == 16);
  for (int l = 0; l < 16; ++l) CHECK(g1.global_nodes[l] == doctest::Approx(0.5 * (rule.nodes[l] + 1.0)));

  const auto g8 = panelize(1.5, 8, rule);
  CHECK(g8.panel_width == doctest::Approx(3.0 / 16.0));
  CHECK(g8.node_count() == 128);
  CHECK(g8.panel_of(37) == 2);
  CHECK(g8.local_of(37) == 5);
  CHECK(g8.global_index(2, 5) == 37);

  const auto g2 = panelize(1.0, 2, rule);
  double integral = 0.0;
  for (int j = 0; j < g2.node_count(); ++j)
    integral += g2.jacobian() * rule.weights[g2.local_of(j)] * g2.global_nodes[j] * g2.global_nodes[j];
  CHECK(std::abs(integral - 1.0 / 3.0) < 1e-15);

  CHECK_THROWS_AS(panelize(0.0, 1, rule), std::invalid_argument);
  CHECK_THROWS_AS(panelize(1.0, 0, rule), std::invalid_argument);
}

TEST_CASE("to_legendre and legendre_eval") {
  const auto rule = gauss_legendre(16);
  const auto c3 = to_legendre(sample(rule, p3), rule);
  for (int k = 0; k < 16; ++k) CHECK(std::abs(c3.coeffs[k] - (k == 3 ? 1.0 : 0.0)) < 1e-14);

  const auto c5 = to_legendre(std::vector<double>(16, 5.0), rule);
  CHECK(std::abs(c5.coeffs[0] - 5.0) < 1e-14);
  for (int k = 1; k < 16; ++k) CHECK(std::abs(c5.coeffs[k]) < 1e-14);

  const auto ce = to_legendre(sample(rule, [](double x) { return std::exp(x); }), rule);
  CHECK(std::abs(legendre_eval(ce, 0.37) - std::exp(0.37)) < 1e-12);
  CHECK(std::abs(legendre_eval(ce, -1.0) - std::exp(-1.0)) < 1e-12);
  CHECK(std::abs(legendre_derivative(ce, 0.2) - std::exp(0.2)) < 1e-11);

  LegendreCoeffs e1{PolyBasis::legendre, {0.0, 1.0}};
  CHECK(legendre_eval(e1, 0.5) == doctest::Approx(0.5));
  LegendreCoeffs e2{PolyBasis::legendre, {0.0, 0.0, 1.0}};
  const auto v = legendre_eval(e2, std::complex<double>(0.0, 1.0));
  CHECK(std::abs(v - std::complex<double>(-2.0, 0.0)) < 1e-15);
  CHECK_THROWS_AS(legendre_eval(e2, 11.0), std::invalid_argument);
}

TEST_CASE("monomial basis round trip") {
  const auto rule = gauss_legendre(8);
  const auto cm = to_monomial(sample(rule, p3), rule);
  CHECK(cm.basis == PolyBasis::monomial);
  CHECK(std::abs(cm.coeffs[1] + 1.5) < 1e-12);
  CHECK(std::abs(cm.coeffs[3] - 2.5) < 1e-12);
  CHECK(std::abs(legendre_eval(cm, 0.3) - p3(0.3)) < 1e-13);
}

TEST_CASE("differentiation matrix is exact for polynomials") {
  const auto rule = gauss_legendre(16);
  const auto d = differentiation_matrix(rule);
  const auto p = sample(rule, p3);
  for (int l = 0; l < 16; ++l) {
    double dp = 0.0;
    for (int k = 0; k < 16; ++k) dp += d[l * 16 + k] * p[k];
    const double x = rule.nodes[l];
    CHECK(std::abs(dp - 0.5 * (15.0 * x * x - 3.0)) < 1e-11);
  }
}

TEST_CASE("Vandermonde solvers") {
  // sum_l x_l^k b_l = rhs_k: b0 + b1 = 2, -b0 + b1 = 0 gives b = (1, 1).
  const std::vector<double> nodes{-1.0, 1.0};
  const auto b = solve_vandermonde_transpose(nodes, std::vector<double>{2.0, 0.0});
  CHECK(std::abs(b[0] - 1.0) < 1e-15);
  CHECK(std::abs(b[1] - 1.0) < 1e-15);

  const auto r8 = gauss_legendre(8);
  for (int j : {0, 3, 7}) {
    std::vector<double> column(8);
    for (int k = 0; k < 8; ++k) column[k] = std::pow(r8.nodes[j], k);
    const auto e = solve_vandermonde_transpose(r8.nodes, column);
    for (int l = 0; l < 8; ++l) CHECK(std::abs(e[l] - (l == j ? 1.0 : 0.0)) < 1e-12);
  }

  // At n = 16 the solution carries the Vandermonde condition number, the residual does not.
  const auto rule = gauss_legendre(16);
  std::vector<double> q(16);
  for (int k = 0; k < 16; ++k) {
    const double eb = rule.nodes[3];
    q[k] = (1.0 + ((k % 2 == 0) ? -1.0 : 1.0) - 2.0 * std::pow(eb, k + 1)) / (k + 1);
  }
  const auto bq = solve_vandermonde_transpose(rule.nodes, q);
  for (int k = 0; k < 16; ++k) {
    double r = -q[k];
    for (int l = 0; l < 16; ++l) r += std::pow(rule.nodes[l], k) * bq[l];
    CHECK(std::abs(r) <= 1e-10);
  }

  // Primal solve interpolates.
  std::vector<double> rhs(16);
  for (int l = 0; l < 16; ++l) rhs[l] = std::cos(rule.nodes[l]);
  const auto c = solve_vandermonde(rule.nodes, rhs);
  for (int l = 0; l < 16; ++l) {
    double v = 0.0;
    for (int k = 15; k >= 0; --k) v = v * rule.nodes[l] + c[k];
    CHECK(std::abs(v - rhs[l]) < 1e-13);
  }

  CHECK_THROWS_AS(solve_vandermonde_transpose(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 1.0}),
                  SingularSystemError);
  CHECK_THROWS_AS(solve_vandermonde(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("interpolate_to_uniform") {
  const auto rule = gauss_legendre(16);
  const auto grid = panelize(1.0, 8, rule);
  std::vector<double> samples(grid.node_count());
  for (int j = 0; j < grid.node_count(); ++j) samples[j] = std::sin(2.0 * std::numbers::pi * grid.global_nodes[j]);
  std::vector<double> targets(400);
  for (int i = 0; i < 400; ++i) targets[i] = i / 399.0;
  const auto vals = interpolate_to_uniform(samples, grid, targets);
  double worst = 0.0;
  for (int i = 0; i < 400; ++i) worst = std::max(worst, std::abs(vals[i] - std::sin(2.0 * std::numbers::pi * targets[i])));
  CHECK(worst <= 1e-10);

  const auto at_node = interpolate_to_uniform(samples, grid, std::vector<double>{grid.global_nodes[21]});
  CHECK(std::abs(at_node[0] - samples[21]) < 1e-13);

  // Degree-15 polynomials are reproduced exactly on one panel.
  const auto g1 = panelize(1.0, 1, rule);
  std::vector<double> poly(16);
  auto p = [](double s) { return std::pow(2.0 * s - 1.0, 15) - 0.5 * s; };
  for (int j = 0; j < 16; ++j) poly[j] = p(g1.global_nodes[j]);
  const auto pv = interpolate_to_uniform(poly, g1, std::vector<double>{0.0, 0.123, 1.0});
  CHECK(std::abs(pv[0] - p(0.0)) < 1e-12);
  CHECK(std::abs(pv[1] - p(0.123)) < 1e-12);
  CHECK(std::abs(pv[2] - p(1.0)) < 1e-12);

  CHECK_THROWS_AS(interpolate_to_uniform(samples, grid, std::vector<double>{1.5}), std::out_of_range);
}
