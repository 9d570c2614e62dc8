#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "analytic.hpp"
#include "slenderquad/forces.hpp"
#include "slenderquad/nearsing.hpp"
#include "slenderquad/oracle.hpp"

using namespace slenderquad;
using cplx = std::complex<double>;

TEST_CASE("qkp_moments closed forms") {
  const auto q1 = qkp_moments(cplx(0.0, 0.5), 1, 4);
  CHECK(std::abs(q1[0] - 2.0 * std::asinh(2.0)) < 1e-14);
  CHECK(std::abs(q1[0] - 2.8872709503576206) < 1e-14);
  CHECK(std::abs(q1[1]) < 1e-15);
  CHECK(std::abs(q1[3]) < 1e-15);
  const auto q3 = qkp_moments(cplx(0.0, 0.5), 3, 1);
  CHECK(std::abs(q3[0] - 2.0 / (0.25 * std::sqrt(1.25))) < 1e-13);
  CHECK(std::abs(q3[0] - 7.1554175279993272) < 1e-13);
}

TEST_CASE("qkp_moments against frozen high-precision values") {
  // mpmath tanh-sinh at 40 digits, split at Re z1.
  const double in1[] = {4.5365351497453483581, 0.77367689005506579053, 1.074932632153653148,
                        0.27465310064920796653, 0.55021335438701359328, 0.15109455792776196847};
  const double in3[] = {48.747391132286008492, 14.010897621468617824, 6.6059128754293379488,
                        2.9158079245217482426, 1.9656487130608881603, 1.0749872982979135911};
  // Outside [-1, 1] in the real direction, taking the quadrature fallback.
  const double out1[] = {2.3827533744429855804, 0.86489122214592703144, 1.0416050234193761667,
                         0.58666871247986728324, 0.70679870893273913441, 0.45078695165581855246};
  const double out3[] = {11.839734159844330529, 9.8113965981524202191, 8.8512886844333473182,
                         7.9550444719510944291, 7.36572782880689929, 6.7892638508269718653};
  const auto a1 = qkp_moments(cplx(0.3, 0.2), 1, 6);
  const auto a3 = qkp_moments(cplx(0.3, 0.2), 3, 6);
  const auto b1 = qkp_moments(cplx(1.2, 0.05), 1, 6);
  const auto b3 = qkp_moments(cplx(1.2, 0.05), 3, 6);
  for (int k = 0; k < 6; ++k) {
    CHECK(std::abs(a1[k] - in1[k]) <= 1e-13 * in1[0]);
    CHECK(std::abs(a3[k] - in3[k]) <= 1e-13 * in3[0]);
    CHECK(std::abs(b1[k] - out1[k]) <= 1e-13 * out1[0]);
    CHECK(std::abs(b3[k] - out3[k]) <= 1e-13 * out3[0]);
  }
}

TEST_CASE("qkp_moments preconditions") {
  CHECK_THROWS_AS(qkp_moments(cplx(0.0, 0.0), 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(qkp_moments(cplx(0.0, -0.1), 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(qkp_moments(cplx(0.0, 0.1), 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(qkp_moments(cplx(0.0, 0.1), 1, 0), std::invalid_argument);
}

TEST_CASE("find_root on a straight panel") {
  const auto rule = gauss_legendre(16);
  const auto line = discretize(make_straight(Vec3(1.0, 0.0, 0.0), 1.0), 1, rule);
  const std::span<const LegendreCoeffs, 3> coeffs(line.panel_coeffs[0]);
  for (double d : {1e-3, 0.05, 0.3}) {
    const auto centre = find_root(coeffs, Vec3(0.5, d, 0.0));
    CHECK(std::abs(centre.z1 - cplx(0.0, 2.0 * d)) < 1e-11);
    const double eta0 = 0.37;
    const auto off = find_root(coeffs, Vec3(0.5 * (eta0 + 1.0), 0.0, d));
    CHECK(std::abs(off.z1 - cplx(eta0, 2.0 * d)) < 1e-11);
    CHECK(off.residual < 1e-14);
  }
}

TEST_CASE("find_root on a curved panel") {
  const auto rule = gauss_legendre(16);
  const auto h = make_helix(8.0, 3.0, 1.5);
  const auto pc = discretize(h, 8, rule);
  const std::span<const LegendreCoeffs, 3> coeffs(pc.panel_coeffs[3]);
  // A point just inside the helix near the panel midpoint: the root sits close to the real axis.
  const double s = pc.grid.arclength(3, 0.1);
  const Vec3 x = h.position(s);
  const Vec3 inward = -Vec3(x.x(), x.y(), 0.0).normalized();
  const auto root = find_root(coeffs, x + 2e-3 * inward);
  CHECK(std::abs(root.z1.real() - 0.1) < 1e-3);
  CHECK(root.z1.imag() > 0.0);
  CHECK(root.z1.imag() < 0.1);
}

TEST_CASE("regular Stokeslet against the segment closed form") {
  const auto rule = gauss_legendre(16);
  const auto line = discretize(make_straight(Vec3(1.0, 0.0, 0.0), 1.0), 4, rule);
  const Vec3 fv(0.0, 0.0, 1.0);
  const LineDensity f(constant_force(fv), line.grid);
  const Vec3 exact = analytic::segment_stokeslet(0.5, 1.0, fv);
  CHECK(std::abs(exact.z() - 2.0 * std::asinh(0.5)) < 1e-15);
  CHECK((eval_S_regular(line, f, Vec3(0.5, 1.0, 0.0)) - exact).norm() < 1e-12);
  const LineDensity zero(constant_force(Vec3::Zero()), line.grid);
  CHECK(eval_S_regular(line, zero, Vec3(0.5, 1.0, 0.0)).norm() == 0.0);
}

TEST_CASE("special quadrature near a straight panel") {
  const auto rule = gauss_legendre(16);
  const auto line = discretize(make_straight(Vec3(1.0, 0.0, 0.0), 1.0), 1, rule);
  const Vec3 fv(1.0, -0.5, 2.0);
  const LineDensity f(constant_force(fv), line.grid);
  const Vec3 x(0.5, 1e-3, 0.0);
  const Vec3 exact = analytic::segment_stokeslet(0.5, 1e-3, fv);
  const auto root = find_root(std::span<const LegendreCoeffs, 3>(line.panel_coeffs[0]), x);
  const Vec3 special = eval_S_special(line, f, 0, x, root);
  const Vec3 regular = eval_S_regular(line, f, x);
  CHECK((special - exact).norm() <= 1e-10 * exact.norm());
  CHECK((regular - exact).norm() >= 1e-2);

  NearEvalStats stats;
  CHECK((eval_S(line, f, x, {}, &stats) - special).norm() == 0.0);
  CHECK(stats.special_panels == 1);

  // Linear in f.
  const LineDensity f2(constant_force(2.0 * fv), line.grid);
  CHECK((eval_S_special(line, f2, 0, x, root) - 2.0 * special).norm() <= 1e-15 * special.norm());

  // Far away both rules agree.
  const Vec3 far(0.5, 4.0, 1.0);
  const auto far_root = find_root(std::span<const LegendreCoeffs, 3>(line.panel_coeffs[0]), far);
  CHECK((eval_S_special(line, f, 0, far, far_root) - eval_S_regular(line, f, far)).norm() < 1e-12);
}

TEST_CASE("dispatch and far field on the helix") {
  const auto rule = gauss_legendre(16);
  const auto h = make_helix(8.0, 3.0, 1.5);
  const auto pc = discretize(h, 8, rule);
  const auto force = centerline_force(h);
  const LineDensity f(force, pc.grid);
  const Vec3 far(1.2, -0.4, 0.9);
  NearEvalStats stats;
  const Vec3 dispatched = eval_S(pc, f, far, {}, &stats);
  CHECK(stats.special_panels == 0);
  CHECK(stats.regular_panels == 8);
  CHECK((dispatched - eval_S_regular(pc, f, far)).norm() == 0.0);
  CHECK((dispatched - reference_S(h, force, far, 1e-14)).norm() <= 1e-12 * dispatched.norm());
}

TEST_CASE("near field on the helix against a frozen value") {
  // 2.2e-3 inside the helix at s = 0.75; mpmath tanh-sinh at 40 digits.
  const Vec3 x(0.10655359770049686301, 0.0133692544509972277, 0.26334258119129376887);
  const Vec3 frozen(195.67186230271945507, 12.719946392147281142, 11.547947758215933897);
  const auto h = make_helix(8.0, 3.0, 1.5);
  const auto force = centerline_force(h);
  const auto pc = discretize(h, 8, gauss_legendre(16));
  const LineDensity f(force, pc.grid);
  CHECK((eval_S(pc, f, x) - frozen).norm() <= 1e-8);
  CHECK((eval_S_regular(pc, f, x) - frozen).norm() >= 1e-4);
  CHECK((reference_S(h, force, x, 1e-13) - frozen).norm() <= 1e-10);
}

TEST_CASE("eval_S rejects points on the centerline") {
  const auto rule = gauss_legendre(4);
  const auto line = discretize(make_straight(Vec3(1.0, 0.0, 0.0), 1.0), 1, rule);
  const LineDensity f(constant_force(Vec3(1.0, 0.0, 0.0)), line.grid);
  CHECK_THROWS_AS(eval_S(line, f, line.positions[1]), DivisionByZero);
  NearEvalConfig bad;
  bad.switch_factor = 0.0;
  CHECK_THROWS_AS(eval_S(line, f, Vec3(0.0, 1.0, 0.0), bad), std::invalid_argument);
}
