#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "srcontact/tw3d/tanaka_webster.hpp"

namespace srcontact {
namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};

ContactStructure make(std::vector<std::string> coords, const std::vector<std::string>& theta,
                      const std::vector<std::string>& g) {
  std::vector<Expr> t, m;
  for (const auto& s : theta) t.push_back(parse_expr(s, coords));
  for (const auto& s : g) m.push_back(parse_expr(s, coords));
  const int d = static_cast<int>(coords.size());
  return ContactStructure(std::move(coords), FormField(d, 1, std::move(t)), std::move(m), {});
}

ContactStructure heisenberg(const std::string& gyy = "1") {
  return make(kXYZ, {"-y", "0", "1"}, {"1", "0", "0", "0", gyy, "0", "0", "0", "0"});
}

ContactStructure sphere_chart() {
  const std::string s = "(1 + u^2 + v^2 + w^2)";
  const std::string g = "4/" + s + "^2";
  return make({"u", "v", "w"},
              {"(-4*v - 4*u*w)/" + s + "^2", "(4*u - 4*v*w)/" + s + "^2",
               "(2*u^2 + 2*v^2 - 2*w^2 - 2)/" + s + "^2"},
              {g, "0", "0", "0", g, "0", "0", "0", g});
}

ContactStructure twisted() {
  return make(kXYZ, {"-y + x*z/3", "x/5", "1 + x^2/7"},
              {"1 + y^2/2", "x*y/4", "0", "x*y/4", "2 + sin(x)/3", "z/5", "0", "z/5", "1"});
}

const Point kP{0.37, -0.21, 0.55};

Jet jet_of(const std::string& expr, const Point& p, int order = 2) {
  return eval_jet(parse_expr(expr, kXYZ), p, order);
}

TEST(TWCoframeTest, Heisenberg) {
  const AdaptedFrame f = tw_coframe(heisenberg(), kP, 2);
  const double y = kP[1];
  const double expected[3][3] = {{-y, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m) EXPECT_NEAR(f.coframe[k][m].value(), expected[k][m], 1e-14);
  EXPECT_NEAR(f.omega(1, 2).value(), 1.0, 1e-14);
}

TEST(TWCoframeTest, Anisotropic) {
  // θ̂ = bθ, e1 = dx, e2 = b dy for g = dx^2 + b^2 dy^2.
  const AdaptedFrame f = tw_coframe(heisenberg("9"), kP, 2);
  const double y = kP[1];
  const double expected[3][3] = {{-3 * y, 0, 3}, {1, 0, 0}, {0, 3, 0}};
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m) EXPECT_NEAR(f.coframe[k][m].value(), expected[k][m], 1e-13);
}

TEST(TWCoframeTest, AlwaysPositivelyOriented) {
  // Seeds in reversed order make Gram-Schmidt produce the opposite orientation.
  FrameOptions opt;
  opt.seeds = {{0, 1, 0}, {1, 0, 0}};
  const AdaptedFrame f = tw_coframe(twisted(), kP, 2, opt);
  EXPECT_NEAR(f.omega(1, 2).value(), 1.0, 1e-12);
}

TEST(TWCoframeTest, RejectsOtherDimensions) {
  const auto cs = make({"a", "b", "c", "d", "z"}, {"-b", "0", "-d", "0", "1"},
                       {"1", "0", "0", "0", "0", "0", "1", "0", "0", "0", "0", "0", "1", "0", "0",
                        "0", "0", "0", "1", "0", "0", "0", "0", "0", "0"});
  EXPECT_THROW(tw_coframe(cs, Point{0, 0, 0, 0, 0}, 2), GeometryError);
}

TEST(StructureEquationsTest, HeisenbergIsTrivial) {
  const TWData t = solve_structure_equations(tw_coframe(heisenberg(), kP, 2));
  for (const Jet* j : {&t.omega0, &t.omega1, &t.omega2, &t.a, &t.b}) EXPECT_LT(max_abs(*j), 1e-15);
  ASSERT_TRUE(t.r.has_value());
  EXPECT_LT(max_abs(*t.r), 1e-15);
  EXPECT_LT(t.residual, 1e-15);
}

TEST(StructureEquationsTest, RotatedHeisenbergByX) {
  // ê1 = cos x dx - sin x dy gives dê1 = -dx ^ (sin x dx + cos x dy) = -dx ^ ê2.
  const AdaptedFrame f = rotate_coframe(tw_coframe(heisenberg(), kP, 2), jet_of("x", kP, 2));
  const TWData t = solve_structure_equations(f);
  EXPECT_NEAR(t.omega[0].value(), -1.0, 1e-14);
  EXPECT_NEAR(t.omega[1].value(), 0.0, 1e-14);
  EXPECT_NEAR(t.omega[2].value(), 0.0, 1e-14);
  EXPECT_LT(max_abs(t.a), 1e-14);
  EXPECT_LT(max_abs(t.b), 1e-14);
  EXPECT_LT(std::abs(t.r->value()), 1e-14);
}

// Oracle: the 6 x 5 system in (ω0, ω1, ω2, A, B) solved by generic least squares.
TEST(StructureEquationsTest, MatchesGenericLeastSquares) {
  for (const auto& cs : {twisted(), sphere_chart()}) {
    const AdaptedFrame f = tw_coframe(cs, kP, 2);
    const Tensor3<Jet> c = structure_constants(f);
    Eigen::Matrix<double, 6, 5> m;
    // Rows: de1 on (θ̂e1, θ̂e2, e1e2), then de2 on the same; ω ^ e2 contributes
    // ω1 e1 ^ e2 and -ω ^ e1 contributes ω2 e1 ^ e2.
    m << 0, 0, 0, 1, 0,  //
        1, 0, 0, 0, 1,   //
        0, 1, 0, 0, 0,   //
        -1, 0, 0, 0, 1,  //
        0, 0, 0, -1, 0,  //
        0, 0, 1, 0, 0;
    Eigen::Matrix<double, 6, 1> rhs;
    rhs << c(1, 0, 1).value(), c(1, 0, 2).value(), c(1, 1, 2).value(), c(2, 0, 1).value(),
        c(2, 0, 2).value(), c(2, 1, 2).value();
    const Eigen::Matrix<double, 5, 1> x = m.colPivHouseholderQr().solve(rhs);
    const TWData t = solve_structure_equations(f);
    EXPECT_NEAR(t.omega0.value(), x(0), 1e-12);
    EXPECT_NEAR(t.omega1.value(), x(1), 1e-12);
    EXPECT_NEAR(t.omega2.value(), x(2), 1e-12);
    EXPECT_NEAR(t.a.value(), x(3), 1e-12);
    EXPECT_NEAR(t.b.value(), x(4), 1e-12);
    EXPECT_LT(t.residual, 1e-9);
    EXPECT_LT((m * x - rhs).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(StructureEquationsTest, SphereChartHasConstantCurvature) {
  const ContactStructure cs = sphere_chart();
  std::vector<double> rs;
  for (const Point& p : {Point{0.1, 0.2, 0.3}, Point{-0.8, 0.5, -0.1}, Point{0.6, -0.9, 0.7}}) {
    const TWData t = solve_structure_equations(tw_coframe(cs, p, 2));
    EXPECT_LT(std::abs(t.a.value()), 1e-12);
    EXPECT_LT(std::abs(t.b.value()), 1e-12);
    rs.push_back(t.r->value());
  }
  EXPECT_NEAR(rs[1], rs[0], 1e-10);
  EXPECT_NEAR(rs[2], rs[0], 1e-10);
}

TEST(StructureEquationsTest, CurvatureNeedsSecondDerivatives) {
  const TWData t = solve_structure_equations(tw_coframe(twisted(), kP, 1));
  EXPECT_FALSE(t.r.has_value());
  EXPECT_THROW(solve_structure_equations(tw_coframe(twisted(), kP, 0)), Error);
}

TEST(TWConnectionTest, HeisenbergIsFlat) {
  const AdaptedFrame f = tw_coframe(heisenberg(), kP, 2);
  const FullConnection g = tw_connection(solve_structure_equations(f), f);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(max_abs(g(i, k, j)), 0.0);
}

TEST(TWConnectionTest, PreservesTheta) {
  const AdaptedFrame f = tw_coframe(twisted(), kP, 2);
  const FullConnection g = tw_connection(solve_structure_equations(f), f);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(max_abs(g(i, 0, j)), 0.0);
}

TEST(TWConnectionTest, IndependentOfRotation) {
  const AdaptedFrame f = tw_coframe(twisted(), kP, 2);
  const AdaptedFrame r = rotate_coframe(f, jet_of("x*y - z^2 + 0.4", kP));
  const auto a = coordinate_christoffel(tw_connection(solve_structure_equations(f), f), f);
  const auto b = coordinate_christoffel(tw_connection(solve_structure_equations(r), r), r);
  EXPECT_LT(max_value_diff(a, b), 1e-10);
}

TEST(TWConnectionTest, TorsionIsLeviFormPlusAB) {
  const AdaptedFrame f = tw_coframe(twisted(), kP, 2);
  const TWData t = solve_structure_equations(f);
  const auto tau = full_torsion(tw_connection(t, f), f);
  const double a = t.a.value(), b = t.b.value();
  EXPECT_NEAR(tau[0].at({0, 1}).value(), 0.0, 1e-12);
  EXPECT_NEAR(tau[0].at({0, 2}).value(), 0.0, 1e-12);
  EXPECT_NEAR(tau[0].at({1, 2}).value(), 1.0, 1e-12);
  EXPECT_NEAR(tau[1].at({0, 1}).value(), a, 1e-12);
  EXPECT_NEAR(tau[1].at({0, 2}).value(), b, 1e-12);
  EXPECT_NEAR(tau[1].at({1, 2}).value(), 0.0, 1e-12);
  EXPECT_NEAR(tau[2].at({0, 1}).value(), b, 1e-12);
  EXPECT_NEAR(tau[2].at({0, 2}).value(), -a, 1e-12);
  EXPECT_NEAR(tau[2].at({1, 2}).value(), 0.0, 1e-12);
}

TEST(RotationTest, ZeroAngleIsIdentity) {
  const AdaptedFrame f = tw_coframe(twisted(), kP, 2);
  const AdaptedFrame r = rotate_coframe(f, Jet(0.0));
  for (int k = 0; k < 3; ++k) EXPECT_EQ(max_abs_value(r.coframe[k] - f.coframe[k]), 0.0);
  EXPECT_EQ(check_rotation_covariance(f, Jet(0.0)).max(), 0.0);
}

TEST(RotationTest, CovarianceForPolynomialAngles) {
  for (const auto& cs : {twisted(), sphere_chart(), heisenberg("1 + x^2/4")}) {
    const AdaptedFrame f = tw_coframe(cs, kP, 2);
    for (const std::string phi : {"x", "y^2 - z", "0.3 + x*y*z", "x^3 - 2*y + z^2"}) {
      const RotationCheck r = check_rotation_covariance(f, jet_of(phi, kP));
      EXPECT_LT(r.omega, 1e-10) << phi;
      EXPECT_LT(r.torsion, 1e-10) << phi;
      EXPECT_LT(r.curvature, 1e-10) << phi;
    }
  }
}

TEST(RotationTest, TorsionRotatesByTwiceTheAngle) {
  const AdaptedFrame f = tw_coframe(twisted(), kP, 2);
  const TWData t = solve_structure_equations(f);
  ASSERT_GT(std::hypot(t.a.value(), t.b.value()), 1e-3);
  // A constant quarter turn sends (A, B) to (-A, -B).
  const TWData u = solve_structure_equations(rotate_coframe(f, Jet(M_PI / 2)));
  EXPECT_NEAR(u.a.value(), -t.a.value(), 1e-12);
  EXPECT_NEAR(u.b.value(), -t.b.value(), 1e-12);
}

TEST(ComparePartialTest, HeisenbergDiffersOnlyOnTheta) {
  const ConnectionComparison c = compare_partial(heisenberg(), kP);
  EXPECT_LT(c.deviation, 1e-14);
  EXPECT_EQ(c.difference(1, 0, 2), -1.0);
  EXPECT_EQ(c.difference(2, 0, 1), 1.0);
  for (int a = 1; a < 3; ++a)
    for (int k = 1; k < 3; ++k)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(c.difference(a, k, j), 0.0);
}

TEST(ComparePartialTest, AgreesOnCurvedCharts) {
  for (const auto& cs : {twisted(), sphere_chart(), heisenberg("1 + x^2/4")}) {
    EXPECT_LT(compare_partial(cs, kP).deviation, 1e-10);
  }
}

TEST(ComparePartialTest, RotatedFrameGivesSameVerdict) {
  const AdaptedFrame f = tw_coframe(twisted(), kP, 2);
  EXPECT_LT(compare_partial(rotate_coframe(f, jet_of("z - x*y", kP))).deviation, 1e-10);
}

TEST(CompareFullTest, HeisenbergHasOnlyTheLeviPart) {
  const ConnectionComparison c = compare_full(heisenberg(), kP);
  EXPECT_EQ(c.r, 0.0);
  EXPECT_LT(c.deviation, 1e-14);
  EXPECT_EQ(c.difference(0, 1, 2), 0.0);
}

TEST(CompareFullTest, CurvatureAppearsInDifferenceTensor) {
  const AdaptedFrame f = tw_coframe(sphere_chart(), kP, 2);
  const ConnectionComparison c = compare_full(f);
  const TWData t = solve_structure_equations(f);
  EXPECT_LT(c.deviation, 1e-10);
  EXPECT_NEAR(c.difference(0, 1, 2), t.r->value(), 1e-10);
  EXPECT_NEAR(c.difference(0, 2, 1), -t.r->value(), 1e-10);
  EXPECT_GT(std::abs(t.r->value()), 1.0);
}

TEST(CompareFullTest, PromotedTorsionCombinesABAndR) {
  const AdaptedFrame f = tw_coframe(twisted(), kP, 2);
  const TWData t = solve_structure_equations(f);
  const auto tau = full_torsion(promote(canonical_partial_connection(f), f), f);
  const double a = t.a.value(), b = t.b.value(), r = t.r->value();
  EXPECT_NEAR(tau[1].at({0, 1}).value(), a, 1e-10);
  EXPECT_NEAR(tau[1].at({0, 2}).value(), b + r, 1e-10);
  EXPECT_NEAR(tau[1].at({1, 2}).value(), 0.0, 1e-10);
  EXPECT_NEAR(tau[2].at({0, 1}).value(), b - r, 1e-10);
  EXPECT_NEAR(tau[2].at({0, 2}).value(), -a, 1e-10);
  EXPECT_NEAR(tau[2].at({1, 2}).value(), 0.0, 1e-10);
}

TEST(CompareFullTest, PromotionMatchesClosedForm) {
  for (const auto& cs : {twisted(), sphere_chart()}) {
    const AdaptedFrame f = tw_coframe(cs, kP, 2);
    const FullConnection a = promote(canonical_partial_connection(f), f);
    const FullConnection b = promoted_closed_form(solve_structure_equations(f), f);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(a(i, k, j).value(), b(i, k, j).value(), 1e-10);
  }
}

TEST(CompareFullTest, NeedsSecondDerivatives) {
  EXPECT_THROW(compare_full(tw_coframe(twisted(), kP, 1)), Error);
}

}  // namespace
}  // namespace srcontact
