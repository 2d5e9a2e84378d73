#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "srcontact/contact/frame.hpp"
#include "srcontact/contact/spectrum.hpp"

namespace srcontact {
namespace {

ContactStructure make(std::vector<std::string> coords, const std::vector<std::string>& theta,
                      const std::vector<std::string>& g, const ParamMap& params = {}) {
  std::vector<Expr> t, m;
  for (const auto& s : theta) t.push_back(parse_expr(s, coords, params));
  for (const auto& s : g) m.push_back(parse_expr(s, coords, params));
  const int d = static_cast<int>(coords.size());
  return ContactStructure(std::move(coords), FormField(d, 1, std::move(t)), std::move(m), {});
}

ContactStructure heisenberg() {
  return make({"x", "y", "z"}, {"-y", "0", "1"}, {"1", "0", "0", "0", "1", "0", "0", "0", "0"});
}

ContactStructure perturbed() {
  return make({"x", "y", "z"}, {"-y", "0", "1"},
              {"1", "0", "0", "0", "1 + x^2/4", "0", "0", "0", "0"});
}

ContactStructure sphere_chart() {
  const std::string s = "(1 + u^2 + v^2 + w^2)";
  const std::string g = "4/" + s + "^2";
  return make({"u", "v", "w"},
              {"(-4*v - 4*u*w)/" + s + "^2", "(4*u - 4*v*w)/" + s + "^2",
               "(2*u^2 + 2*v^2 - 2*w^2 - 2)/" + s + "^2"},
              {g, "0", "0", "0", g, "0", "0", "0", g});
}

ContactStructure n2_split(double c) {
  const ParamMap params{{"c", c}};
  return make({"x1", "y1", "x2", "y2", "z"}, {"-y1", "0", "-y2", "0", "1"},
              {"1", "0", "0", "0", "0",  //
               "0", "1", "0", "0", "0",  //
               "0", "0", "c^2", "0", "0", //
               "0", "0", "0", "c^2", "0", //
               "0", "0", "0", "0", "0"},
              params);
}

TEST(ContactStructureTest, RejectsBadShapes) {
  EXPECT_THROW(make({"x", "y"}, {"0", "1"}, {"1", "0", "0", "1"}), SpecError);
  EXPECT_THROW(make({"x", "y", "z"}, {"-y", "0", "1"},
                    {"1", "x", "0", "0", "1", "0", "0", "0", "0"}),
               SpecError);
}

TEST(ContactTest, HeisenbergIsContactEverywhere) {
  const auto cs = heisenberg();
  for (double y : {-3.0, 0.0, 2.5}) {
    const auto c = check_contact(cs, Point{0.3, y, -1.0});
    EXPECT_TRUE(c.pass);
    EXPECT_DOUBLE_EQ(c.top, 1.0);  // θ ^ dθ = dx ^ dy ^ dz
  }
}

TEST(ContactTest, NonContactFormIsDetected) {
  const auto cs = make({"x", "y", "z"}, {"0", "0", "1"}, {"1", "0", "0", "0", "1", "0", "0", "0", "0"});
  EXPECT_FALSE(check_contact(cs, Point{0, 0, 0}).pass);
  EXPECT_THROW(reeb_field(cs, Point{0, 0, 0}, 1), GeometryError);
}

TEST(ContactTest, HeisenbergReebField) {
  const auto t = reeb_field(heisenberg(), Point{0.5, -0.7, 0.2}, 2);
  EXPECT_NEAR(t[0].value(), 0.0, 1e-15);
  EXPECT_NEAR(t[1].value(), 0.0, 1e-15);
  EXPECT_NEAR(t[2].value(), 1.0, 1e-15);
  EXPECT_LT(max_abs(t[2] - Jet(1.0)), 1e-14);
}

TEST(ContactTest, ReebFieldDefiningEquations) {
  const auto cs = sphere_chart();
  const Point p{0.3, -0.2, 0.6};
  const auto t = reeb_field(cs, p, 2);
  const KFormValue theta = cs.theta().evaluate(p, 3);
  EXPECT_LT(max_abs(evaluate(theta, t) - Jet(1.0)), 1e-12);
  EXPECT_LT(max_abs(interior_product(t, exterior_derivative(theta))), 1e-12);
}

TEST(ContactTest, NormalizationHeisenbergIsOne) {
  EXPECT_NEAR(normalize_theta(heisenberg(), Point{0.1, 0.9, 0.0}, 0).value(), 1.0, 1e-14);
}

TEST(ContactTest, NormalizationAnisotropic) {
  // g_yy = b^2: |dθ on H|^2 = 2 / b^2, so μ = b.
  const auto cs = make({"x", "y", "z"}, {"-y", "0", "1"},
                       {"1", "0", "0", "0", "b^2", "0", "0", "0", "0"}, ParamMap{{"b", 2.0}});
  EXPECT_NEAR(normalize_theta(cs, Point{0.0, 0.3, 0.1}, 0).value(), 2.0, 1e-13);
}

TEST(ContactTest, NormalizationDerivativesMatchFiniteDifferences) {
  const auto cs = perturbed();
  const Point p{0.4, -0.3, 0.2};
  const Jet mu = normalize_theta(cs, p, 2);
  const double h = 1e-5;
  for (int i = 0; i < 3; ++i) {
    Point a = p, b = p;
    a[i] += h;
    b[i] -= h;
    const Jet ma = normalize_theta(cs, a, 1);
    const Jet mb = normalize_theta(cs, b, 1);
    EXPECT_NEAR(mu.gradient(i), (ma.value() - mb.value()) / (2 * h), 1e-8);
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(mu.hessian(i, k), (ma.gradient(k) - mb.gradient(k)) / (2 * h), 1e-7);
    }
  }
}

TEST(ContactTest, DegenerateMetricOnHThrows) {
  const auto cs = make({"x", "y", "z"}, {"-y", "0", "1"}, {"1", "0", "0", "0", "0", "0", "0", "0", "0"});
  EXPECT_THROW(normalize_theta(cs, Point{0, 0, 0}, 0), GeometryError);
}

TEST(FrameTest, HeisenbergFrameByHand) {
  const Point p{0.2, 1.7, -0.4};  // |y| > 1 on purpose
  const auto f = adapted_frame(heisenberg(), p, 2);
  // X1 = d/dx + y d/dz, X2 = d/dy, T = d/dz.
  const double expected[3][3] = {{0, 0, 1}, {1, 0, 1.7}, {0, 1, 0}};
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(f.frame[k][i].value(), expected[k][i], 1e-14);
  }
  // e1 = dx, e2 = dy, θ̂ = dz - y dx.
  EXPECT_NEAR(f.coframe[1][0].value(), 1.0, 1e-14);
  EXPECT_NEAR(f.coframe[2][1].value(), 1.0, 1e-14);
  EXPECT_NEAR(f.coframe[0][0].value(), -1.7, 1e-14);
  EXPECT_NEAR(f.omega(1, 2).value(), 1.0, 1e-14);
  EXPECT_LT(frame_residuals(f).max(), 1e-13);
}

TEST(FrameTest, ResidualsSmallOnCurvedCharts) {
  for (const auto& cs : {perturbed(), sphere_chart()}) {
    for (const Point& p : {Point{0.1, 0.2, 0.3}, Point{-0.7, 0.5, -0.9}}) {
      EXPECT_LT(frame_residuals(adapted_frame(cs, p, 2)).max(), 1e-12);
    }
  }
  EXPECT_LT(frame_residuals(adapted_frame(n2_split(2.0), Point{0.1, 0.2, 0.3, -0.4, 0.5}, 2)).max(),
            1e-12);
}

TEST(FrameTest, FrameJetsMatchFiniteDifferences) {
  const auto cs = sphere_chart();
  const Point p{0.3, -0.4, 0.25};
  const auto f = adapted_frame(cs, p, 2);
  const double h = 1e-5;
  for (int i = 0; i < 3; ++i) {
    Point a = p, b = p;
    a[i] += h;
    b[i] -= h;
    const auto fa = adapted_frame(cs, a, 0);
    const auto fb = adapted_frame(cs, b, 0);
    for (int k = 0; k < 3; ++k) {
      for (int j = 0; j < 3; ++j) {
        const double fd = (fa.coframe[k][j].value() - fb.coframe[k][j].value()) / (2 * h);
        EXPECT_NEAR(f.coframe[k][j].gradient(i), fd, 1e-7);
        const double fdv = (fa.frame[k][j].value() - fb.frame[k][j].value()) / (2 * h);
        EXPECT_NEAR(f.frame[k][j].gradient(i), fdv, 1e-7);
      }
    }
  }
}

TEST(FrameTest, SeedVectorsGiveAnotherAdmissibleFrame) {
  FrameOptions opt;
  opt.seeds = {{1.0, 1.0, 0.0}, {1.0, -2.0, 0.5}};
  const auto f = adapted_frame(perturbed(), Point{0.3, 0.2, 0.1}, 2, opt);
  EXPECT_LT(frame_residuals(f).max(), 1e-12);
  EXPECT_GT(f.omega(1, 2).value(), 0.0);
}

TEST(FrameTest, DegenerateSeedsBreakDown) {
  FrameOptions opt;
  opt.seeds = {{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}};
  EXPECT_THROW(adapted_frame(heisenberg(), Point{0, 0, 0}, 1, opt), GeometryError);
  opt.seeds = {{1.0, 0.0, 0.0}};
  EXPECT_THROW(adapted_frame(heisenberg(), Point{0, 0, 0}, 1, opt), GeometryError);
}

TEST(SpectrumTest, SplitExampleLambdas) {
  for (double c : {1.0, 2.0, 3.0}) {
    const auto f = adapted_frame(n2_split(c), Point{0.2, -0.1, 0.4, 0.3, 0.0}, 0);
    const auto lam = lambda_spectrum(f);
    const double s = std::sqrt(2.0 / (1.0 + std::pow(c, -4)));
    ASSERT_EQ(lam.size(), 2u);
    EXPECT_NEAR(lam[0], s, 1e-12);
    EXPECT_NEAR(lam[1], s / (c * c), 1e-12);
    EXPECT_NEAR(lam[0] * lam[0] + lam[1] * lam[1], 2.0, 1e-12);
  }
}

TEST(SpectrumTest, ClassifyHeisenbergAndSplit) {
  const std::vector<Point> pts3 = {Point{0, 0, 0}, Point{0.5, -0.5, 0.2}};
  const auto c3 = classify(heisenberg(), pts3);
  EXPECT_TRUE(c3.contact);
  EXPECT_TRUE(c3.cr_compatible);
  EXPECT_TRUE(c3.partially_integrable);
  EXPECT_NEAR(c3.lambda_min[0], 1.0, 1e-12);

  const std::vector<Point> pts5 = {Point{0, 0, 0, 0, 0}, Point{0.1, 0.2, 0.3, 0.4, 0.5}};
  const auto c5 = classify(n2_split(2.0), pts5);
  EXPECT_TRUE(c5.contact);
  EXPECT_FALSE(c5.cr_compatible);
  EXPECT_TRUE(c5.partially_integrable);
  EXPECT_EQ(c5.points, 2);
  EXPECT_TRUE(classify(n2_split(1.0), pts5).cr_compatible);
}

TEST(SpectrumTest, ComplexStructureSquaresToMinusOne) {
  const auto f = adapted_frame(n2_split(2.0), Point{0.2, 0.1, -0.3, 0.4, 0.1}, 0);
  const Eigen::MatrixXd j = levi_complex_structure(f);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_LT((j * j + id).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((j.transpose() * j - id).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace srcontact
