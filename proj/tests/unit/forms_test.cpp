#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "srcontact/forms/forms.hpp"

namespace srcontact {
namespace {

const std::vector<std::string> kCoords5 = {"a", "b", "c", "d", "f"};

// A random smooth field component built from the coordinates.
Expr random_expr(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> pick(0, dim - 1);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  Expr e = Expr::constant(coef(rng));
  for (int t = 0; t < 3; ++t) {
    const Expr xi = Expr::coordinate(pick(rng));
    const Expr xj = Expr::coordinate(pick(rng));
    e = e + Expr::constant(coef(rng)) * xi * xj;
  }
  e = e + Expr::unary(UnaryOp::kSin, Expr::coordinate(pick(rng)) * Expr::coordinate(pick(rng)));
  return e;
}

FormField random_field(std::mt19937_64& rng, int dim, int degree) {
  std::vector<Expr> c;
  for (std::size_t i = 0; i < MultiIndexTable::get(dim, degree).size(); ++i) {
    c.push_back(random_expr(rng, dim));
  }
  return FormField(dim, degree, std::move(c));
}

double max_abs_diff(const KFormValue& a, const KFormValue& b) { return max_abs(a - b); }

TEST(MultiIndexTest, LexicographicOrder) {
  const auto& t = MultiIndexTable::get(4, 2);
  ASSERT_EQ(t.size(), 6u);
  const std::vector<std::vector<int>> expected = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (std::size_t p = 0; p < t.size(); ++p) {
    EXPECT_EQ(t.indices(p), expected[p]);
    EXPECT_EQ(t.position(t.mask(p)), p);
  }
}

TEST(FormsTest, DeterminantConvention) {
  const KFormValue dx = KFormValue::differential(3, 0);
  const KFormValue dy = KFormValue::differential(3, 1);
  const KFormValue w = wedge(dx, dy);
  const VectorValue ex = VectorValue::basis(3, 0);
  const VectorValue ey = VectorValue::basis(3, 1);
  EXPECT_EQ(evaluate(w, ex, ey).value(), 1.0);
  EXPECT_EQ(evaluate(w, ey, ex).value(), -1.0);
  EXPECT_EQ(wedge(dy, dx).at({0, 1}).value(), -1.0);
  EXPECT_EQ(max_abs(wedge(dx, dx)), 0.0);
}

TEST(FormsTest, WedgeDegreeOverflowThrows) {
  const KFormValue a(3, 2);
  EXPECT_THROW(wedge(a, a), Error);
}

TEST(FormsTest, ExteriorDerivativeOfHeisenbergForm) {
  // θ = dz - y dx, dθ = dx ^ dy.
  const std::vector<std::string> xyz = {"x", "y", "z"};
  const FormField theta(3, 1,
                        {parse_expr("-y", xyz), parse_expr("0", xyz), parse_expr("1", xyz)});
  const KFormValue dtheta = exterior_derivative(theta, Point{0.4, -0.2, 1.0}, 1);
  EXPECT_EQ(dtheta.at({0, 1}).value(), 1.0);
  EXPECT_EQ(dtheta.at({0, 2}).value(), 0.0);
  EXPECT_EQ(dtheta.at({1, 2}).value(), 0.0);
}

TEST(FormsTest, DSquaredVanishes) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int degree = trial % 4;
    const FormField a = random_field(rng, 5, degree);
    const Point p{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const KFormValue dda = exterior_derivative(exterior_derivative(a.evaluate(p, 3)));
    EXPECT_LT(max_abs(dda), 1e-12) << "degree " << degree;
  }
}

TEST(FormsTest, LeibnizRule) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = trial % 3;
    const int q = (trial / 3) % 3;
    const KFormValue a = random_field(rng, 5, p).evaluate(Point{0.1, 0.2, -0.3, 0.5, 0.7}, 2);
    const KFormValue b = random_field(rng, 5, q).evaluate(Point{0.1, 0.2, -0.3, 0.5, 0.7}, 2);
    const KFormValue lhs = exterior_derivative(wedge(a, b));
    KFormValue rhs = wedge(exterior_derivative(a), b);
    const KFormValue second = wedge(a, exterior_derivative(b));
    rhs = (p % 2 == 0) ? rhs + second : rhs - second;
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
  }
}

TEST(FormsTest, InteriorProductIsAntiderivation) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Point pt{0.3, -0.1, 0.8, 0.2, -0.6};
  for (int trial = 0; trial < 30; ++trial) {
    const int p = 1 + trial % 2;
    const int q = 1 + (trial / 2) % 2;
    const KFormValue a = random_field(rng, 5, p).evaluate(pt, 1);
    const KFormValue b = random_field(rng, 5, q).evaluate(pt, 1);
    VectorValue v(5);
    for (int i = 0; i < 5; ++i) v[i] = Jet(u(rng));
    const KFormValue lhs = interior_product(v, wedge(a, b));
    KFormValue rhs = wedge(interior_product(v, a), b);
    const KFormValue second = wedge(a, interior_product(v, b));
    rhs = (p % 2 == 0) ? rhs + second : rhs - second;
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
  }
}

TEST(FormsTest, CartanFormulaOnOneForms) {
  // dα(X, Y) = X(α(Y)) - Y(α(X)) - α([X, Y]) for constant X, Y.
  std::mt19937_64 rng(14);
  const FormField alpha = random_field(rng, 5, 1);
  const Point pt{0.2, 0.4, -0.5, 0.1, 0.3};
  const KFormValue a = alpha.evaluate(pt, 2);
  const VectorValue x = VectorValue::basis(5, 1) + VectorValue::basis(5, 3);
  const VectorValue y = VectorValue::basis(5, 4);
  const Jet lhs = evaluate(exterior_derivative(a), x, y);
  const Jet rhs = directional(x, evaluate(a, y)) - directional(y, evaluate(a, x));
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
}

TEST(FormsTest, CoframeRoundTrip) {
  std::mt19937_64 rng(15);
  const Point pt{0.2, -0.4, 0.5, 0.1, -0.3};
  std::vector<KFormValue> coframe;
  for (int k = 0; k < 5; ++k) {
    KFormValue e = random_field(rng, 5, 1).evaluate(pt, 2);
    e[k] += Jet(6.0);  // keep the coframe well conditioned
    coframe.push_back(e);
  }
  for (int degree = 0; degree <= 5; ++degree) {
    const KFormValue a = random_field(rng, 5, degree).evaluate(pt, 2);
    const KFormValue c = express_in_coframe(a, coframe);
    EXPECT_LT(max_abs_diff(from_coframe(c, coframe), a), 1e-11) << "degree " << degree;
  }
  const auto frame = dual_frame(coframe);
  for (int k = 0; k < 5; ++k) {
    for (int j = 0; j < 5; ++j) {
      EXPECT_LT(max_abs_diff(evaluate(coframe[k], frame[j]), Jet(k == j ? 1.0 : 0.0)), 1e-12);
    }
  }
}

TEST(FormsTest, DegenerateCoframeThrows) {
  std::vector<KFormValue> coframe = {KFormValue::differential(3, 0), KFormValue::differential(3, 1),
                                     KFormValue::differential(3, 1)};
  EXPECT_THROW(dual_frame(coframe), GeometryError);
}

TEST(FormsTest, FieldCoefficientCountIsChecked) {
  EXPECT_THROW(FormField(3, 2, {Expr::constant(1.0)}), SpecError);
}

}  // namespace
}  // namespace srcontact
