#pragma once

#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srcontact/calculus/expr.hpp"
#include "srcontact/calculus/jet.hpp"
#include "srcontact/calculus/parser.hpp"
#include "srcontact/errors.hpp"

namespace srcontact {

/// Coordinates of a point in a chart.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> x) : x_(std::move(x)) {}
  Point(std::initializer_list<double> x) : x_(x) {}

  int dim() const noexcept { return static_cast<int>(x_.size()); }
  double operator[](int i) const { return x_[i]; }
  double& operator[](int i) { return x_[i]; }
  std::span<const double> coords() const noexcept { return x_; }

 private:
  std::vector<double> x_;
};

namespace eval_detail {

inline Jet eval(const Expr& e, const Point& p, int order, std::span<const std::string> names) {
  return std::visit(
      [&](const auto& n) -> Jet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return Jet(n.value);
        } else if constexpr (std::is_same_v<T, Expr::Coordinate>) {
          if (n.index < 0 || n.index >= p.dim()) {
            throw DomainError("coordinate index " + std::to_string(n.index) +
                              " outside a chart of dimension " + std::to_string(p.dim()));
          }
          return Jet::variable(p.dim(), order, n.index, p[n.index]);
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          const Jet a = eval(*n.arg, p, order, names);
          switch (n.op) {
            case UnaryOp::kNeg: return -a;
            case UnaryOp::kSqrt:
              if (a.value() < 0.0 || (a.value() == 0.0 && order > 0 && !a.is_constant())) {
                throw DomainError("sqrt of nonpositive value in '" + to_string(e, names) + "'");
              }
              return sqrt(a);
            case UnaryOp::kSin: return sin(a);
            case UnaryOp::kCos: return cos(a);
            case UnaryOp::kExp: return exp(a);
          }
          return a;
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          const Jet a = eval(*n.lhs, p, order, names);
          const Jet b = eval(*n.rhs, p, order, names);
          switch (n.op) {
            case BinaryOp::kAdd: return a + b;
            case BinaryOp::kSub: return a - b;
            case BinaryOp::kMul: return a * b;
            case BinaryOp::kDiv:
              if (b.value() == 0.0) {
                throw DomainError("division by zero in '" + to_string(e, names) + "'");
              }
              return a / b;
          }
          return a;
        } else {
          const Jet a = eval(*n.base, p, order, names);
          if (n.exponent < 0 && a.value() == 0.0) {
            throw DomainError("negative power of zero in '" + to_string(e, names) + "'");
          }
          return pow(a, n.exponent);
        }
      },
      e.node());
}

}  // namespace eval_detail

/// Value and derivatives (up to `order`) of `e` at `p`.
inline Jet eval_jet(const Expr& e, const Point& p, int order,
                    std::span<const std::string> names = {}) {
  return eval_detail::eval(e, p, order, names).expanded(p.dim(), order);
}

inline double eval_value(const Expr& e, const Point& p) { return eval_jet(e, p, 0).value(); }

}  // namespace srcontact
