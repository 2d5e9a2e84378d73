#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>

namespace srcontact {

enum class UnaryOp { kNeg, kSqrt, kSin, kCos, kExp };
enum class BinaryOp { kAdd, kSub, kMul, kDiv };

/// Immutable expression tree over chart coordinates. Copies share nodes.
class Expr {
 public:
  struct Constant {
    double value;
    std::string name;  // "pi", "e", or empty for numeric literals
  };
  struct Coordinate {
    int index;
  };
  struct Unary {
    UnaryOp op;
    std::shared_ptr<const Expr> arg;
  };
  struct Binary {
    BinaryOp op;
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;
  };
  struct Power {
    std::shared_ptr<const Expr> base;
    int exponent;
  };
  using Node = std::variant<Constant, Coordinate, Unary, Binary, Power>;

  Expr() : Expr(Constant{0.0, {}}) {}
  explicit Expr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

  static Expr constant(double v) { return Expr(Constant{v, {}}); }
  static Expr named_constant(double v, std::string name) {
    return Expr(Constant{v, std::move(name)});
  }
  static Expr coordinate(int index) { return Expr(Coordinate{index}); }
  static Expr unary(UnaryOp op, const Expr& a) { return Expr(Unary{op, a.shared()}); }
  static Expr binary(BinaryOp op, const Expr& a, const Expr& b) {
    return Expr(Binary{op, a.shared(), b.shared()});
  }
  static Expr power(const Expr& base, int n) { return Expr(Power{base.shared(), n}); }

  const Node& node() const noexcept { return *node_; }

  bool is_constant(double v) const {
    const auto* c = std::get_if<Constant>(node_.get());
    return c != nullptr && c->value == v;
  }

  friend Expr operator+(const Expr& a, const Expr& b) { return binary(BinaryOp::kAdd, a, b); }
  friend Expr operator-(const Expr& a, const Expr& b) { return binary(BinaryOp::kSub, a, b); }
  friend Expr operator*(const Expr& a, const Expr& b) { return binary(BinaryOp::kMul, a, b); }
  friend Expr operator/(const Expr& a, const Expr& b) { return binary(BinaryOp::kDiv, a, b); }
  friend Expr operator-(const Expr& a) { return unary(UnaryOp::kNeg, a); }

 private:
  std::shared_ptr<const Expr> shared() const { return std::make_shared<const Expr>(*this); }

  std::shared_ptr<const Node> node_;
};

inline const char* function_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::kSqrt: return "sqrt";
    case UnaryOp::kSin: return "sin";
    case UnaryOp::kCos: return "cos";
    case UnaryOp::kExp: return "exp";
    case UnaryOp::kNeg: return "-";
  }
  return "?";
}

}  // namespace srcontact
