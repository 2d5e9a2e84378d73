#pragma once

// Expression grammar (see docs/grammar.md):
//
//   expr     := term { ("+" | "-") term }
//   term     := unary { ("*" | "/") unary }
//   unary    := "-" unary | power
//   power    := primary [ "^" exponent ]
//   exponent := [ "-" ] INTEGER [ "^" exponent ]  |  "(" [ "-" ] INTEGER ")"
//   primary  := NUMBER | IDENT | FUNC "(" expr ")" | "(" expr ")"
//   FUNC     := "sqrt" | "sin" | "cos" | "exp"
//
// Identifiers resolve to chart coordinates first, then named parameters,
// then the constants `pi` and `e`.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srcontact/calculus/expr.hpp"
#include "srcontact/errors.hpp"

namespace srcontact {

using ParamMap = std::map<std::string, double, std::less<>>;

namespace parser_detail {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> coords, const ParamMap& params)
      : text_(text), coords_(coords), params_(params) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::power(base, exponent());
    return base;
  }

  int integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || v > 64) {
      pos_ = start;
      fail("exponent out of range");
    }
    return v;
  }

  int exponent() {
    if (accept('(')) {
      const bool neg = accept('-');
      const int v = integer();
      expect(')');
      return neg ? -v : v;
    }
    const bool neg = accept('-');
    const std::size_t start = pos_;
    int v = integer();
    if (neg) v = -v;
    if (accept('^')) {
      const int inner = exponent();
      if (inner < 0) {
        pos_ = start;
        fail("non-integer exponent");
      }
      const double folded = std::pow(static_cast<double>(v), inner);
      if (std::abs(folded) > 64) {
        pos_ = start;
        fail("exponent out of range");
      }
      v = static_cast<int>(folded);
    }
    return v;
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);

    if (auto it = std::find(coords_.begin(), coords_.end(), name); it != coords_.end()) {
      return Expr::coordinate(static_cast<int>(it - coords_.begin()));
    }
    if (auto it = params_.find(name); it != params_.end()) return Expr::constant(it->second);
    if (name == "pi") return Expr::named_constant(std::numbers::pi, "pi");
    if (name == "e") return Expr::named_constant(std::numbers::e, "e");

    static constexpr std::pair<std::string_view, UnaryOp> kFunctions[] = {
        {"sqrt", UnaryOp::kSqrt}, {"sin", UnaryOp::kSin}, {"cos", UnaryOp::kCos},
        {"exp", UnaryOp::kExp}};
    for (const auto& [fname, op] : kFunctions) {
      if (name == fname) {
        expect('(');
        Expr arg = expr();
        expect(')');
        return Expr::unary(op, arg);
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::span<const std::string> coords_;
  const ParamMap& params_;
  std::size_t pos_ = 0;
};

}  // namespace parser_detail

/// Parse `text` over the named chart coordinates. Named parameters are
/// substituted as numeric constants.
inline Expr parse_expr(std::string_view text, std::span<const std::string> coords,
                       const ParamMap& params = {}) {
  return parser_detail::Parser(text, coords, params).parse();
}

/// Reserved words that cannot name a coordinate or parameter.
inline bool is_reserved_name(std::string_view name) {
  return name == "sqrt" || name == "sin" || name == "cos" || name == "exp" || name == "pi" ||
         name == "e";
}

// ---------------------------------------------------------------------------
// Printing

namespace printer_detail {

inline int precedence(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          return n.value < 0 || std::signbit(n.value) ? 3 : 5;
        } else if constexpr (std::is_same_v<T, Expr::Coordinate>) {
          return 5;
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          return n.op == UnaryOp::kNeg ? 3 : 5;
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          return (n.op == BinaryOp::kAdd || n.op == BinaryOp::kSub) ? 1 : 2;
        } else {
          return 4;
        }
      },
      e.node());
}

inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline void print(const Expr& e, std::span<const std::string> coords, std::string& out);

inline void print_child(const Expr& child, bool parens, std::span<const std::string> coords,
                        std::string& out) {
  if (parens) out += '(';
  print(child, coords, out);
  if (parens) out += ')';
}

inline void print(const Expr& e, std::span<const std::string> coords, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Constant>) {
          out += n.name.empty() ? format_number(n.value) : n.name;
        } else if constexpr (std::is_same_v<T, Expr::Coordinate>) {
          out += n.index < static_cast<int>(coords.size()) ? coords[n.index]
                                                            : "x" + std::to_string(n.index + 1);
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          if (n.op == UnaryOp::kNeg) {
            out += '-';
            print_child(*n.arg, precedence(*n.arg) < 3, coords, out);
          } else {
            out += function_name(n.op);
            print_child(*n.arg, true, coords, out);
          }
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          const int p = precedence(e);
          print_child(*n.lhs, precedence(*n.lhs) < p, coords, out);
          static constexpr const char* kOps[] = {" + ", " - ", " * ", " / "};
          out += kOps[static_cast<int>(n.op)];
          print_child(*n.rhs, precedence(*n.rhs) <= p, coords, out);
        } else {
          print_child(*n.base, precedence(*n.base) < 5, coords, out);
          out += '^';
          out += std::to_string(n.exponent);
        }
      },
      e.node());
}

}  // namespace printer_detail

/// Render with the minimal parentheses that reparse to the same tree.
inline std::string to_string(const Expr& e, std::span<const std::string> coords = {}) {
  std::string out;
  printer_detail::print(e, coords, out);
  return out;
}

}  // namespace srcontact
