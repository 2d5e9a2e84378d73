#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srcontact/calculus/evaluate.hpp"
#include "srcontact/calculus/jet.hpp"
#include "srcontact/calculus/jet_linalg.hpp"
#include "srcontact/errors.hpp"
#include "srcontact/forms/multi_index.hpp"

namespace srcontact {

/// Tangent vector at a point, components in the coordinate basis.
class VectorValue {
 public:
  VectorValue() = default;
  explicit VectorValue(int dim) : c_(dim) {}
  explicit VectorValue(std::vector<Jet> c) : c_(std::move(c)) {}

  static VectorValue basis(int dim, int i) {
    VectorValue v(dim);
    v.c_[i] = Jet(1.0);
    return v;
  }

  int dim() const noexcept { return static_cast<int>(c_.size()); }
  Jet& operator[](int i) { return c_[i]; }
  const Jet& operator[](int i) const { return c_[i]; }

  friend VectorValue operator+(VectorValue a, const VectorValue& b) {
    for (int i = 0; i < a.dim(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend VectorValue operator-(VectorValue a, const VectorValue& b) {
    for (int i = 0; i < a.dim(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend VectorValue operator*(const Jet& s, VectorValue a) {
    for (auto& c : a.c_) c = s * c;
    return a;
  }

 private:
  std::vector<Jet> c_;
};

/// Value of a k-form at a point: one jet per increasing multi-index.
/// Evaluation uses the determinant convention, (dx^dy)(d/dx, d/dy) = 1.
class KFormValue {
 public:
  KFormValue() = default;
  KFormValue(int dim, int degree)
      : dim_(dim), degree_(degree), c_(MultiIndexTable::get(dim, degree).size()) {}

  static KFormValue scalar(int dim, Jet f) {
    KFormValue a(dim, 0);
    a.c_[0] = std::move(f);
    return a;
  }

  static KFormValue one_form(std::vector<Jet> c) {
    KFormValue a(static_cast<int>(c.size()), 1);
    a.c_ = std::move(c);
    return a;
  }

  /// dx^i as a constant form.
  static KFormValue differential(int dim, int i) {
    KFormValue a(dim, 1);
    a.c_[i] = Jet(1.0);
    return a;
  }

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return c_.size(); }
  const MultiIndexTable& table() const { return MultiIndexTable::get(dim_, degree_); }

  Jet& operator[](std::size_t pos) { return c_[pos]; }
  const Jet& operator[](std::size_t pos) const { return c_[pos]; }

  /// Component on an increasing index list.
  const Jet& at(std::initializer_list<int> idx) const { return c_[position(idx)]; }
  Jet& at(std::initializer_list<int> idx) { return c_[position(idx)]; }

  std::size_t position(std::span<const int> idx) const {
    std::uint32_t m = 0;
    for (int i : idx) m |= 1u << i;
    assert(std::popcount(m) == degree_);
    return table().position(m);
  }
  std::size_t position(std::initializer_list<int> idx) const {
    return position(std::span<const int>(idx.begin(), idx.size()));
  }

  /// Lowest jet order among the components.
  int order() const {
    int k = kMaxJetOrder;
    for (const auto& c : c_) k = std::min(k, c.order());
    return k;
  }

  KFormValue& operator+=(const KFormValue& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  KFormValue& operator-=(const KFormValue& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend KFormValue operator+(KFormValue a, const KFormValue& b) { return a += b; }
  friend KFormValue operator-(KFormValue a, const KFormValue& b) { return a -= b; }
  friend KFormValue operator*(const Jet& s, KFormValue a) {
    for (auto& c : a.c_) c = s * c;
    return a;
  }

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::vector<Jet> c_;
};

/// Largest coefficient magnitude over all components (all jet orders).
inline double max_abs(const KFormValue& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs(a[i]));
  return m;
}

/// Largest value-part magnitude over all components.
inline double max_abs_value(const KFormValue& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i].value()));
  return m;
}

inline KFormValue wedge(const KFormValue& a, const KFormValue& b) {
  assert(a.dim() == b.dim());
  if (a.degree() + b.degree() > a.dim()) {
    throw Error("wedge degree overflow: " + std::to_string(a.degree()) + " + " +
                std::to_string(b.degree()) + " > " + std::to_string(a.dim()));
  }
  KFormValue out(a.dim(), a.degree() + b.degree());
  const auto& ta = a.table();
  const auto& tb = b.table();
  const auto& to = out.table();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    for (std::size_t j = 0; j < tb.size(); ++j) {
      const std::uint32_t mi = ta.mask(i);
      const std::uint32_t mj = tb.mask(j);
      if (mi & mj) continue;
      const Jet prod = a[i] * b[j];
      if (shuffle_sign(mi, mj) > 0) {
        out[to.position(mi | mj)] += prod;
      } else {
        out[to.position(mi | mj)] -= prod;
      }
    }
  }
  return out;
}

/// v ⌟ a, so that (v ⌟ a)(w2, ..., wk) = a(v, w2, ..., wk).
inline KFormValue interior_product(const VectorValue& v, const KFormValue& a) {
  assert(a.degree() >= 1 && v.dim() == a.dim());
  KFormValue out(a.dim(), a.degree() - 1);
  const auto& ta = a.table();
  const auto& to = out.table();
  for (std::size_t p = 0; p < ta.size(); ++p) {
    const std::uint32_t m = ta.mask(p);
    for (std::uint32_t bits = m; bits != 0; bits &= bits - 1) {
      const int i = std::countr_zero(bits);
      const std::uint32_t rest = m & ~(1u << i);
      // Moving i to the front passes the entries of rest below it.
      const int below = std::popcount(rest & ((1u << i) - 1));
      const Jet term = v[i] * a[p];
      if (below % 2 == 0) {
        out[to.position(rest)] += term;
      } else {
        out[to.position(rest)] -= term;
      }
    }
  }
  return out;
}

/// a(v_1, ..., v_k).
inline Jet evaluate(const KFormValue& a, std::span<const VectorValue> vs) {
  assert(static_cast<int>(vs.size()) == a.degree());
  KFormValue cur = a;
  for (const auto& v : vs) cur = interior_product(v, cur);
  return cur[0];
}

inline Jet evaluate(const KFormValue& a, const VectorValue& v) {
  return evaluate(a, std::span<const VectorValue>(&v, 1));
}

inline Jet evaluate(const KFormValue& a, const VectorValue& v, const VectorValue& w) {
  const VectorValue vs[2] = {v, w};
  return evaluate(a, vs);
}

/// Exterior derivative of a jet-valued form; the result is one order lower.
inline KFormValue exterior_derivative(const KFormValue& a) {
  if (a.degree() + 1 > a.dim()) {
    throw Error("exterior derivative of a top-degree form");
  }
  KFormValue out(a.dim(), a.degree() + 1);
  const auto& to = out.table();
  const auto& ta = a.table();
  for (std::size_t q = 0; q < to.size(); ++q) {
    const std::uint32_t m = to.mask(q);
    int position = 0;
    for (std::uint32_t bits = m; bits != 0; bits &= bits - 1, ++position) {
      const int i = std::countr_zero(bits);
      const Jet term = a[ta.position(m & ~(1u << i))].partial(i);
      if (position % 2 == 0) {
        out[q] += term;
      } else {
        out[q] -= term;
      }
    }
  }
  return out;
}

/// Differential of a scalar jet as a 1-form.
inline KFormValue differential(const Jet& f, int dim) {
  std::vector<Jet> c(dim);
  for (int i = 0; i < dim; ++i) c[i] = f.partial(i);
  return KFormValue::one_form(std::move(c));
}

/// Derivative of a jet along a vector: v(f) = sum_i v^i d_i f.
inline Jet directional(const VectorValue& v, const Jet& f) {
  Jet out(0.0);
  for (int i = 0; i < v.dim(); ++i) out += v[i] * f.partial(i);
  return out;
}

/// A k-form field with expression coefficients on increasing multi-indices.
class FormField {
 public:
  FormField() = default;
  FormField(int dim, int degree, std::vector<Expr> coefficients)
      : dim_(dim), degree_(degree), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != MultiIndexTable::get(dim, degree).size()) {
      throw SpecError("form field has " + std::to_string(coefficients_.size()) +
                      " coefficients, expected " +
                      std::to_string(MultiIndexTable::get(dim, degree).size()));
    }
  }

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  std::span<const Expr> coefficients() const noexcept { return coefficients_; }

  KFormValue evaluate(const Point& p, int order) const {
    KFormValue a(dim_, degree_);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
      a[i] = eval_jet(coefficients_[i], p, order);
    }
    return a;
  }

  FormField negated() const {
    std::vector<Expr> c;
    for (const auto& e : coefficients_) c.push_back(-e);
    return FormField(dim_, degree_, std::move(c));
  }

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::vector<Expr> coefficients_;
};

/// d of a field at p with `order` derivatives kept in the result.
inline KFormValue exterior_derivative(const FormField& f, const Point& p, int order) {
  return exterior_derivative(f.evaluate(p, order + 1));
}

// ---------------------------------------------------------------------------
// Frames and coframes

/// Dual frame of a coframe (rows of the coframe matrix inverted).
inline std::vector<VectorValue> dual_frame(std::span<const KFormValue> coframe) {
  const int d = static_cast<int>(coframe.size());
  JetMatrix e(d, d);
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) e(k, j) = coframe[k][j];
  }
  JetMatrix f;
  try {
    f = jet_inverse(e);
  } catch (const SingularMatrixError&) {
    throw GeometryError("degenerate coframe");
  }
  std::vector<VectorValue> frame(d, VectorValue(d));
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) frame[k][i] = f(i, k);
  }
  return frame;
}

/// Components of `a` in the coframe basis, labelled by coframe index:
/// a = sum_I c_I e^{i1} ^ ... ^ e^{ik}.
inline KFormValue express_in_frame(const KFormValue& a, std::span<const VectorValue> frame) {
  KFormValue c(a.dim(), a.degree());
  const auto& t = c.table();
  std::vector<VectorValue> args;
  for (std::size_t p = 0; p < t.size(); ++p) {
    args.clear();
    for (int i : t.indices(p)) args.push_back(frame[i]);
    c[p] = evaluate(a, args);
  }
  return c;
}

inline KFormValue express_in_coframe(const KFormValue& a, std::span<const KFormValue> coframe) {
  const auto frame = dual_frame(coframe);
  return express_in_frame(a, frame);
}

/// Inverse of express_in_coframe: sum_I c_I e^I in coordinates.
inline KFormValue from_coframe(const KFormValue& c, std::span<const KFormValue> coframe) {
  const int d = c.dim();
  KFormValue out(d, c.degree());
  const auto& t = c.table();
  for (std::size_t p = 0; p < t.size(); ++p) {
    KFormValue term = KFormValue::scalar(d, c[p]);
    for (int i : t.indices(p)) term = wedge(term, coframe[i]);
    out += term;
  }
  return out;
}

}  // namespace srcontact
