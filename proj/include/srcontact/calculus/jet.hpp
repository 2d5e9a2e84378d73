#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "srcontact/calculus/jet_layout.hpp"

namespace srcontact {

/// Value and partial derivatives of a scalar function at a point, carried as
/// the truncated Taylor polynomial  f(p + h) = sum_alpha c_alpha h^alpha.
///
/// A jet without a layout is a plain constant that adapts to whatever it is
/// combined with. Binary operations on jets of different order truncate to
/// the lower order; jets of different dimension must not be mixed.
class Jet {
 public:
  Jet() : c_(1, 0.0) {}
  Jet(double value) : c_(1, value) {}  // NOLINT: constants convert implicitly

  static Jet constant(int dim, int order, double value) {
    Jet j(&JetLayout::get(dim, order));
    j.c_[0] = value;
    return j;
  }

  /// The coordinate function x_var evaluated at `value`.
  static Jet variable(int dim, int order, int var, double value) {
    Jet j = constant(dim, order, value);
    if (order >= 1) j.c_[1 + var] = 1.0;
    return j;
  }

  bool is_constant() const noexcept { return layout_ == nullptr; }
  int dim() const noexcept { return layout_ ? layout_->dim() : 0; }
  int order() const noexcept { return layout_ ? layout_->order() : kMaxJetOrder; }
  const JetLayout* layout() const noexcept { return layout_; }

  double value() const noexcept { return c_[0]; }

  double gradient(int i) const noexcept {
    return (layout_ && layout_->order() >= 1) ? c_[1 + i] : 0.0;
  }

  double hessian(int i, int j) const {
    if (!layout_ || layout_->order() < 2) return 0.0;
    const double c = c_[layout_->quadratic(i, j)];
    return i == j ? 2.0 * c : c;
  }

  std::span<const double> coefficients() const noexcept { return c_; }

  /// Same polynomial cut to a lower order (no-op when already lower).
  Jet truncated(int order) const {
    if (!layout_ || order >= layout_->order()) return *this;
    Jet j(&JetLayout::get(layout_->dim(), order));
    std::copy_n(c_.begin(), j.c_.size(), j.c_.begin());
    return j;
  }

  /// Lift a constant onto an explicit layout; existing layouts are kept.
  Jet expanded(int dim, int order) const {
    if (layout_) return *this;
    return constant(dim, order, c_[0]);
  }

  /// d/dx_var, one order lower.
  Jet partial(int var) const {
    if (!layout_ || layout_->order() == 0) {
      return layout_ ? Jet::constant(layout_->dim(), 0, 0.0) : Jet(0.0);
    }
    const JetLayout& src = *layout_;
    Jet j(&JetLayout::get(src.dim(), src.order() - 1));
    for (std::size_t i = 0; i < j.c_.size(); ++i) {
      const auto up = src.raise(i, var);
      j.c_[i] = (src.exponents(i)[var] + 1) * c_[up];
    }
    return j;
  }

  Jet operator-() const {
    Jet j = *this;
    for (auto& v : j.c_) v = -v;
    return j;
  }

  Jet& operator+=(const Jet& o) { return accumulate(o, 1.0); }
  Jet& operator-=(const Jet& o) { return accumulate(o, -1.0); }
  Jet& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  /// Apply a scalar function given its Taylor coefficients
  /// f(v + u) = sum_k taylor[k] u^k around v = value(); taylor.size() must
  /// exceed order().
  Jet compose(std::span<const double> taylor) const;

 private:
  explicit Jet(const JetLayout* layout) : layout_(layout), c_(layout->size(), 0.0) {}

  Jet& accumulate(const Jet& o, double sign);

  const JetLayout* layout_ = nullptr;
  std::vector<double> c_;
};

inline Jet& Jet::accumulate(const Jet& o, double sign) {
  if (!o.layout_) {
    c_[0] += sign * o.c_[0];
    return *this;
  }
  if (!layout_) {
    const double v = c_[0];
    *this = o;
    if (sign < 0) *this = -*this;
    c_[0] += v;
    return *this;
  }
  assert(layout_->dim() == o.layout_->dim());
  if (o.layout_->order() < layout_->order()) *this = truncated(o.layout_->order());
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += sign * o.c_[i];
  return *this;
}

inline Jet operator*(const Jet& a, const Jet& b) {
  if (!a.layout_) return b * a.c_[0];
  if (!b.layout_) return a * b.c_[0];
  assert(a.layout_->dim() == b.layout_->dim());
  const JetLayout& l = a.layout_->order() <= b.layout_->order() ? *a.layout_ : *b.layout_;
  Jet r(&l);
  for (const auto& p : l.products()) r.c_[p.out] += a.c_[p.lhs] * b.c_[p.rhs];
  return r;
}

inline Jet Jet::compose(std::span<const double> taylor) const {
  const int k = order();
  if (!layout_) return Jet(taylor[0]);
  assert(static_cast<int>(taylor.size()) > k);
  Jet u = *this;
  u.c_[0] = 0.0;
  Jet r = Jet::constant(layout_->dim(), k, taylor[k]);
  for (int i = k - 1; i >= 0; --i) {
    r = r * u;
    r.c_[0] += taylor[i];
  }
  return r;
}

namespace jet_detail {

inline std::vector<double> reciprocal_series(double v, int k) {
  std::vector<double> t(k + 1);
  double p = 1.0 / v;
  for (int i = 0; i <= k; ++i) {
    t[i] = p;
    p *= -1.0 / v;
  }
  return t;
}

}  // namespace jet_detail

/// Reciprocal; the caller guarantees a nonzero value.
inline Jet reciprocal(const Jet& a) {
  if (a.is_constant()) return Jet(1.0 / a.value());
  return a.compose(jet_detail::reciprocal_series(a.value(), a.order()));
}

inline Jet operator/(const Jet& a, const Jet& b) {
  if (b.is_constant()) return a * (1.0 / b.value());
  return a * reciprocal(b);
}

/// Square root; value must be positive when derivatives are carried.
inline Jet sqrt(const Jet& a) {
  const double v = a.value();
  if (a.is_constant()) return Jet(std::sqrt(v));
  if (a.order() == 0) return Jet::constant(a.dim(), 0, std::sqrt(v));
  // Generalized binomial series: sqrt(v + u) = sqrt(v) sum_k C(1/2, k) (u/v)^k.
  std::vector<double> t(a.order() + 1);
  double binom = 1.0;
  const double s = std::sqrt(v);
  for (int k = 0; k <= a.order(); ++k) {
    t[k] = s * binom * std::pow(v, -k);
    binom *= (0.5 - k) / (k + 1);
  }
  return a.compose(t);
}

inline Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  if (a.is_constant()) return Jet(e);
  std::vector<double> t(a.order() + 1);
  double f = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    t[k] = e / f;
    f *= k + 1;
  }
  return a.compose(t);
}

namespace jet_detail {

// Taylor coefficients of sin (phase 0) or cos (phase 1) around v.
inline std::vector<double> trig_series(double v, int k, int phase) {
  const double d[4] = {std::sin(v), std::cos(v), -std::sin(v), -std::cos(v)};
  std::vector<double> t(k + 1);
  double f = 1.0;
  for (int i = 0; i <= k; ++i) {
    t[i] = d[(i + phase) % 4] / f;
    f *= i + 1;
  }
  return t;
}

}  // namespace jet_detail

inline Jet sin(const Jet& a) {
  if (a.is_constant()) return Jet(std::sin(a.value()));
  return a.compose(jet_detail::trig_series(a.value(), a.order(), 0));
}

inline Jet cos(const Jet& a) {
  if (a.is_constant()) return Jet(std::cos(a.value()));
  return a.compose(jet_detail::trig_series(a.value(), a.order(), 1));
}

/// Integer power by repeated squaring; negative exponents need a nonzero value.
inline Jet pow(const Jet& a, int n) {
  if (n < 0) return reciprocal(pow(a, -n));
  Jet result(1.0);
  Jet base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// Largest coefficient magnitude of a - b (all orders).
inline double max_abs_diff(const Jet& a, const Jet& b) {
  const Jet d = a - b;
  double m = 0.0;
  for (double v : d.coefficients()) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs(const Jet& a) { return max_abs_diff(a, Jet(0.0)); }

}  // namespace srcontact
