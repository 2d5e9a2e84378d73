#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "srcontact/calculus/jet.hpp"
#include "srcontact/errors.hpp"

namespace srcontact {

using JetVector = std::vector<Jet>;

/// Dense row-major matrix of jets.
class JetMatrix {
 public:
  JetMatrix() = default;
  JetMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static JetMatrix identity(int n) {
    JetMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Jet(1.0);
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Jet& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const Jet& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  double max_abs_value() const {
    double m = 0.0;
    for (const auto& j : data_) m = std::max(m, std::abs(j.value()));
    return m;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Jet> data_;
};

inline JetVector operator*(const JetMatrix& a, const JetVector& x) {
  assert(a.cols() == static_cast<int>(x.size()));
  JetVector y(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  }
  return y;
}

inline JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  assert(a.cols() == b.rows());
  JetMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

inline JetMatrix transpose(const JetMatrix& a) {
  JetMatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

/// Solve A X = B for several right-hand sides by Gaussian elimination with
/// partial pivoting on the value part. Derivatives follow exactly.
inline JetMatrix jet_linear_solve(JetMatrix a, JetMatrix b) {
  const int n = a.rows();
  assert(a.cols() == n && b.rows() == n);
  const double scale = a.max_abs_value();
  const double tol = 1e-10 * (scale > 0.0 ? scale : 1.0);
  if (scale == 0.0) throw SingularMatrixError("zero matrix");

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col).value()) > std::abs(a(pivot, col).value())) pivot = r;
    }
    if (std::abs(a(pivot, col).value()) <= tol) {
      throw SingularMatrixError("matrix is singular (column " + std::to_string(col) +
                                " has no pivot above tolerance)");
    }
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      for (int c = 0; c < b.cols(); ++c) std::swap(b(pivot, c), b(col, c));
    }
    const Jet inv = reciprocal(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col).is_constant() && a(r, col).value() == 0.0) continue;
      const Jet f = a(r, col) * inv;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      for (int c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
    }
  }
  JetMatrix x(n, b.cols());
  for (int c = 0; c < b.cols(); ++c) {
    for (int r = n - 1; r >= 0; --r) {
      Jet s = b(r, c);
      for (int k = r + 1; k < n; ++k) s -= a(r, k) * x(k, c);
      x(r, c) = s / a(r, r);
    }
  }
  return x;
}

inline JetVector jet_linear_solve(const JetMatrix& a, const JetVector& b) {
  JetMatrix rhs(static_cast<int>(b.size()), 1);
  for (int i = 0; i < rhs.rows(); ++i) rhs(i, 0) = b[i];
  const JetMatrix x = jet_linear_solve(a, rhs);
  JetVector out(x.rows());
  for (int i = 0; i < x.rows(); ++i) out[i] = x(i, 0);
  return out;
}

inline JetMatrix jet_inverse(const JetMatrix& a) {
  return jet_linear_solve(a, JetMatrix::identity(a.rows()));
}

}  // namespace srcontact
