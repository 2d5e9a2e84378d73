#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "srcontact/calculus/jet.hpp"
#include "srcontact/errors.hpp"

namespace srcontact {

/// Dense three-index array.
template <class T>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : Tensor3(n, n, n) {}
  Tensor3(int n0, int n1, int n2) : n_{n0, n1, n2}, data_(n0 * n1 * n2, T(0.0)) {}

  int extent(int axis) const noexcept { return n_[axis]; }
  T& operator()(int a, int b, int c) { return data_[(a * n_[1] + b) * n_[2] + c]; }
  const T& operator()(int a, int b, int c) const { return data_[(a * n_[1] + b) * n_[2] + c]; }

  Tensor3& operator*=(double s) {
    for (auto& v : data_) v = v * s;
    return *this;
  }

 private:
  int n_[3] = {0, 0, 0};
  std::vector<T> data_;
};

namespace tensor_detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Jet& v) { return max_abs(v); }

// Throws unless t(a, b, c) = t(b, a, c) (first pair) or t(a, b, c) = t(a, c, b).
template <class T>
void require_symmetric(const Tensor3<T>& t, bool first_pair, const char* what) {
  const int n = t.extent(0);
  double scale = 1.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) scale = std::max(scale, magnitude(t(a, b, c)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        const T& other = first_pair ? t(b, a, c) : t(a, c, b);
        if (magnitude(t(a, b, c) - other) > 1e-12 * scale) {
          throw SymmetryError(std::string(what) + " at (" + std::to_string(a) + ", " +
                              std::to_string(b) + ", " + std::to_string(c) + ")");
        }
      }
    }
  }
}

}  // namespace tensor_detail

/// σ(s)_abc = (s_abc + s_acb) / 2 for s symmetric in its first two slots.
/// The result is symmetric in its last two slots.
template <class T>
Tensor3<T> sigma(const Tensor3<T>& s) {
  tensor_detail::require_symmetric(s, true, "sigma: argument not symmetric in (a, b)");
  const int n = s.extent(0);
  Tensor3<T> t(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) t(a, b, c) = (s(a, b, c) + s(a, c, b)) * 0.5;
  return t;
}

/// Inverse of σ: s_abc = t_abc + t_bac - t_cab for t symmetric in (b, c).
template <class T>
Tensor3<T> sigma_inv(const Tensor3<T>& t) {
  tensor_detail::require_symmetric(t, false, "sigma_inv: argument not symmetric in (b, c)");
  const int n = t.extent(0);
  Tensor3<T> s(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) s(a, b, c) = t(a, b, c) + t(b, a, c) - t(c, a, b);
  return s;
}

}  // namespace srcontact
