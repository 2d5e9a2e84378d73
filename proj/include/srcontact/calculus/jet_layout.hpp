#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace srcontact {

inline constexpr int kMaxJetOrder = 4;
inline constexpr int kMaxJetDim = 7;

/// Monomial bookkeeping for truncated Taylor polynomials in `dim` variables
/// up to total degree `order`.
///
/// Monomials are stored graded by degree; inside a degree they are ordered
/// lexicographically with larger leading exponents first, so the constant is
/// index 0 and x_i is index 1 + i. The layout of (dim, k) is a prefix of the
/// layout of (dim, k + 1), which makes truncation a resize.
class JetLayout {
 public:
  struct Product {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  static const JetLayout& get(int dim, int order);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return degree_.size(); }

  int degree(std::size_t idx) const noexcept { return degree_[idx]; }
  std::span<const std::uint8_t> exponents(std::size_t idx) const noexcept {
    return {exponents_.data() + idx * dim_, static_cast<std::size_t>(dim_)};
  }

  /// Number of monomials of total degree <= k.
  std::size_t count_up_to(int k) const noexcept { return offsets_[k + 1]; }

  /// Index of the monomial obtained by multiplying `idx` with x_var, or -1
  /// when that exceeds the order.
  std::int32_t raise(std::size_t idx, int var) const noexcept {
    return raise_[idx * dim_ + var];
  }

  /// Index of the monomial x_i x_j; requires order >= 2.
  std::size_t quadratic(int i, int j) const;

  /// All (a, b) with deg a + deg b <= order, and the index of a*b.
  std::span<const Product> products() const noexcept { return products_; }

 private:
  JetLayout(int dim, int order);

  static std::uint32_t key(std::span<const std::uint8_t> e) {
    std::uint32_t k = 0;
    for (auto v : e) k = k * 8 + v;
    return k;
  }

  int dim_ = 0;
  int order_ = 0;
  std::vector<std::uint8_t> exponents_;
  std::vector<int> degree_;
  std::array<std::size_t, kMaxJetOrder + 2> offsets_{};
  std::vector<std::int32_t> raise_;
  std::vector<Product> products_;
  std::unordered_map<std::uint32_t, std::uint32_t> index_;
};

inline JetLayout::JetLayout(int dim, int order) : dim_(dim), order_(order) {
  std::vector<std::uint8_t> e(dim, 0);
  // Enumerate exponent vectors of total degree `deg`, leading exponent first.
  auto emit = [&](auto&& self, int var, int remaining) -> void {
    if (var == dim - 1) {
      e[var] = static_cast<std::uint8_t>(remaining);
      exponents_.insert(exponents_.end(), e.begin(), e.end());
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      e[var] = static_cast<std::uint8_t>(v);
      self(self, var + 1, remaining - v);
    }
    e[var] = 0;
  };
  for (int deg = 0; deg <= order; ++deg) {
    offsets_[deg] = degree_.size();
    emit(emit, 0, deg);
    degree_.resize(exponents_.size() / dim, deg);
  }
  offsets_[order + 1] = degree_.size();

  for (std::size_t i = 0; i < size(); ++i) {
    index_.emplace(key(exponents(i)), static_cast<std::uint32_t>(i));
  }

  raise_.assign(size() * dim, -1);
  for (std::size_t i = 0; i < size(); ++i) {
    if (degree_[i] == order) continue;
    for (int v = 0; v < dim; ++v) {
      std::vector<std::uint8_t> up(exponents(i).begin(), exponents(i).end());
      ++up[v];
      raise_[i * dim + v] = static_cast<std::int32_t>(index_.at(key(up)));
    }
  }

  std::vector<std::uint8_t> sum(dim);
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      if (degree_[a] + degree_[b] > order) continue;
      for (int v = 0; v < dim; ++v) sum[v] = exponents(a)[v] + exponents(b)[v];
      products_.push_back({static_cast<std::uint32_t>(a),
                           static_cast<std::uint32_t>(b),
                           index_.at(key(sum))});
    }
  }
}

inline std::size_t JetLayout::quadratic(int i, int j) const {
  assert(order_ >= 2);
  std::vector<std::uint8_t> e(dim_, 0);
  ++e[i];
  ++e[j];
  return index_.at(key(e));
}

inline const JetLayout& JetLayout::get(int dim, int order) {
  assert(dim >= 1 && dim <= kMaxJetDim);
  assert(order >= 0 && order <= kMaxJetOrder);
  // Built once; immutable afterwards.
  static const std::vector<JetLayout> table = [] {
    std::vector<JetLayout> t;
    t.reserve(kMaxJetDim * (kMaxJetOrder + 1));
    for (int d = 1; d <= kMaxJetDim; ++d) {
      for (int k = 0; k <= kMaxJetOrder; ++k) t.push_back(JetLayout(d, k));
    }
    return t;
  }();
  return table[(dim - 1) * (kMaxJetOrder + 1) + order];
}

}  // namespace srcontact
