#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "srcontact/calculus/jet_layout.hpp"

namespace srcontact {

/// Strictly increasing multi-indices of length `degree` over `dim` slots,
/// stored as bitmasks in lexicographic order of their index lists.
class MultiIndexTable {
 public:
  static const MultiIndexTable& get(int dim, int degree);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return masks_.size(); }
  std::uint32_t mask(std::size_t pos) const noexcept { return masks_[pos]; }
  std::size_t position(std::uint32_t mask) const noexcept { return position_[mask]; }

  /// Index list of the multi-index at `pos`.
  std::vector<int> indices(std::size_t pos) const {
    std::vector<int> out;
    for (int i = 0; i < dim_; ++i) {
      if (masks_[pos] & (1u << i)) out.push_back(i);
    }
    return out;
  }

 private:
  MultiIndexTable(int dim, int degree);

  int dim_;
  int degree_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::size_t> position_;
};

inline MultiIndexTable::MultiIndexTable(int dim, int degree)
    : dim_(dim), degree_(degree), position_(std::size_t{1} << dim, 0) {
  std::vector<int> idx(degree);
  auto rec = [&](auto&& self, int slot, int start) -> void {
    if (slot == degree) {
      std::uint32_t m = 0;
      for (int i : idx) m |= 1u << i;
      position_[m] = masks_.size();
      masks_.push_back(m);
      return;
    }
    for (int i = start; i < dim; ++i) {
      idx[slot] = i;
      self(self, slot + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
}

inline const MultiIndexTable& MultiIndexTable::get(int dim, int degree) {
  assert(dim >= 1 && dim <= kMaxJetDim && degree >= 0 && degree <= dim);
  static const std::vector<MultiIndexTable> table = [] {
    std::vector<MultiIndexTable> t;
    for (int d = 1; d <= kMaxJetDim; ++d) {
      for (int k = 0; k <= kMaxJetDim; ++k) t.push_back(MultiIndexTable(d, k <= d ? k : 0));
    }
    return t;
  }();
  return table[(dim - 1) * (kMaxJetDim + 1) + degree];
}

/// Sign of the permutation sorting the concatenation (I, J) of two disjoint
/// increasing index sets.
inline int shuffle_sign(std::uint32_t i_mask, std::uint32_t j_mask) {
  int inversions = 0;
  for (std::uint32_t j = j_mask; j != 0; j &= j - 1) {
    const int jbit = std::countr_zero(j);
    inversions += std::popcount(i_mask >> (jbit + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

}  // namespace srcontact
