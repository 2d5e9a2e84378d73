#pragma once

#include <cstdint>
#include <vector>

#include "srcontact/calculus/evaluate.hpp"
#include "srcontact/contact/structure.hpp"

namespace srcontact {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then two xor-shift-multiply
/// rounds and a final xor-shift. Fully specified so that sample points are
/// reproducible in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1): the top 53 bits scaled by 2^-53.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// `count` points uniform in the box, coordinates drawn in index order.
inline std::vector<Point> sample_points(const std::vector<Interval>& box, int count,
                                        std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    std::vector<double> x;
    for (const auto& iv : box) x.push_back(rng.uniform(iv.lo, iv.hi));
    out.emplace_back(std::move(x));
  }
  return out;
}

}  // namespace srcontact
