#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "srcontact/contact/structure.hpp"

namespace srcontact {

/// Choice of the vectors fed to Gram-Schmidt when building a frame of H.
/// Empty means the default rule: all coordinate directions except the one in
/// which the Reeb field is largest.
struct FrameOptions {
  /// Coordinate directions to use, in order. Must hold 2n entries when set.
  std::vector<int> directions;
  /// Constant seed vectors in coordinates, 2n of them; wins over directions.
  std::vector<std::vector<double>> seeds;
};

/// Normalized contact form with its Reeb field and a g-orthonormal frame of H
/// at one point. Index 0 is the Reeb direction, indices 1..2n span H, so
/// frame[0] = T and coframe[0] = θ̂.
struct AdaptedFrame {
  int order = 0;                    // jet order of frame and coframe
  Jet mu;                           // order + 1
  KFormValue theta_hat;             // order + 1
  KFormValue dtheta_hat;            // order
  JetMatrix metric;                 // g at order + 2
  std::vector<VectorValue> frame;   // order
  std::vector<KFormValue> coframe;  // order

  int dim() const noexcept { return static_cast<int>(frame.size()); }
  int n() const noexcept { return (dim() - 1) / 2; }

  /// Levi form entry Ω_ab = dθ̂(X_a, X_b) for frame indices a, b >= 1.
  Jet omega(int a, int b) const { return evaluate(dtheta_hat, frame[a], frame[b]); }
};

namespace frame_detail {

inline std::vector<VectorValue> seed_vectors(const VectorValue& reeb, const FrameOptions& opt) {
  const int d = reeb.dim();
  std::vector<VectorValue> seeds;
  if (!opt.seeds.empty()) {
    if (static_cast<int>(opt.seeds.size()) != d - 1) {
      throw GeometryError("frame seeds must hold " + std::to_string(d - 1) + " vectors");
    }
    for (const auto& s : opt.seeds) {
      if (static_cast<int>(s.size()) != d) throw GeometryError("frame seed has wrong length");
      VectorValue v(d);
      for (int i = 0; i < d; ++i) v[i] = Jet(s[i]);
      seeds.push_back(std::move(v));
    }
    return seeds;
  }
  std::vector<int> dirs = opt.directions;
  if (dirs.empty()) {
    int omit = 0;
    for (int i = 1; i < d; ++i) {
      if (std::abs(reeb[i].value()) > std::abs(reeb[omit].value())) omit = i;
    }
    for (int i = 0; i < d; ++i) {
      if (i != omit) dirs.push_back(i);
    }
  }
  if (static_cast<int>(dirs.size()) != d - 1) {
    throw GeometryError("frame directions must hold " + std::to_string(d - 1) + " entries");
  }
  for (int i : dirs) {
    if (i < 0 || i >= d) throw GeometryError("frame direction out of range");
    seeds.push_back(VectorValue::basis(d, i));
  }
  return seeds;
}

}  // namespace frame_detail

/// Adapted frame at p whose frame and coframe carry `order` derivatives.
/// θ and g are evaluated at order + 2.
inline AdaptedFrame adapted_frame(const ContactStructure& cs, const Point& p, int order = 2,
                                  const FrameOptions& options = {}) {
  if (order < 0 || order + 2 > kMaxJetOrder) {
    throw Error("adapted frame order must lie in [0, " + std::to_string(kMaxJetOrder - 2) + "]");
  }
  const int d = cs.dim();
  AdaptedFrame out;
  out.order = order;

  const KFormValue theta = cs.theta().evaluate(p, order + 2);
  const KFormValue dtheta = exterior_derivative(theta);
  out.metric = cs.metric(p, order + 2);
  out.mu = normalization_factor(theta, dtheta, out.metric);
  out.theta_hat = out.mu * theta;
  out.dtheta_hat = exterior_derivative(out.theta_hat);
  const VectorValue reeb = reeb_field(out.theta_hat, out.dtheta_hat);

  std::vector<VectorValue> basis;
  for (const VectorValue& seed : frame_detail::seed_vectors(reeb, options)) {
    VectorValue w = seed - evaluate(out.theta_hat, seed) * reeb;
    const double start = metric_product(out.metric, w, w).value();
    for (const VectorValue& u : basis) w = w - metric_product(out.metric, w, u) * u;
    const Jet norm2 = metric_product(out.metric, w, w);
    if (!(norm2.value() > 1e-10 * std::max(start, 1e-300))) {
      throw GeometryError("Gram-Schmidt breakdown: seed vectors do not span H");
    }
    basis.push_back(reciprocal(sqrt(norm2)) * w);
  }
  if (d == 3 && evaluate(out.dtheta_hat, basis[0], basis[1]).value() < 0.0) {
    std::swap(basis[0], basis[1]);
  }

  out.frame.push_back(reeb);
  for (auto& b : basis) out.frame.push_back(std::move(b));

  JetMatrix f(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) f(i, k) = out.frame[k][i].truncated(order);
  }
  JetMatrix e;
  try {
    e = jet_inverse(f);
  } catch (const SingularMatrixError&) {
    throw GeometryError("adapted frame is degenerate");
  }
  for (int k = 0; k < d; ++k) {
    std::vector<Jet> row(d);
    for (int j = 0; j < d; ++j) row[j] = e(k, j);
    out.coframe.push_back(KFormValue::one_form(std::move(row)));
  }
  return out;
}

/// Defects of the defining properties of an adapted frame, value level.
struct FrameResiduals {
  double duality = 0.0;          // |e^k(X_j) - δ|
  double orthonormality = 0.0;   // |g(X_a, X_b) - δ| on H
  double reeb = 0.0;             // |θ̂(T) - 1| and |T ⌟ dθ̂|
  double horizontality = 0.0;    // |θ̂(X_a)|
  double normalization = 0.0;    // |sum Ω_ab² - 2n|

  double max() const {
    return std::max({duality, orthonormality, reeb, horizontality, normalization});
  }
};

inline FrameResiduals frame_residuals(const AdaptedFrame& f) {
  const int d = f.dim();
  FrameResiduals r;
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      const double e = evaluate(f.coframe[k], f.frame[j]).value() - (k == j ? 1.0 : 0.0);
      r.duality = std::max(r.duality, std::abs(e));
    }
  }
  double sum = 0.0;
  for (int a = 1; a < d; ++a) {
    r.horizontality = std::max(r.horizontality, std::abs(evaluate(f.theta_hat, f.frame[a]).value()));
    for (int b = 1; b < d; ++b) {
      const double gab = metric_product(f.metric, f.frame[a], f.frame[b]).value();
      r.orthonormality = std::max(r.orthonormality, std::abs(gab - (a == b ? 1.0 : 0.0)));
      const double w = f.omega(a, b).value();
      sum += w * w;
    }
  }
  r.normalization = std::abs(sum - 2.0 * f.n());
  r.reeb = std::abs(evaluate(f.theta_hat, f.frame[0]).value() - 1.0);
  const KFormValue tw = interior_product(f.frame[0], f.dtheta_hat);
  r.reeb = std::max(r.reeb, max_abs_value(tw));
  return r;
}

}  // namespace srcontact
