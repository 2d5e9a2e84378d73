#pragma once

#include <cmath>
#include <vector>

#include "srcontact/connection/connection.hpp"

namespace srcontact {

/// Left inverse of the map f ↦ f Ω from functions to horizontal 2-forms,
/// taken as the g-orthogonal projection onto Ω:
///   ℒ⁻¹(F) = sum_{b<c} F_bc Ω_bc / sum_{b<c} Ω_bc².
/// `f` and `omega` are indexed by frame labels; only pairs in H are read.
inline Jet levi_inverse(const KFormValue& f, const KFormValue& omega) {
  const int d = f.dim();
  Jet num(0.0);
  Jet den(0.0);
  for (int b = 1; b < d; ++b) {
    for (int c = b + 1; c < d; ++c) {
      num += f.at({b, c}) * omega.at({b, c});
      den += omega.at({b, c}) * omega.at({b, c});
    }
  }
  return num / den;
}

/// Extend a partial connection to T by requiring the horizontal curvature
/// of the induced connection on the coframe to have no Ω component. The
/// H part is kept exactly; the T-row comes out one jet order lower.
inline FullConnection promote(const PartialConnection& g, const AdaptedFrame& f) {
  if (f.order < 2) throw Error("promotion needs a frame of jet order >= 2");
  const int d = f.dim();
  const Tensor3<Jet> c = structure_constants(f);
  auto a = [&](int i, int k, int p) -> Jet { return -g(i, k, p); };

  KFormValue omega(d, 2);
  for (int b = 1; b < d; ++b)
    for (int e = b + 1; e < d; ++e) omega.at({b, e}) = c(0, b, e);

  FullConnection out{g.gamma};
  for (int k = 0; k < d; ++k) {
    for (int p = 0; p < d; ++p) {
      KFormValue rest(d, 2);
      for (int b = 1; b < d; ++b) {
        for (int e = b + 1; e < d; ++e) {
          Jet v = directional(f.frame[b], a(e, k, p)) - directional(f.frame[e], a(b, k, p));
          for (int h = 1; h < d; ++h) v += a(h, k, p) * c(h, b, e);
          for (int m = 0; m < d; ++m) v -= a(b, k, m) * a(e, m, p) - a(e, k, m) * a(b, m, p);
          rest.at({b, e}) = v;
        }
      }
      // A^k_0p = -ℒ⁻¹(rest), and Γ = -A.
      out(0, k, p) = levi_inverse(rest, omega);
    }
  }
  return out;
}

/// Ω component of the horizontal curvature of a full connection, computed
/// from exterior derivatives of the coordinate connection forms. Zero for
/// the promotion of any partial connection.
inline double promotion_residual(const FullConnection& g, const AdaptedFrame& f) {
  const int d = f.dim();
  KFormValue omega(d, 2);
  for (int b = 1; b < d; ++b)
    for (int e = b + 1; e < d; ++e) omega.at({b, e}) = f.omega(b, e);

  std::vector<KFormValue> de;
  for (int i = 0; i < d; ++i) de.push_back(exterior_derivative(f.coframe[i]));

  // β^k_p = sum_i A^k_ip e^i in coordinates, A = -Γ.
  auto beta_on = [&](int k, int p, int b) -> Jet { return -g(b, k, p); };
  double worst = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int p = 0; p < d; ++p) {
      // dβ on H: the T-row coefficient only enters through A^k_0p dθ̂,
      // since θ̂ vanishes on H.
      KFormValue dbeta = (-g(0, k, p)) * de[0];
      for (int i = 1; i < d; ++i) {
        dbeta += exterior_derivative((-g(i, k, p)) * f.coframe[i]);
      }
      KFormValue curv(d, 2);
      for (int b = 1; b < d; ++b) {
        for (int e = b + 1; e < d; ++e) {
          Jet v = evaluate(dbeta, f.frame[b], f.frame[e]);
          for (int m = 0; m < d; ++m) {
            v -= beta_on(k, m, b) * beta_on(m, p, e) - beta_on(k, m, e) * beta_on(m, p, b);
          }
          curv.at({b, e}) = v;
        }
      }
      worst = std::max(worst, std::abs(levi_inverse(curv, omega).value()));
    }
  }
  return worst;
}

}  // namespace srcontact
