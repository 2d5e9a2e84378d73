#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "srcontact/connection/promotion.hpp"

namespace srcontact {

/// Coframe of a three-dimensional structure adapted to Tanaka-Webster:
/// θ̂ normalized, (e1, e2) g-orthonormal on H with dθ̂ = e1 ^ e2 on H.
inline AdaptedFrame tw_coframe(const ContactStructure& cs, const Point& p, int order = 2,
                               const FrameOptions& options = {}) {
  if (cs.dim() != 3) throw GeometryError("Tanaka-Webster comparison is three-dimensional only");
  return adapted_frame(cs, p, order, options);
}

/// Solution of the structure equations
///   de1 =  ω ^ e2 + A θ̂ ^ e1 + B θ̂ ^ e2
///   de2 = -ω ^ e1 + B θ̂ ^ e1 - A θ̂ ^ e2
/// with ω = ω0 θ̂ + ω1 e1 + ω2 e2, and the curvature dω = R e1 ^ e2 mod θ̂.
struct TWData {
  Jet omega0;
  Jet omega1;
  Jet omega2;
  Jet a;
  Jet b;
  KFormValue omega;      // ω in coordinates
  std::optional<Jet> r;  // present when the frame carries two derivatives
  double residual = 0.0; // defect of the six equations at the solution
};

/// Least-squares solution of the six equations in (ω0, ω1, ω2, A, B).
/// Needs a frame of order >= 1; ω, A, B come out one order lower.
inline TWData solve_structure_equations(const AdaptedFrame& f) {
  if (f.dim() != 3) throw GeometryError("structure equations are three-dimensional only");
  if (f.order < 1) throw Error("structure equations need a frame of jet order >= 1");
  const Tensor3<Jet> c = structure_constants(f);
  TWData t;
  t.omega1 = c(1, 1, 2);
  t.omega2 = c(2, 1, 2);
  t.a = (c(1, 0, 1) - c(2, 0, 2)) * 0.5;
  t.b = (c(1, 0, 2) + c(2, 0, 1)) * 0.5;
  t.omega0 = (c(1, 0, 2) - c(2, 0, 1)) * 0.5;

  const double fitted[6] = {t.a.value(), (t.omega0 + t.b).value(), t.omega1.value(),
                            (t.b - t.omega0).value(), -t.a.value(), t.omega2.value()};
  const double given[6] = {c(1, 0, 1).value(), c(1, 0, 2).value(), c(1, 1, 2).value(),
                           c(2, 0, 1).value(), c(2, 0, 2).value(), c(2, 1, 2).value()};
  for (int i = 0; i < 6; ++i) t.residual = std::max(t.residual, std::abs(fitted[i] - given[i]));

  t.omega = t.omega0 * f.coframe[0] + t.omega1 * f.coframe[1] + t.omega2 * f.coframe[2];
  if (f.order >= 2) {
    // dω ^ θ̂ = R θ̂ ^ e1 ^ e2, and θ̂ ^ e1 ^ e2 is 1 on (T, X1, X2).
    const VectorValue frame[3] = {f.frame[0], f.frame[1], f.frame[2]};
    t.r = evaluate(wedge(exterior_derivative(t.omega), f.coframe[0]), frame);
  }
  return t;
}

/// The Tanaka-Webster connection: ∇θ̂ = 0, ∇e1 = ω ⊗ e2, ∇e2 = -ω ⊗ e1.
inline FullConnection tw_connection(const TWData& t, const AdaptedFrame& f) {
  FullConnection g{Tensor3<Jet>(3)};
  for (int i = 0; i < 3; ++i) {
    const Jet w = evaluate(t.omega, f.frame[i]);
    g(i, 1, 2) = -w;
    g(i, 2, 1) = w;
  }
  return g;
}

/// Rotate the H part of the frame by the angle φ:
///   ê1 = cos φ e1 - sin φ e2,  ê2 = sin φ e1 + cos φ e2,
/// with the same rotation on (X1, X2).
inline AdaptedFrame rotate_coframe(const AdaptedFrame& f, const Jet& phi) {
  if (f.dim() != 3) throw GeometryError("rotation is three-dimensional only");
  AdaptedFrame r = f;
  const Jet cs = cos(phi);
  const Jet sn = sin(phi);
  r.coframe[1] = cs * f.coframe[1] - sn * f.coframe[2];
  r.coframe[2] = sn * f.coframe[1] + cs * f.coframe[2];
  r.frame[1] = cs * f.frame[1] - sn * f.frame[2];
  r.frame[2] = sn * f.frame[1] + cs * f.frame[2];
  return r;
}

/// Closed form of the promoted canonical connection in terms of TW data:
/// ∇θ̂ = e1 ⊗ e2 - e2 ⊗ e1 along H, ∇e1 = (ω - R θ̂) ⊗ e2, ∇e2 = (R θ̂ - ω) ⊗ e1.
inline FullConnection promoted_closed_form(const TWData& t, const AdaptedFrame& f) {
  if (!t.r) throw Error("closed form needs the curvature R");
  FullConnection g = tw_connection(t, f);
  g(0, 1, 2) += *t.r;
  g(0, 2, 1) -= *t.r;
  for (int a = 1; a < 3; ++a)
    for (int c = 1; c < 3; ++c) {
      if (a != c) g(a, 0, c) = -f.omega(a, c);
    }
  return g;
}

/// Deviations from ω̂ = ω - dφ, (Â, B̂) = rotation by 2φ of (A, B), R̂ = R.
struct RotationCheck {
  double omega = 0.0;
  double torsion = 0.0;
  double curvature = 0.0;

  double max() const { return std::max({omega, torsion, curvature}); }
};

inline RotationCheck check_rotation_covariance(const AdaptedFrame& f, const Jet& phi) {
  const TWData t = solve_structure_equations(f);
  const TWData u = solve_structure_equations(rotate_coframe(f, phi));
  RotationCheck out;
  out.omega = max_abs(u.omega - (t.omega - differential(phi, f.dim())));
  const Jet c2 = cos(2.0 * phi);
  const Jet s2 = sin(2.0 * phi);
  out.torsion = std::max(max_abs(u.a - (c2 * t.a - s2 * t.b)), max_abs(u.b - (s2 * t.a + c2 * t.b)));
  if (t.r && u.r) out.curvature = max_abs(*u.r - *t.r);
  return out;
}

/// Difference of two connections, Γ_lhs - Γ_rhs, and its distance from the
/// expected difference.
struct ConnectionComparison {
  Tensor3<double> difference;
  Tensor3<double> expected;
  double deviation = 0.0;
  double r = 0.0;
};

namespace tw_detail {

inline ConnectionComparison compare(const Tensor3<Jet>& lhs, const Tensor3<Jet>& rhs,
                                    Tensor3<double> expected, int first) {
  ConnectionComparison out;
  out.difference = Tensor3<double>(3);
  for (int i = first; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      for (int j = 0; j < 3; ++j) {
        out.difference(i, k, j) = lhs(i, k, j).value() - rhs(i, k, j).value();
        out.deviation =
            std::max(out.deviation, std::abs(out.difference(i, k, j) - expected(i, k, j)));
      }
    }
  }
  out.expected = std::move(expected);
  return out;
}

// J on 1-forms in the coframe (e1, e2): J e2 = e1, J e1 = -e2, stored as
// kJ[k][j] = coefficient of e^j in J e^k (frame labels 1, 2).
inline constexpr double kJ[3][3] = {{0, 0, 0}, {0, 0, -1}, {0, 1, 0}};

// Difference tensor D(σ + ρ θ̂) = r θ̂ ⊗ Jσ + ρ Ω written as Γ coefficients,
// using ∇_i e^k = -Γ^k_ij e^j.
inline Tensor3<double> expected_difference(const AdaptedFrame& f, double r) {
  Tensor3<double> e(3);
  for (int k = 1; k < 3; ++k)
    for (int j = 1; j < 3; ++j) e(0, k, j) = -r * kJ[k][j];
  for (int i = 1; i < 3; ++i)
    for (int j = 1; j < 3; ++j) {
      if (i != j) e(i, 0, j) = -f.omega(i, j).value();
    }
  return e;
}

}  // namespace tw_detail

/// Canonical partial connection against the H part of Tanaka-Webster. They
/// differ only on θ̂: ∇^can θ̂ - ∇^TW θ̂ = e1 ⊗ e2 - e2 ⊗ e1.
inline ConnectionComparison compare_partial(const AdaptedFrame& f) {
  const PartialConnection can = canonical_partial_connection(f);
  const TWData t = solve_structure_equations(f);
  const FullConnection tw = tw_connection(t, f);
  return tw_detail::compare(can.gamma, tw.gamma, tw_detail::expected_difference(f, 0.0), 1);
}

/// Promoted canonical connection against Tanaka-Webster. On a 1-form split
/// as σ + ρ θ̂ with σ horizontal, the difference is R θ̂ ⊗ Jσ + ρ Ω.
inline ConnectionComparison compare_full(const AdaptedFrame& f) {
  if (f.order < 2) throw Error("full comparison needs a frame of jet order >= 2");
  const FullConnection prom = promote(canonical_partial_connection(f), f);
  const TWData t = solve_structure_equations(f);
  const FullConnection tw = tw_connection(t, f);
  const double r = t.r->value();
  ConnectionComparison out =
      tw_detail::compare(prom.gamma, tw.gamma, tw_detail::expected_difference(f, r), 0);
  out.r = r;
  return out;
}

inline ConnectionComparison compare_partial(const ContactStructure& cs, const Point& p) {
  return compare_partial(tw_coframe(cs, p, 2));
}

inline ConnectionComparison compare_full(const ContactStructure& cs, const Point& p) {
  return compare_full(tw_coframe(cs, p, 2));
}

}  // namespace srcontact
