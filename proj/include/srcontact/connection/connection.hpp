#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "srcontact/connection/tensor.hpp"
#include "srcontact/contact/frame.hpp"

namespace srcontact {

// Conventions. Frame index 0 is the Reeb field T, indices 1..2n span H.
// Connection coefficients are stored as gamma(i, k, j) = Γ^k_ij with
//   ∇_{X_i} X_j = sum_k Γ^k_ij X_k,   ∇_{X_i} e^k = -sum_j Γ^k_ij e^j.
// Structure constants are C^k_ij = de^k(X_i, X_j), so Ω_ab = C^0_ab.

/// C(k, i, j) = de^k(X_i, X_j); one jet order below the frame.
inline Tensor3<Jet> structure_constants(const AdaptedFrame& f) {
  const int d = f.dim();
  Tensor3<Jet> c(d);
  for (int k = 0; k < d; ++k) {
    const KFormValue de = exterior_derivative(f.coframe[k]);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        c(k, i, j) = evaluate(de, f.frame[i], f.frame[j]);
        c(k, j, i) = -c(k, i, j);
      }
    }
  }
  return c;
}

/// Connection defined along H only: gamma(a, k, j) for a in 1..2n.
/// The slice a = 0 is unused and stays zero.
struct PartialConnection {
  Tensor3<Jet> gamma;

  int dim() const noexcept { return gamma.extent(0); }
  Jet& operator()(int a, int k, int j) { return gamma(a, k, j); }
  const Jet& operator()(int a, int k, int j) const { return gamma(a, k, j); }
};

/// Connection in every direction; the a = 0 slice is ∇_T.
struct FullConnection {
  Tensor3<Jet> gamma;

  int dim() const noexcept { return gamma.extent(0); }
  Jet& operator()(int i, int k, int j) { return gamma(i, k, j); }
  const Jet& operator()(int i, int k, int j) const { return gamma(i, k, j); }

  /// ∇_T X_j = sum_k xi(k, j) X_k.
  const Jet& xi(int k, int j) const { return gamma(0, k, j); }
};

/// A connection along H that preserves H, T and θ̂ and whose torsion has no
/// H component: Γ^b_ac = -C^b_ac / 2 on H, Γ^0_ac = -Ω_ac, Γ^k_a0 = 0.
///
/// `offset(a, b, c)`, indexed over H from 0 and symmetric in (a, c), is
/// added to Γ^b_ac; it leaves the torsion unchanged and is used to test
/// that the canonical correction does not depend on the starting point.
inline PartialConnection base_partial_connection(const AdaptedFrame& f,
                                                 const Tensor3<double>* offset = nullptr) {
  const int d = f.dim();
  const Tensor3<Jet> c = structure_constants(f);
  if (offset) {
    if (offset->extent(0) != d - 1) throw Error("connection offset has the wrong size");
    for (int a = 0; a + 1 < d; ++a)
      for (int b = 0; b + 1 < d; ++b)
        for (int e = 0; e + 1 < d; ++e) {
          if (std::abs((*offset)(a, b, e) - (*offset)(e, b, a)) > 1e-12) {
            throw SymmetryError("connection offset must be symmetric in its outer slots");
          }
        }
  }
  PartialConnection g{Tensor3<Jet>(d)};
  for (int a = 1; a < d; ++a) {
    for (int e = 1; e < d; ++e) {
      g(a, 0, e) = -c(0, a, e);
      for (int b = 1; b < d; ++b) {
        g(a, b, e) = c(b, a, e) * -0.5;
        if (offset) g(a, b, e) += (*offset)(a - 1, b - 1, e - 1);
      }
    }
  }
  return g;
}

namespace connection_detail {

// h(b, c) = g(X_b, X_c) for b, c in H (indices from 1), mirrored to be
// exactly symmetric.
inline JetMatrix horizontal_gram(const AdaptedFrame& f) {
  const int d = f.dim();
  JetMatrix h(d, d);
  for (int b = 1; b < d; ++b) {
    for (int c = b; c < d; ++c) {
      h(b, c) = metric_product(f.metric, f.frame[b], f.frame[c]);
      h(c, b) = h(b, c);
    }
  }
  return h;
}

// M(a, b, c) = (∇_a h)(X_b, X_c) over H, indexed from 0.
inline Tensor3<Jet> metric_defect(const PartialConnection& g, const AdaptedFrame& f) {
  const int d = f.dim();
  const JetMatrix h = horizontal_gram(f);
  Tensor3<Jet> m(d - 1);
  for (int a = 1; a < d; ++a) {
    for (int b = 1; b < d; ++b) {
      for (int c = b; c < d; ++c) {
        Jet v = directional(f.frame[a], h(b, c));
        for (int k = 1; k < d; ++k) v -= g(a, k, b) * h(k, c) + g(a, k, c) * h(b, k);
        m(a - 1, b - 1, c - 1) = v;
        m(a - 1, c - 1, b - 1) = v;
      }
    }
  }
  return m;
}

}  // namespace connection_detail

/// The unique partial connection that preserves g on H, T and θ̂, whose
/// torsion has no H component, and whose θ̂-derivative is ∇_X θ̂ = X ⌟ dθ̂.
/// Needs a frame of order >= 1; the result is one order lower.
inline PartialConnection canonical_partial_connection(const AdaptedFrame& f,
                                                      const Tensor3<double>* offset = nullptr) {
  if (f.order < 1) throw Error("canonical connection needs a frame of jet order >= 1");
  PartialConnection g = base_partial_connection(f, offset);
  Tensor3<Jet> q = sigma_inv(connection_detail::metric_defect(g, f));
  q *= 0.5;
  const int d = f.dim();
  for (int a = 1; a < d; ++a)
    for (int b = 1; b < d; ++b)
      for (int c = 1; c < d; ++c) g(a, b, c) += q(a - 1, c - 1, b - 1);
  return g;
}

/// Torsion rows τ^k as 2-forms in frame labels: τ^k_ij = C^k_ij + Γ^k_ij - Γ^k_ji.
/// `first` = 1 restricts to pairs in H (partial connections).
inline std::vector<KFormValue> torsion_rows(const Tensor3<Jet>& gamma, const AdaptedFrame& f,
                                            int first) {
  const int d = f.dim();
  const Tensor3<Jet> c = structure_constants(f);
  std::vector<KFormValue> rows(d, KFormValue(d, 2));
  for (int k = 0; k < d; ++k) {
    for (int i = first; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) rows[k].at({i, j}) = c(k, i, j) + gamma(i, k, j) - gamma(j, k, i);
    }
  }
  return rows;
}

inline std::vector<KFormValue> partial_torsion(const PartialConnection& g, const AdaptedFrame& f) {
  return torsion_rows(g.gamma, f, 1);
}

inline std::vector<KFormValue> full_torsion(const FullConnection& g, const AdaptedFrame& f) {
  return torsion_rows(g.gamma, f, 0);
}

// ---------------------------------------------------------------------------
// Covariant derivatives along H. Results are indexed [a - 1] for X_a in H.

/// X_a(u) for a function jet.
inline std::vector<Jet> nabla_h(const AdaptedFrame& f, const Jet& u) {
  std::vector<Jet> out;
  for (int a = 1; a < f.dim(); ++a) out.push_back(directional(f.frame[a], u));
  return out;
}

/// (∇_a α)(X_j) = X_a(α(X_j)) - sum_k Γ^k_aj α(X_k), as out[a - 1][j].
inline std::vector<std::vector<Jet>> nabla_h(const PartialConnection& g, const AdaptedFrame& f,
                                             const KFormValue& alpha) {
  const int d = f.dim();
  std::vector<Jet> on_frame;
  for (int j = 0; j < d; ++j) on_frame.push_back(evaluate(alpha, f.frame[j]));
  std::vector<std::vector<Jet>> out(d - 1, std::vector<Jet>(d));
  for (int a = 1; a < d; ++a) {
    for (int j = 0; j < d; ++j) {
      Jet v = directional(f.frame[a], on_frame[j]);
      for (int k = 0; k < d; ++k) v -= g(a, k, j) * on_frame[k];
      out[a - 1][j] = v;
    }
  }
  return out;
}

/// Frame components (∇_a V)^k = X_a(e^k(V)) + sum_j Γ^k_aj e^j(V), as out[a - 1][k].
inline std::vector<std::vector<Jet>> nabla_h(const PartialConnection& g, const AdaptedFrame& f,
                                             const VectorValue& v) {
  const int d = f.dim();
  std::vector<Jet> comp;
  for (int k = 0; k < d; ++k) comp.push_back(evaluate(f.coframe[k], v));
  std::vector<std::vector<Jet>> out(d - 1, std::vector<Jet>(d));
  for (int a = 1; a < d; ++a) {
    for (int k = 0; k < d; ++k) {
      Jet w = directional(f.frame[a], comp[k]);
      for (int j = 0; j < d; ++j) w += g(a, k, j) * comp[j];
      out[a - 1][k] = w;
    }
  }
  return out;
}

/// (∇_a B)(X_b, X_c) for a bilinear form B given by its coordinate matrix,
/// as out(a - 1, b, c).
inline Tensor3<Jet> nabla_h(const PartialConnection& g, const AdaptedFrame& f, const JetMatrix& b) {
  const int d = f.dim();
  JetMatrix on_frame(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) on_frame(i, j) = metric_product(b, f.frame[i], f.frame[j]);
  Tensor3<Jet> out(d - 1, d, d);
  for (int a = 1; a < d; ++a) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        Jet v = directional(f.frame[a], on_frame(i, j));
        for (int m = 0; m < d; ++m) v -= g(a, m, i) * on_frame(m, j) + g(a, m, j) * on_frame(i, m);
        out(a - 1, i, j) = v;
      }
    }
  }
  return out;
}

/// Coordinate matrix of the degenerate metric h = g(π·, π·), π = 1 - T ⊗ θ̂.
inline JetMatrix horizontal_metric(const AdaptedFrame& f) {
  const int d = f.dim();
  JetMatrix p = JetMatrix::identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i, j) -= f.frame[0][i] * f.theta_hat[j];
  return transpose(p) * f.metric * p;
}

/// Defects of the characterizing properties of the canonical connection.
struct CanonicalResiduals {
  double metric = 0.0;   // ∇h on H x H
  double reeb = 0.0;     // ∇T
  double theta = 0.0;    // ∇_X θ̂ - X ⌟ dθ̂
  double torsion = 0.0;  // H rows of the partial torsion

  double max() const { return std::max({metric, reeb, theta, torsion}); }
};

/// Value-level residuals; `frame` must be the one `g` was built in.
inline CanonicalResiduals canonical_residuals(const PartialConnection& g, const AdaptedFrame& f) {
  const int d = f.dim();
  CanonicalResiduals r;
  const Tensor3<Jet> dh = nabla_h(g, f, horizontal_metric(f));
  for (int a = 1; a < d; ++a)
    for (int b = 1; b < d; ++b)
      for (int c = 1; c < d; ++c) r.metric = std::max(r.metric, std::abs(dh(a - 1, b, c).value()));

  const auto dt = nabla_h(g, f, f.frame[0]);
  for (const auto& row : dt)
    for (const Jet& v : row) r.reeb = std::max(r.reeb, std::abs(v.value()));

  const auto dth = nabla_h(g, f, f.coframe[0]);
  for (int a = 1; a < d; ++a) {
    const KFormValue contraction = interior_product(f.frame[a], f.dtheta_hat);
    for (int j = 0; j < d; ++j) {
      const double expected = evaluate(contraction, f.frame[j]).value();
      r.theta = std::max(r.theta, std::abs(dth[a - 1][j].value() - expected));
    }
  }

  const auto tau = partial_torsion(g, f);
  for (int k = 1; k < d; ++k) r.torsion = std::max(r.torsion, max_abs_value(tau[k]));
  return r;
}

// ---------------------------------------------------------------------------
// Frame-independent form of a connection.

namespace connection_detail {

// K[i][j] = ∇_{V_i} d_j in coordinates, with V_i = π d_i over directions
// 1..d-1 (first = 1) or V_i = d_i over all directions (first = 0).
inline std::vector<std::vector<VectorValue>> coordinate_action(const Tensor3<Jet>& gamma,
                                                               const AdaptedFrame& f, int first) {
  const int d = f.dim();
  auto e = [&](int k, int j) -> const Jet& { return f.coframe[k][j]; };
  std::vector<std::vector<VectorValue>> out(d, std::vector<VectorValue>(d, VectorValue(d)));
  for (int i = 0; i < d; ++i) {
    VectorValue v(d);
    for (int m = first; m < d; ++m) v = v + e(m, i) * f.frame[m];
    for (int j = 0; j < d; ++j) {
      VectorValue w(d);
      for (int q = 0; q < d; ++q) {
        Jet coef = directional(v, e(q, j));
        for (int m = first; m < d; ++m) {
          for (int k = 0; k < d; ++k) coef += e(m, i) * e(k, j) * gamma(m, q, k);
        }
        w = w + coef * f.frame[q];
      }
      out[i][j] = w;
    }
  }
  return out;
}

}  // namespace connection_detail

/// ∇_{π d_i} d_j as coordinate vectors, out[i][j].
inline std::vector<std::vector<VectorValue>> coordinate_action(const PartialConnection& g,
                                                               const AdaptedFrame& f) {
  return connection_detail::coordinate_action(g.gamma, f, 1);
}

/// Christoffel symbols Γ^l_ij = (∇_{d_i} d_j)^l, out[i][j][l].
inline std::vector<std::vector<VectorValue>> coordinate_christoffel(const FullConnection& g,
                                                                    const AdaptedFrame& f) {
  return connection_detail::coordinate_action(g.gamma, f, 0);
}

/// Largest value-level difference between two coordinate actions.
inline double max_value_diff(const std::vector<std::vector<VectorValue>>& a,
                             const std::vector<std::vector<VectorValue>>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      for (int l = 0; l < a[i][j].dim(); ++l)
        m = std::max(m, std::abs(a[i][j][l].value() - b[i][j][l].value()));
  return m;
}

}  // namespace srcontact
