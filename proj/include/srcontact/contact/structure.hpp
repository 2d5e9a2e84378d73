#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "srcontact/calculus/evaluate.hpp"
#include "srcontact/calculus/jet_linalg.hpp"
#include "srcontact/calculus/parser.hpp"
#include "srcontact/errors.hpp"
#include "srcontact/forms/forms.hpp"

namespace srcontact {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Chart data of a sub-Riemannian contact manifold: a contact form θ and a
/// symmetric form g whose restriction to H = ker θ is the metric.
///
/// Contact and positivity are properties of points, checked where used.
class ContactStructure {
 public:
  ContactStructure(std::vector<std::string> coords, FormField theta, std::vector<Expr> g,
                   std::vector<Interval> domain)
      : coords_(std::move(coords)),
        theta_(std::move(theta)),
        g_(std::move(g)),
        domain_(std::move(domain)) {
    const int d = dim();
    if (d < 3 || d % 2 == 0 || d > kMaxJetDim) {
      throw SpecError("dimension must be odd, >= 3 and <= " + std::to_string(kMaxJetDim) +
                      "; got " + std::to_string(d));
    }
    if (theta_.dim() != d || theta_.degree() != 1) throw SpecError("theta must be a 1-form");
    if (static_cast<int>(g_.size()) != d * d) throw SpecError("g must be a d x d matrix");
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        if (to_string(g_[i * d + j], coords_) != to_string(g_[j * d + i], coords_)) {
          throw SpecError("g is not symmetric at (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
        }
      }
    }
    if (!domain_.empty() && static_cast<int>(domain_.size()) != d) {
      throw SpecError("domain box must have one interval per coordinate");
    }
  }

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  int n() const noexcept { return (dim() - 1) / 2; }
  const std::vector<std::string>& coords() const noexcept { return coords_; }
  const FormField& theta() const noexcept { return theta_; }
  const Expr& g(int i, int j) const { return g_[i * dim() + j]; }
  const std::vector<Interval>& domain() const noexcept { return domain_; }

  /// Same structure with θ replaced by -θ.
  ContactStructure with_negated_theta() const {
    return ContactStructure(coords_, theta_.negated(), g_, domain_);
  }

  JetMatrix metric(const Point& p, int order) const {
    const int d = dim();
    JetMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        m(i, j) = eval_jet(g(i, j), p, order, coords_);
        m(j, i) = m(i, j);
      }
    }
    return m;
  }

 private:
  std::vector<std::string> coords_;
  FormField theta_;
  std::vector<Expr> g_;
  std::vector<Interval> domain_;
};

/// g(u, w) for coordinate-expressed vectors.
inline Jet metric_product(const JetMatrix& g, const VectorValue& u, const VectorValue& w) {
  Jet s(0.0);
  for (int i = 0; i < g.rows(); ++i) {
    Jet gi(0.0);
    for (int j = 0; j < g.cols(); ++j) gi += g(i, j) * w[j];
    s += u[i] * gi;
  }
  return s;
}

/// Matrix of a 2-form on coordinate vectors, a(d_i, d_j).
inline JetMatrix two_form_matrix(const KFormValue& a) {
  const int d = a.dim();
  JetMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      m(i, j) = a.at({i, j});
      m(j, i) = -m(i, j);
    }
  }
  return m;
}

struct ContactCheck {
  bool pass = false;
  double top = 0.0;    // coefficient of θ ^ (dθ)^n on dx^1 ^ ... ^ dx^d
  double scale = 0.0;  // |θ| |dθ|^n, the reference for the relative test
};

/// Evaluate θ ^ (dθ)^n at p.
inline ContactCheck check_contact(const ContactStructure& cs, const Point& p) {
  const KFormValue theta = cs.theta().evaluate(p, 1);
  const KFormValue dtheta = exterior_derivative(theta);
  KFormValue top = theta;
  for (int k = 0; k < cs.n(); ++k) top = wedge(top, dtheta);
  ContactCheck out;
  out.top = top[0].value();
  out.scale = max_abs_value(theta) * std::pow(max_abs_value(dtheta), cs.n());
  out.pass = out.scale > 0.0 && std::abs(out.top) > 1e-10 * out.scale;
  return out;
}

/// Reeb field of a contact form value: T ⌟ θ = 1 and T ⌟ dθ = 0.
///
/// Solved as (dθ + θ θ^T) T = θ, which is nonsingular exactly when θ is
/// contact at the point.
inline VectorValue reeb_field(const KFormValue& theta, const KFormValue& dtheta) {
  const int d = theta.dim();
  JetMatrix m = two_form_matrix(dtheta);
  JetVector rhs(d);
  for (int i = 0; i < d; ++i) {
    rhs[i] = theta[i];
    for (int j = 0; j < d; ++j) m(i, j) += theta[i] * theta[j];
  }
  try {
    return VectorValue(jet_linear_solve(m, rhs));
  } catch (const SingularMatrixError&) {
    throw GeometryError("Reeb system is singular: the form is not contact here");
  }
}

/// Reeb field of the structure's own θ (not normalized), `order` derivatives.
inline VectorValue reeb_field(const ContactStructure& cs, const Point& p, int order) {
  const KFormValue theta = cs.theta().evaluate(p, order + 1);
  return reeb_field(theta, exterior_derivative(theta));
}

namespace contact_detail {

// |dθ restricted to H|^2_g computed in the basis u_j = d_j - (θ_j / θ_m) d_m
// of ker θ, where m is the largest θ-component.
inline Jet levi_norm_squared(const KFormValue& theta, const KFormValue& dtheta,
                             const JetMatrix& g) {
  const int d = theta.dim();
  int m = 0;
  for (int i = 1; i < d; ++i) {
    if (std::abs(theta[i].value()) > std::abs(theta[m].value())) m = i;
  }
  std::vector<VectorValue> u;
  for (int j = 0; j < d; ++j) {
    if (j == m) continue;
    VectorValue v = VectorValue::basis(d, j);
    v[m] = -(theta[j] / theta[m]);
    u.push_back(std::move(v));
  }
  const int h = d - 1;
  JetMatrix gram(h, h);
  JetMatrix w(h, h);
  for (int a = 0; a < h; ++a) {
    for (int b = a; b < h; ++b) {
      gram(a, b) = metric_product(g, u[a], u[b]);
      gram(b, a) = gram(a, b);
      if (b > a) {
        w(a, b) = evaluate(dtheta, u[a], u[b]);
        w(b, a) = -w(a, b);
      }
    }
  }
  // Positive definiteness of g on H: all leading minors via elimination.
  {
    JetMatrix probe = gram;
    for (int k = 0; k < h; ++k) {
      const double pivot = probe(k, k).value();
      if (!(pivot > 1e-12 * std::max(1.0, gram.max_abs_value()))) {
        throw GeometryError("g is not positive definite on H");
      }
      for (int r = k + 1; r < h; ++r) {
        const double f = probe(r, k).value() / pivot;
        for (int c = k; c < h; ++c) probe(r, c) = probe(r, c).value() - f * probe(k, c).value();
      }
    }
  }
  const JetMatrix ginv = jet_inverse(gram);
  // tr(G^-1 W G^-1 W^T)
  const JetMatrix a = ginv * w;
  Jet s(0.0);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) s += a(i, j) * a(j, i) * -1.0;
  }
  return s;
}

}  // namespace contact_detail

/// Positive scale μ with ‖d(μθ) restricted to H‖²_g = 2n, from jet values of
/// θ, dθ and g. The result has the order of dθ.
inline Jet normalization_factor(const KFormValue& theta, const KFormValue& dtheta,
                                const JetMatrix& g) {
  const int n = (theta.dim() - 1) / 2;
  const Jet norm2 = contact_detail::levi_norm_squared(theta, dtheta, g);
  if (!(norm2.value() > 0.0)) throw GeometryError("Levi form vanishes on H");
  return sqrt(Jet(2.0 * n) / norm2);
}

/// μ at p, carrying `order` derivatives.
inline Jet normalize_theta(const ContactStructure& cs, const Point& p, int order) {
  const KFormValue theta = cs.theta().evaluate(p, order + 1);
  return normalization_factor(theta, exterior_derivative(theta), cs.metric(p, order + 1))
      .truncated(order);
}

}  // namespace srcontact
