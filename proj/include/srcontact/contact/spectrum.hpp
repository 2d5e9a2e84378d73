#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "srcontact/contact/frame.hpp"

namespace srcontact {

/// Levi form in an orthonormal frame of H, as a 2n x 2n skew matrix.
inline Eigen::MatrixXd levi_matrix(const AdaptedFrame& f) {
  const int h = f.dim() - 1;
  Eigen::MatrixXd w(h, h);
  for (int a = 0; a < h; ++a) {
    w(a, a) = 0.0;
    for (int b = a + 1; b < h; ++b) {
      w(a, b) = f.omega(a + 1, b + 1).value();
      w(b, a) = -w(a, b);
    }
  }
  return w;
}

/// Moduli λ_1 >= ... >= λ_n of the eigenvalue pairs ±iλ_j of the Levi form.
/// Under the normalization, sum λ_j² = n.
inline std::vector<double> lambda_spectrum(const AdaptedFrame& f) {
  const Eigen::MatrixXd w = levi_matrix(f);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w.transpose() * w, Eigen::EigenvaluesOnly);
  std::vector<double> sq(es.eigenvalues().data(), es.eigenvalues().data() + w.rows());
  std::sort(sq.begin(), sq.end(), std::greater<>());
  std::vector<double> out;
  for (std::size_t i = 0; i < sq.size(); i += 2) {
    // Each λ² appears twice; average the pair.
    out.push_back(std::sqrt(std::max(0.0, 0.5 * (sq[i] + sq[i + 1]))));
  }
  return out;
}

/// Complex structure on H compatible with g and dθ̂: on each invariant plane
/// of the Levi form it is the rotation by a quarter turn that makes
/// dθ̂(X, JX) positive. Returned in the frame basis of H.
inline Eigen::MatrixXd levi_complex_structure(const AdaptedFrame& f) {
  const Eigen::MatrixXd w = levi_matrix(f);
  const Eigen::Index h = w.rows();
  Eigen::RealSchur<Eigen::MatrixXd> schur(w);
  const Eigen::MatrixXd& u = schur.matrixU();
  const Eigen::MatrixXd& t = schur.matrixT();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(h, h);
  for (Eigen::Index i = 0; i + 1 < h;) {
    if (t(i + 1, i) != 0.0) {
      const double s = t(i, i + 1) >= 0.0 ? 1.0 : -1.0;
      block(i, i + 1) = -s;
      block(i + 1, i) = s;
      i += 2;
    } else {
      throw GeometryError("Levi form is degenerate on H");
    }
  }
  return u * block * u.transpose();
}

struct Classification {
  bool contact = true;
  int points = 0;
  std::vector<double> lambda_min;
  std::vector<double> lambda_max;
  bool cr_compatible = true;
  bool partially_integrable = true;
};

/// Classify the structure over a set of points: contact condition, spread of
/// the λ spectrum, and whether the Levi complex structure is CR compatible
/// (all λ_j = 1) and partially integrable (dθ̂(JX, JY) = dθ̂(X, Y)).
inline Classification classify(const ContactStructure& cs, const std::vector<Point>& points) {
  Classification c;
  const int n = cs.n();
  c.lambda_min.assign(n, std::numeric_limits<double>::infinity());
  c.lambda_max.assign(n, 0.0);
  for (const Point& p : points) {
    if (!check_contact(cs, p).pass) {
      c.contact = false;
      continue;
    }
    const AdaptedFrame f = adapted_frame(cs, p, 0);
    const auto lam = lambda_spectrum(f);
    for (int j = 0; j < n; ++j) {
      c.lambda_min[j] = std::min(c.lambda_min[j], lam[j]);
      c.lambda_max[j] = std::max(c.lambda_max[j], lam[j]);
      if (std::abs(lam[j] - 1.0) > 1e-8) c.cr_compatible = false;
    }
    const Eigen::MatrixXd w = levi_matrix(f);
    const Eigen::MatrixXd j = levi_complex_structure(f);
    const Eigen::MatrixXd invariance = j.transpose() * w * j - w;
    if (invariance.cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, w.cwiseAbs().maxCoeff())) {
      c.partially_integrable = false;
    }
    ++c.points;
  }
  if (c.points == 0) {
    c.lambda_min.assign(n, 0.0);
  }
  return c;
}

}  // namespace srcontact
