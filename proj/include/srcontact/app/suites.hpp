#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "srcontact/app/registry.hpp"
#include "srcontact/app/report.hpp"
#include "srcontact/app/sampling.hpp"
#include "srcontact/contact/spectrum.hpp"
#include "srcontact/tw3d/tanaka_webster.hpp"

namespace srcontact {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"contact", "canonical", "promotion", "tw-compare",
                                                 "rotation"};
  return names;
}

/// Running maximum of one residual across points, with its tolerance.
struct Residual {
  std::string name;
  double tolerance = 0.0;
  double max = 0.0;
  bool finite = true;

  void add(double v) {
    if (!std::isfinite(v)) finite = false;
    else max = std::max(max, v);
  }
  bool pass() const { return finite && max <= tolerance; }
};

struct SuiteResult {
  std::string name;
  std::vector<Residual> residuals;
  int evaluated = 0;
  std::vector<std::string> errors;

  Residual& at(const std::string& key) {
    for (auto& r : residuals) {
      if (r.name == key) return r;
    }
    throw Error("internal: unknown residual " + key);
  }
  bool pass() const {
    if (!errors.empty() || evaluated == 0) return false;
    return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.pass(); });
  }
};

struct RunOptions {
  std::vector<std::string> suites;
  int points = 100;
  std::uint64_t seed = 1;
  ParamMap params;
};

struct Report {
  nlohmann::ordered_json body;
  bool pass = false;

  std::string dump() const { return dump_report(body); }
};

namespace suite_detail {

inline SuiteResult make_suite(const std::string& name, int dim) {
  SuiteResult s;
  s.name = name;
  auto add = [&](const char* key, double tol) { s.residuals.push_back(Residual{key, tol}); };
  if (name == "contact") {
    add("normalization", 1e-9);
    add("frame_duality", 1e-10);
    add("frame_orthonormality", 1e-10);
    add("reeb", 1e-11);
    add("horizontality", 1e-10);
    add("lambda_sum", 1e-8);
    add("sign_flip", 1e-12);
  } else if (name == "canonical") {
    add("nabla_reeb", 1e-9);
    add("nabla_theta", 1e-9);
    add("partial_torsion", 1e-9);
    add("nabla_metric", 1e-9);
    add("levi_row", 1e-9);
    add("uniqueness_offset", 1e-9);
    add("uniqueness_frame", 1e-9);
    add("sign_invariance", 1e-10);
  } else if (name == "promotion") {
    add("horizontal_part", 0.0);
    add("curvature_levi_component", 1e-9);
    if (dim == 3) add("closed_form", 1e-8);
  } else if (name == "tw-compare") {
    add("structure_equations", 1e-9);
    add("partial_agreement", 1e-9);
    add("difference_tensor", 1e-8);
    add("promoted_torsion", 1e-8);
    add("tw_torsion", 1e-8);
    add("curvature_consistency", 1e-8);
  } else if (name == "rotation") {
    add("omega_shift", 1e-9);
    add("torsion_rotation", 1e-9);
    add("curvature", 1e-9);
    add("tw_invariance", 1e-9);
  }
  return s;
}

inline double max_value_diff(const Tensor3<Jet>& a, const Tensor3<Jet>& b, int first) {
  double m = 0.0;
  const int d = a.extent(0);
  for (int i = first; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) m = std::max(m, std::abs(a(i, k, j).value() - b(i, k, j).value()));
  return m;
}

// Alternative seeds for an admissible frame: the default directions mixed
// pairwise, so Gram-Schmidt produces a genuinely different frame of H.
inline FrameOptions alternative_frame(const AdaptedFrame& f) {
  const int d = f.dim();
  int omit = 0;
  for (int i = 1; i < d; ++i) {
    if (std::abs(f.frame[0][i].value()) > std::abs(f.frame[0][omit].value())) omit = i;
  }
  std::vector<int> dirs;
  for (int i = 0; i < d; ++i) {
    if (i != omit) dirs.push_back(i);
  }
  const int h = d - 1;
  FrameOptions opt;
  for (int k = 0; k < h; ++k) {
    std::vector<double> s(d, 0.0);
    s[dirs[h - 1 - k]] += 1.0;
    s[dirs[k]] += 0.3;
    opt.seeds.push_back(std::move(s));
  }
  return opt;
}

// Symmetric (in the outer slots) random offset for the base connection.
inline Tensor3<double> random_offset(int h, SplitMix64& rng) {
  Tensor3<double> t(h);
  for (int a = 0; a < h; ++a)
    for (int b = 0; b < h; ++b)
      for (int c = a; c < h; ++c) {
        t(a, b, c) = rng.uniform(-1.0, 1.0);
        t(c, b, a) = t(a, b, c);
      }
  return t;
}

// Random polynomial of degree <= 3 in the coordinates, coefficients in [-1, 1].
inline Expr random_polynomial(int dim, SplitMix64& rng) {
  Expr e = Expr::constant(rng.uniform(-1.0, 1.0));
  for (int i = 0; i < dim; ++i) {
    e = e + Expr::constant(rng.uniform(-1.0, 1.0)) * Expr::coordinate(i);
    for (int j = i; j < dim; ++j) {
      e = e + Expr::constant(rng.uniform(-1.0, 1.0)) * Expr::coordinate(i) * Expr::coordinate(j);
    }
  }
  const int i = static_cast<int>(rng.next() % dim);
  e = e + Expr::constant(rng.uniform(-1.0, 1.0)) * Expr::power(Expr::coordinate(i), 3);
  return e;
}

inline void run_contact(SuiteResult& s, const ContactStructure& cs, const ContactStructure& neg,
                        const AdaptedFrame& f, const Point& p) {
  const FrameResiduals r = frame_residuals(f);
  s.at("normalization").add(r.normalization);
  s.at("frame_duality").add(r.duality);
  s.at("frame_orthonormality").add(r.orthonormality);
  s.at("reeb").add(r.reeb);
  s.at("horizontality").add(r.horizontality);
  double sum = 0.0;
  for (double l : lambda_spectrum(f)) sum += l * l;
  s.at("lambda_sum").add(std::abs(sum - cs.n()));
  const AdaptedFrame g = adapted_frame(neg, p, 0);
  double flip = 0.0;
  for (int i = 0; i < cs.dim(); ++i) {
    flip = std::max(flip, std::abs(g.theta_hat[i].value() + f.theta_hat[i].value()));
  }
  s.at("sign_flip").add(flip);
}

inline void run_canonical(SuiteResult& s, const ContactStructure& cs, const ContactStructure& neg,
                          const AdaptedFrame& f,
                          const PartialConnection& can, const Point& p, SplitMix64& rng) {
  const CanonicalResiduals r = canonical_residuals(can, f);
  s.at("nabla_reeb").add(r.reeb);
  s.at("nabla_theta").add(r.theta);
  s.at("partial_torsion").add(r.torsion);
  s.at("nabla_metric").add(r.metric);

  const auto tau = partial_torsion(can, f);
  double levi = 0.0;
  for (int a = 1; a < f.dim(); ++a)
    for (int c = a + 1; c < f.dim(); ++c)
      levi = std::max(levi, std::abs(tau[0].at({a, c}).value() + f.omega(a, c).value()));
  s.at("levi_row").add(levi);

  const Tensor3<double> offset = random_offset(f.dim() - 1, rng);
  const PartialConnection other = canonical_partial_connection(f, &offset);
  s.at("uniqueness_offset").add(max_value_diff(can.gamma, other.gamma, 1));

  const auto action = coordinate_action(can, f);
  const AdaptedFrame f2 = adapted_frame(cs, p, f.order, alternative_frame(f));
  s.at("uniqueness_frame").add(max_value_diff(action, coordinate_action(canonical_partial_connection(f2), f2)));

  const AdaptedFrame fn = adapted_frame(neg, p, f.order);
  s.at("sign_invariance").add(max_value_diff(action, coordinate_action(canonical_partial_connection(fn), fn)));
}

inline void run_promotion(SuiteResult& s, const AdaptedFrame& f, const PartialConnection& can) {
  const FullConnection full = promote(can, f);
  double same = 0.0;
  for (int a = 1; a < f.dim(); ++a)
    for (int k = 0; k < f.dim(); ++k)
      for (int j = 0; j < f.dim(); ++j) {
        const auto x = full(a, k, j).coefficients();
        const auto y = can(a, k, j).coefficients();
        if (x.size() != y.size() || !std::equal(x.begin(), x.end(), y.begin())) same = 1.0;
      }
  s.at("horizontal_part").add(same);
  s.at("curvature_levi_component").add(promotion_residual(full, f));
  if (f.dim() == 3) {
    const TWData t = solve_structure_equations(f);
    s.at("closed_form").add(max_value_diff(full.gamma, promoted_closed_form(t, f).gamma, 0));
  }
}

inline void run_tw_compare(SuiteResult& s, const AdaptedFrame& f, const PartialConnection& can) {
  const TWData t = solve_structure_equations(f);
  s.at("structure_equations").add(t.residual);
  s.at("partial_agreement").add(compare_partial(f).deviation);
  const ConnectionComparison full = compare_full(f);
  s.at("difference_tensor").add(full.deviation);
  s.at("curvature_consistency").add(std::abs(full.difference(0, 1, 2) - t.r->value()));

  // Full torsion e-rows: promoted θ̂ ^ (A e1 + (B+R) e2, (B-R) e1 - A e2)
  // with θ̂-row -Ω; Tanaka-Webster θ̂ ^ (A e1 + B e2, B e1 - A e2) with
  // θ̂-row e1 ^ e2.
  const double a = t.a.value(), b = t.b.value(), r = t.r->value();
  const auto prom = full_torsion(promote(can, f), f);
  const auto tw = full_torsion(tw_connection(t, f), f);
  auto rows_dev = [](const std::vector<KFormValue>& tau, const double expected[3][3]) {
    double m = 0.0;
    for (int k = 0; k < 3; ++k) {
      m = std::max(m, std::abs(tau[k].at({0, 1}).value() - expected[k][0]));
      m = std::max(m, std::abs(tau[k].at({0, 2}).value() - expected[k][1]));
      m = std::max(m, std::abs(tau[k].at({1, 2}).value() - expected[k][2]));
    }
    return m;
  };
  const double expected_prom[3][3] = {
      {0, 0, -f.omega(1, 2).value()}, {a, b + r, 0}, {b - r, -a, 0}};
  const double expected_tw[3][3] = {{0, 0, 1}, {a, b, 0}, {b, -a, 0}};
  s.at("promoted_torsion").add(rows_dev(prom, expected_prom));
  s.at("tw_torsion").add(rows_dev(tw, expected_tw));
}

inline void run_rotation(SuiteResult& s, const ContactStructure& cs, const AdaptedFrame& f,
                         const Point& p, SplitMix64& rng) {
  const Expr phi_expr = random_polynomial(cs.dim(), rng);
  const Jet phi = eval_jet(phi_expr, p, f.order);
  const RotationCheck r = check_rotation_covariance(f, phi);
  s.at("omega_shift").add(r.omega);
  s.at("torsion_rotation").add(r.torsion);
  s.at("curvature").add(r.curvature);
  const AdaptedFrame g = rotate_coframe(f, phi);
  const auto a = coordinate_christoffel(tw_connection(solve_structure_equations(f), f), f);
  const auto b = coordinate_christoffel(tw_connection(solve_structure_equations(g), g), g);
  s.at("tw_invariance").add(max_value_diff(a, b));
}

inline nlohmann::ordered_json to_json(const SuiteResult& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["pass"] = s.pass();
  j["evaluated"] = s.evaluated;
  j["residuals"] = nlohmann::ordered_json::array();
  for (const auto& r : s.residuals) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["max"] = r.finite ? r.max : std::nan("");
    e["tolerance"] = r.tolerance;
    e["pass"] = r.pass();
    j["residuals"].push_back(e);
  }
  if (!s.errors.empty()) j["errors"] = s.errors;
  return j;
}

}  // namespace suite_detail

/// Sample points, run the requested suites and assemble the report.
/// Throws SpecError for unknown or dimension-unavailable suites and Error
/// when every sampled point fails the preconditions.
inline Report run_suites(const ManifoldSpec& spec, const RunOptions& opt) {
  using namespace suite_detail;
  const ContactStructure cs = build(spec, opt.params);
  const ContactStructure neg = cs.with_negated_theta();
  const int d = cs.dim();

  std::vector<SuiteResult> suites;
  for (const auto& name : opt.suites) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      throw SpecError("unknown suite '" + name + "'");
    }
    if ((name == "tw-compare" || name == "rotation") && d != 3) {
      throw SpecError("suite '" + name + "' unavailable for dim " + std::to_string(d));
    }
    for (const auto& s : suites) {
      if (s.name == name) throw SpecError("suite '" + name + "' listed twice");
    }
    suites.push_back(make_suite(name, d));
  }
  if (suites.empty()) throw SpecError("no suites requested");
  if (opt.points <= 0) throw SpecError("point count must be positive");

  const std::vector<Point> points = sample_points(cs.domain(), opt.points, opt.seed);
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  int skipped = 0;
  for (int idx = 0; idx < opt.points; ++idx) {
    const Point& p = points[idx];
    nlohmann::ordered_json rec;
    rec["index"] = idx;
    rec["x"] = std::vector<double>(p.coords().begin(), p.coords().end());

    AdaptedFrame f;
    try {
      if (!check_contact(cs, p).pass) throw GeometryError("contact condition fails");
      f = adapted_frame(cs, p, 2);
    } catch (const Error& e) {
      rec["status"] = "skipped";
      rec["reason"] = e.what();
      records.push_back(rec);
      ++skipped;
      continue;
    }

    const auto lambda = lambda_spectrum(f);
    bool cr = true;
    for (double l : lambda) cr = cr && std::abs(l - 1.0) <= 1e-8;
    const Eigen::MatrixXd w = levi_matrix(f);
    const Eigen::MatrixXd jm = levi_complex_structure(f);
    const bool integrable =
        (jm.transpose() * w * jm - w).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, w.cwiseAbs().maxCoeff());
    rec["status"] = "ok";
    rec["mu"] = f.mu.value();
    rec["lambda"] = lambda;
    rec["flags"] = {{"contact", true}, {"cr_compatible", cr}, {"partially_integrable", integrable}};
    records.push_back(rec);

    // Independent stream per point so suites do not perturb each other.
    SplitMix64 rng(opt.seed ^ (0xA5A5A5A5A5A5A5A5ull + 0x9E3779B97F4A7C15ull * (idx + 1)));
    PartialConnection can;
    bool have_can = false;
    for (auto& s : suites) {
      try {
        if (!have_can && s.name != "contact") {
          can = canonical_partial_connection(f);
          have_can = true;
        }
        if (s.name == "contact") run_contact(s, cs, neg, f, p);
        if (s.name == "canonical") run_canonical(s, cs, neg, f, can, p, rng);
        if (s.name == "promotion") run_promotion(s, f, can);
        if (s.name == "tw-compare") run_tw_compare(s, f, can);
        if (s.name == "rotation") run_rotation(s, cs, f, p, rng);
        ++s.evaluated;
      } catch (const Error& e) {
        if (s.errors.size() < 5) s.errors.push_back("point " + std::to_string(idx) + ": " + e.what());
      }
    }
  }
  if (skipped == opt.points) {
    throw Error("all " + std::to_string(opt.points) + " sampled points failed the preconditions");
  }

  Report rep;
  rep.pass = std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass(); });
  auto& j = rep.body;
  j["schema"] = kReportSchema;
  j["manifold"]["name"] = spec.name;
  j["manifold"]["dim"] = d;
  j["manifold"]["coordinates"] = spec.coordinates;
  j["manifold"]["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : spec.params) {
    auto it = opt.params.find(k);
    j["manifold"]["params"][k] = it != opt.params.end() ? it->second : v;
  }
  j["run"]["suites"] = opt.suites;
  j["run"]["points"] = opt.points;
  j["run"]["seed"] = opt.seed;
  j["summary"]["evaluated"] = opt.points - skipped;
  j["summary"]["skipped"] = skipped;
  j["summary"]["pass"] = rep.pass;
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& s : suites) j["suites"].push_back(to_json(s));
  j["points"] = std::move(records);
  return rep;
}

}  // namespace srcontact
