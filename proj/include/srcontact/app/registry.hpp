#pragma once

#include <string>
#include <vector>

#include "srcontact/app/spec.hpp"

namespace srcontact {

namespace registry_detail {

inline std::vector<Interval> unit_box(int d) { return std::vector<Interval>(d, Interval{-1.0, 1.0}); }

inline ManifoldSpec heisenberg_like(std::string name, std::string description, std::string gyy) {
  ManifoldSpec s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.coordinates = {"x", "y", "z"};
  s.theta = {"-y", "0", "1"};
  s.g = {{"1", "0", "0"}, {"0", std::move(gyy), "0"}, {"0", "0", "0"}};
  s.domain = unit_box(3);
  return s;
}

}  // namespace registry_detail

/// Built-in example manifolds.
inline const std::vector<ManifoldSpec>& builtin_registry() {
  static const std::vector<ManifoldSpec> registry = [] {
    using registry_detail::heisenberg_like;
    std::vector<ManifoldSpec> r;
    r.push_back(heisenberg_like("heisenberg", "theta = dz - y dx, g = dx^2 + dy^2", "1"));

    ManifoldSpec aniso = heisenberg_like("heisenberg-aniso", "theta = dz - y dx, g = dx^2 + b^2 dy^2", "b^2");
    aniso.params = {{"b", 2.0}};
    r.push_back(aniso);

    r.push_back(heisenberg_like("heisenberg-perturbed", "theta = dz - y dx, g = dx^2 + (1 + x^2/4) dy^2",
                                "1 + x^2/4"));

    ManifoldSpec sphere;
    sphere.name = "sphere-chart";
    sphere.description = "round 3-sphere, stereographic chart: standard contact form and metric 4/s^2";
    sphere.coordinates = {"u", "v", "w"};
    const std::string s2 = "(1 + u^2 + v^2 + w^2)^2";
    sphere.theta = {"(-4*v - 4*u*w)/" + s2, "(4*u - 4*v*w)/" + s2,
                    "(2*u^2 + 2*v^2 - 2*w^2 - 2)/" + s2};
    const std::string g = "4/" + s2;
    sphere.g = {{g, "0", "0"}, {"0", g, "0"}, {"0", "0", g}};
    sphere.domain = registry_detail::unit_box(3);
    r.push_back(sphere);

    ManifoldSpec split;
    split.name = "n2-split";
    split.description = "theta = dz - y1 dx1 - y2 dx2, g = dx1^2 + dy1^2 + c^2 (dx2^2 + dy2^2)";
    split.coordinates = {"x1", "y1", "x2", "y2", "z"};
    split.params = {{"c", 2.0}};
    split.theta = {"-y1", "0", "-y2", "0", "1"};
    split.g = {{"1", "0", "0", "0", "0"},
               {"0", "1", "0", "0", "0"},
               {"0", "0", "c^2", "0", "0"},
               {"0", "0", "0", "c^2", "0"},
               {"0", "0", "0", "0", "0"}};
    split.domain = registry_detail::unit_box(5);
    r.push_back(split);
    return r;
  }();
  return registry;
}

/// Look up a built-in by name; the error lists the available names.
inline const ManifoldSpec& find_builtin(const std::string& name) {
  for (const auto& s : builtin_registry()) {
    if (s.name == name) return s;
  }
  std::string names;
  for (const auto& s : builtin_registry()) names += (names.empty() ? "" : ", ") + s.name;
  throw SpecError("unknown manifold '" + name + "'; available: " + names);
}

}  // namespace srcontact
