// Command-line front end: list the built-in manifolds, validate spec files
// and run the invariant suites, writing a JSON report.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srcontact/app/registry.hpp"
#include "srcontact/app/suites.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

srcontact::ParamMap parse_params(const std::vector<std::string>& items) {
  srcontact::ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw srcontact::SpecError("--param expects name=value, got '" + item + "'");
    }
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw srcontact::SpecError("--param " + item + ": value is not a number");
    }
    out[item.substr(0, eq)] = v;
  }
  return out;
}

int list_manifolds() {
  for (const auto& s : srcontact::builtin_registry()) {
    std::cout << s.name << "  (dim " << s.dim() << ")";
    for (const auto& [k, v] : s.params) std::cout << "  " << k << "=" << v;
    std::cout << "\n    " << s.description << "\n";
  }
  return 0;
}

int validate_spec(const std::string& path) {
  const srcontact::ManifoldSpec s = srcontact::load_spec(path);
  srcontact::build(s);
  std::cout << "ok: " << s.name << " (dim " << s.dim() << ")\n";
  return 0;
}

struct AnalyzeArgs {
  std::string manifold;
  std::string spec;
  std::string suites;
  std::optional<int> points;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> params;
};

int analyze(const AnalyzeArgs& a) {
  const srcontact::ManifoldSpec spec =
      a.spec.empty() ? srcontact::find_builtin(a.manifold) : srcontact::load_spec(a.spec);

  srcontact::RunOptions opt;
  opt.params = parse_params(a.params);
  opt.points = a.points.value_or(spec.samples);
  opt.seed = a.seed.value_or(spec.seed);
  if (a.suites.empty() || a.suites == "all") {
    for (const auto& name : srcontact::suite_names()) {
      if (spec.dim() != 3 && (name == "tw-compare" || name == "rotation")) continue;
      opt.suites.push_back(name);
    }
  } else {
    opt.suites = split_csv(a.suites);
  }

  const srcontact::Report report = srcontact::run_suites(spec, opt);
  const std::string text = report.dump();
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw srcontact::Error("cannot write " + a.out);
    out << text;
  }

  std::ostream& log = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
  const auto& body = report.body;
  log << spec.name << ": " << body["summary"]["evaluated"].get<int>() << " points evaluated, "
      << body["summary"]["skipped"].get<int>() << " skipped\n";
  for (const auto& s : body["suites"]) {
    log << "  " << (s["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << s["name"].get<std::string>();
    double worst = 0.0;
    for (const auto& r : s["residuals"]) {
      if (r["max"].is_number()) worst = std::max(worst, r["max"].get<double>());
    }
    log << "  (max residual " << worst << ")\n";
    if (s.contains("errors")) {
      for (const auto& e : s["errors"]) log << "    error: " << e.get<std::string>() << "\n";
    }
  }
  return report.pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical partial connections on sub-Riemannian contact manifolds"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-manifolds", "List the built-in manifolds");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a manifold spec file");
  validate->add_option("--spec", validate_path, "Spec file (JSON)")->required();

  AnalyzeArgs args;
  auto* run = app.add_subcommand("analyze", "Run invariant suites on sampled points");
  auto* by_name = run->add_option("--manifold", args.manifold, "Built-in manifold name");
  auto* by_file = run->add_option("--spec", args.spec, "Spec file (JSON)");
  by_name->excludes(by_file);
  run->add_option("--suites", args.suites,
                  "Comma-separated suites: contact, canonical, promotion, tw-compare, rotation "
                  "(default: all available)");
  run->add_option("--points", args.points, "Number of sample points (default: from spec)")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", args.seed, "Sampling seed (default: from spec)");
  run->add_option("--out", args.out, "Report path; '-' or omitted writes to stdout");
  run->add_option("--param", args.params, "Override a spec parameter, name=value")
      ->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*list) return list_manifolds();
    if (*validate) return validate_spec(validate_path);
    if (*run) {
      if (args.manifold.empty() && args.spec.empty()) {
        std::cerr << "error: analyze needs --manifold or --spec\n";
        return kExitError;
      }
      return analyze(args);
    }
  } catch (const srcontact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
