// rimcert command-line entry point.
//
// Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rimcert/commands.hpp"

namespace {

using rimcert::Outcome;

nlohmann::json read_json_argument(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw rimcert::ParseError("cannot open " + arg.substr(1), 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw rimcert::ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

rimcert::Window parse_window(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw rimcert::ParseError("bad window coordinate '" + item + "'", 0);
    }
  }
  if (v.size() != 4) throw rimcert::ParseError("window needs xmin,xmax,ymin,ymax", 0);
  return {v[0], v[1], v[2], v[3]};
}

int emit(const rimcert::CertificationReport& report, bool json) {
  if (json) {
    std::cout << report.to_json().dump(2) << '\n';
  } else {
    std::cout << report.to_text();
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certifies the computable claims behind annulus rim-surgery on plane curves"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rimcert::kToolVersion);

  bool json = false;
  bool verbose = false;
  std::uint64_t seed = 1;
  std::size_t max_cosets = rimcert::default_max_cosets();
  app.add_flag("--json", json, "Emit the JSON report");
  app.add_flag("--verbose", verbose, "Extra cross-checks and detail");
  app.add_option("--seed", seed, "Seed for randomized self-test suites");
  app.add_option("--max-cosets", max_cosets, "Coset-enumeration limit (env RIMCERT_MAX_COSETS)")
      ->check(CLI::PositiveNumber);

  auto* alex = app.add_subcommand("alexander", "Normalized Alexander polynomial of a knot");
  std::string knot_spec;
  alex->add_option("knot", knot_spec, "unknot | torus:p,q | twist:n | seifert:[[..],..] | sum(K1,K2)")
      ->required();

  auto* pi1 = app.add_subcommand("pi1", "Certify pi1 of the nest-curve complement is Z/d");
  std::int64_t degree = 0;
  std::int64_t membrane = 1;
  pi1->add_option("-d,--degree", degree, "Curve degree d >= 4")->required();
  pi1->add_option("-m,--membrane", membrane, "Membrane region index");

  auto* sw = app.add_subcommand("sw-family", "Certify SW invariants separate a knot family");
  std::int64_t cover_degree = 2;
  std::string base_sw;
  std::int64_t family = 0;
  std::vector<std::string> knot_specs;
  bool raw = false;
  sw->add_option("-c,--cover-degree", cover_degree, "Degree of the branched cover (>= 2)");
  sw->add_option("--base-sw", base_sw, "Base SW terms as JSON or @file; default {0 -> 1}");
  sw->add_option("--family", family, "Use T(2,3) ... T(2,2n+1)");
  sw->add_option("-k,--knot", knot_specs, "Knot spec (repeatable)");
  sw->add_flag("--raw", raw, "Apply Delta_K instead of Delta_{K#K}");

  auto* genus = app.add_subcommand("genus", "Genus of a smooth plane curve of degree d");
  std::int64_t genus_degree = 0;
  genus->add_option("d", genus_degree, "Degree")->required();

  auto* x9 = app.add_subcommand("x9", "Extract the ovals of the X9 perturbation");
  rimcert::X9Params params;
  std::optional<std::string> window_text;
  std::optional<std::string> svg_path;
  x9->add_option("--epsilon", params.epsilon, "epsilon");
  x9->add_option("--delta", params.delta, "delta");
  x9->add_option("-r,--resolution", params.resolution, "Grid cells per side");
  x9->add_option("--window", window_text, "xmin,xmax,ymin,ymax (default 3 sqrt(eps) square)");
  x9->add_option("--svg", svg_path, "Write the traced curves as SVG");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in self checks");

  for (auto* sub : {alex, pi1, sw, genus, x9, selftest}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(Outcome::InputError);
  }

  try {
    if (alex->parsed()) {
      const auto r = rimcert::cmd_alexander(knot_spec);
      std::cout << (json ? r.to_json().dump(2) + "\n" : r.to_text());
      return 0;
    }
    if (pi1->parsed()) return emit(rimcert::cmd_pi1(degree, membrane, max_cosets), json);
    if (sw->parsed()) {
      std::vector<rimcert::Knot> knots;
      if (family > 0) knots = rimcert::torus_family(family);
      for (const auto& s : knot_specs) knots.push_back(rimcert::parse_knot(s));
      const nlohmann::json base = base_sw.empty() ? nlohmann::json() : read_json_argument(base_sw);
      return emit(rimcert::cmd_sw_family(base, cover_degree, knots, {!raw, verbose}), json);
    }
    if (genus->parsed()) {
      const auto g = rimcert::cmd_genus(genus_degree);
      if (json) {
        std::cout << nlohmann::json{{"tool", rimcert::kToolName},
                                    {"version", rimcert::kToolVersion},
                                    {"command", "genus"},
                                    {"degree", genus_degree},
                                    {"genus", g}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << g << '\n';
      }
      return 0;
    }
    if (x9->parsed()) {
      params.window = window_text ? parse_window(*window_text) : rimcert::Window::around_origin(params.epsilon);
      return emit(rimcert::cmd_x9(params, svg_path), json);
    }
    if (selftest->parsed()) {
      const auto cases = rimcert::cmd_selftest(seed);
      bool all = true;
      nlohmann::json j = nlohmann::json::array();
      for (const auto& c : cases) {
        all = all && c.passed;
        if (json) {
          j.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        } else {
          std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
        }
      }
      if (json) std::cout << nlohmann::json{{"selftest", j}, {"verdict", all ? "pass" : "fail"}}.dump(2) << '\n';
      return all ? 0 : 1;
    }
  } catch (const rimcert::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(Outcome::InputError);
  }
  return static_cast<int>(Outcome::InputError);
}
