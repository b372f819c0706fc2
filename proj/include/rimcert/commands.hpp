#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rimcert/fpgroups.hpp"
#include "rimcert/knots.hpp"
#include "rimcert/lcurve.hpp"
#include "rimcert/swcalc.hpp"

namespace rimcert {

inline constexpr const char* kToolName = "rimcert";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kMaxCosetsEnv = "RIMCERT_MAX_COSETS";

/// Process exit codes; the report verdict always agrees with them.
enum class Outcome : int { Pass = 0, Fail = 1, Inconclusive = 2, InputError = 3 };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
    case Outcome::InputError: return "input-error";
  }
  return "?";
}

struct CertificationReport {
  std::string command;
  nlohmann::json input = nlohmann::json::object();
  nlohmann::json certificate = nlohmann::json::object();
  Outcome outcome = Outcome::Fail;
  std::string summary;  // e.g. "Pass(Z/5)"
  std::vector<std::string> lines;  // human-readable detail
  double wall_time_ms = 0;

  [[nodiscard]] int exit_code() const noexcept { return static_cast<int>(outcome); }

  /// Everything but wall time is deterministic for identical inputs.
  [[nodiscard]] nlohmann::json to_json(bool with_timing = true) const {
    nlohmann::json j{{"tool", kToolName},
                     {"version", kToolVersion},
                     {"command", command},
                     {"input", input},
                     {"certificate", certificate},
                     {"summary", summary},
                     {"verdict", rimcert::to_string(outcome)}};
    if (with_timing) j["wall_time_ms"] = wall_time_ms;
    return j;
  }

  [[nodiscard]] std::string to_text() const {
    std::ostringstream out;
    for (const auto& l : lines) out << l << '\n';
    out << "verdict: " << summary << '\n';
    return out.str();
  }
};

/// Default coset limit: RIMCERT_MAX_COSETS when set and valid, else 10^5.
inline std::size_t default_max_cosets() {
  if (const char* env = std::getenv(kMaxCosetsEnv)) {
    try {
      const auto v = std::stoull(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultMaxCosets;
}

namespace detail {

class Stopwatch {
 public:
  [[nodiscard]] double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline nlohmann::json integers_to_json(const std::vector<Integer>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

}  // namespace detail

// --- alexander ---------------------------------------------------------------

struct AlexanderResult {
  Knot knot;
  LaurentPoly polynomial;
  std::int64_t span = 0;

  [[nodiscard]] std::string to_text() const {
    return pretty(polynomial) + "\ndegree span: " + std::to_string(span) + "\n";
  }

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"command", "alexander"},
            {"knot", to_string(knot)},
            {"alexander", pretty(polynomial)},
            {"coefficients", rimcert::to_json(polynomial)},
            {"degree_span", span},
            {"normalization", "symmetric, positive top coefficient"}};
  }
};

inline AlexanderResult cmd_alexander(const std::string& knot_spec) {
  Knot k = parse_knot(knot_spec);
  LaurentPoly p = alexander(k);
  const auto span = degree_span(p);
  return {std::move(k), std::move(p), span};
}

// --- pi1 -----------------------------------------------------------------------

inline CertificationReport cmd_pi1(std::int64_t d, std::int64_t membrane, std::size_t max_cosets) {
  const detail::Stopwatch clock;
  if (d < 4) throw InvalidConfig("pi1 needs degree d >= 4");
  const NestConfig config = NestConfig::maximal(d, membrane);
  const Presentation pres = nest_presentation(config);

  CertificationReport report;
  report.command = "pi1";
  report.input = {{"degree", d},
                  {"membrane", membrane},
                  {"punctured", config.punctured},
                  {"max_cosets", max_cosets}};
  const CyclicCertificate cyc = is_cyclic_of_order(pres, static_cast<std::size_t>(d), max_cosets);

  nlohmann::json enumeration{{"status", cyc.enumeration.finite() ? "finite" : "inconclusive"},
                             {"cosets_defined", cyc.enumeration.cosets_defined},
                             {"max_cosets", cyc.enumeration.max_cosets}};
  if (cyc.enumeration.finite()) enumeration["order"] = cyc.enumeration.order;
  report.certificate = {{"presentation", to_string(pres)},
                        {"relators", to_json(pres).at("relators")},
                        {"genus", (d - 1) * (d - 2) / 2},
                        {"abelianization", detail::integers_to_json(cyc.abelian_invariants)},
                        {"enumeration", enumeration},
                        {"cyclic_check", to_string(cyc.verdict)},
                        {"cyclic_reason", cyc.reason}};
  report.lines.push_back("presentation: " + to_string(pres));
  std::string ab = "abelianization: [";
  for (std::size_t i = 0; i < cyc.abelian_invariants.size(); ++i)
    ab += (i ? ", " : "") + cyc.abelian_invariants[i].str();
  report.lines.push_back(ab + "]");
  report.lines.push_back(cyc.enumeration.finite()
                             ? "coset enumeration: order " + std::to_string(cyc.enumeration.order)
                             : "coset enumeration: inconclusive at " + std::to_string(max_cosets) + " cosets");

  if (cyc.verdict == Verdict::Pass) {
    report.outcome = Outcome::Pass;
    report.summary = "Pass(Z/" + std::to_string(d) + ")";
  } else {
    std::optional<Homomorphism> witness;
    for (const auto& target : builtin_nonabelian_targets()) {
      witness = find_finite_quotient(pres, target);
      if (witness) break;
    }
    if (witness) {
      report.outcome = Outcome::Fail;
      report.summary = "NonAbelian(" + witness->target + ")";
      nlohmann::json images = nlohmann::json::object();
      for (std::size_t g = 0; g < witness->image_names.size(); ++g)
        images[std::string(1, static_cast<char>('a' + g))] = witness->image_names[g];
      report.certificate["nonabelian_witness"] = {
          {"target", witness->target}, {"images", images}, {"surjective", witness->surjective}};
      std::string line = "surjection onto " + witness->target + ":";
      for (const auto& [g, img] : images.items()) line += " " + g + " -> " + img.get<std::string>();
      report.lines.push_back(line);
    } else if (cyc.verdict == Verdict::Inconclusive) {
      report.outcome = Outcome::Inconclusive;
      report.summary = "Inconclusive(" + cyc.reason + ")";
    } else {
      report.outcome = Outcome::Fail;
      report.summary = "Fail(" + cyc.reason + ")";
    }
  }
  report.wall_time_ms = clock.elapsed_ms();
  return report;
}

// --- sw-family -----------------------------------------------------------------

struct SwFamilyOptions {
  bool double_knot = true;
  bool verbose = false;
};

namespace detail {

// Both lifted tori of the double cover against a single surgery with
// Delta_{K#K} on the rank-1 lattice: Z^2/(1,1) ~= Z via (0, y) -> y.
inline bool double_cover_cross_check(const SwPolynomial& base_rank1, const Knot& k) {
  const auto two = HomologyLattice::cyclic_cover(2);
  SwPolynomial lifted(two);
  for (const auto& [cls, c] : base_rank1.terms()) lifted.add_term({0, cls.coords[0]}, c);
  const SwPolynomial via_pair = multi_torus_surgery(lifted, {two.basis(0), two.basis(1)}, alexander(k));

  const auto& one = base_rank1.lattice();
  const SwPolynomial via_single = fs_surgery(base_rank1, one.basis(0), alexander(Knot::sum(k, k)));
  SwPolynomial mapped(base_rank1.lattice_ptr());
  for (const auto& [cls, c] : via_pair.terms()) {
    if (cls.coords[0] != 0) return false;
    mapped.add_term({cls.coords[1]}, c);
  }
  return mapped == via_single;
}

}  // namespace detail

/// base_sw: null for the preset {0 -> 1}, else terms JSON over the lattice
/// (rank 1 when cover_degree == 2, rank cover_degree otherwise).
inline CertificationReport cmd_sw_family(const nlohmann::json& base_sw, std::int64_t cover_degree,
                                         const std::vector<Knot>& knots, SwFamilyOptions options = {}) {
  const detail::Stopwatch clock;
  if (cover_degree < 2) throw PreconditionViolation("cover degree must be >= 2");
  if (knots.empty()) throw PreconditionViolation("sw-family needs at least one knot");
  const auto d = static_cast<std::size_t>(cover_degree);
  const HomologyLattice lattice = d == 2 ? HomologyLattice::free(1) : HomologyLattice::cyclic_cover(d);
  std::vector<HClass> tori;
  for (std::size_t i = 0; i < (d == 2 ? 1 : d); ++i) tori.push_back(lattice.basis(i));
  const SwPolynomial base = base_sw.is_null() ? SwPolynomial::k3_like(lattice) : sw_from_json(base_sw, lattice);

  const auto cert = certify_family_distinct(base, tori, knots, {options.double_knot});

  CertificationReport report;
  report.command = "sw-family";
  nlohmann::json knot_specs = nlohmann::json::array();
  for (const auto& k : knots) knot_specs.push_back(to_string(k));
  report.input = {{"cover_degree", cover_degree},
                  {"base_sw", to_json(base)},
                  {"knots", knot_specs},
                  {"double_knot", options.double_knot}};
  report.certificate = to_json(cert);

  report.lines.push_back("lattice: rank " + std::to_string(lattice.rank()) +
                         (lattice.relations().empty() ? ", free" : ", relation sum(e_i) = 0"));
  for (const auto& e : cert.entries) {
    report.lines.push_back(e.knot + ": " + std::to_string(e.basic_class_count) + " basic classes, delta = " +
                           pretty(e.delta));
  }
  report.lines.push_back(std::string("basic-class counts pairwise distinct: ") +
                         (cert.counts_all_distinct ? "yes" : "no"));
  report.lines.push_back(std::string("SW polynomials pairwise distinct: ") + (cert.pass ? "yes" : "no"));

  bool cross_ok = true;
  if (options.verbose && d == 2 && options.double_knot) {
    for (const auto& k : knots) cross_ok = cross_ok && detail::double_cover_cross_check(base, k);
    report.certificate["double_cover_cross_check"] = cross_ok;
    report.lines.push_back(std::string("double-cover cross-check (two tori with Delta_K vs one with Delta_K#K): ") +
                           (cross_ok ? "agree" : "DISAGREE"));
  }

  report.outcome = cert.pass && cross_ok ? Outcome::Pass : Outcome::Fail;
  std::string counts;
  for (const auto& e : cert.entries) counts += (counts.empty() ? "" : ",") + std::to_string(e.basic_class_count);
  report.summary = std::string(cert.pass && cross_ok ? "Pass" : "Fail") + "(counts " + counts + ")";
  report.wall_time_ms = clock.elapsed_ms();
  return report;
}

// --- genus -------------------------------------------------------------------------

/// Genus (d-1)(d-2)/2 of a smooth plane curve of degree d.
inline std::int64_t cmd_genus(std::int64_t d) {
  if (d < 1) throw PreconditionViolation("degree must be >= 1");
  return checked_mul(d - 1, d - 2) / 2;
}

// --- x9 ----------------------------------------------------------------------------

inline CertificationReport cmd_x9(const X9Params& params, const std::optional<std::string>& svg_path = {}) {
  const detail::Stopwatch clock;
  const OvalReport ovals = x9_ovals(params);

  CertificationReport report;
  report.command = "x9";
  const auto& w = params.window;
  report.input = {{"epsilon", params.epsilon},
                  {"delta", params.delta},
                  {"window", {w.xmin, w.xmax, w.ymin, w.ymax}},
                  {"resolution", params.resolution}};
  report.certificate = to_json(ovals);
  if (svg_path) {
    std::ofstream out(*svg_path);
    if (!out) throw Error("cannot write " + *svg_path);
    out << to_svg(ovals);
    report.certificate["svg"] = *svg_path;
  }

  report.lines.push_back("components: " + std::to_string(ovals.component_count()));
  for (std::size_t c = 0; c < ovals.components.size(); ++c) {
    std::ostringstream line;
    line << "  component " << c << ": " << ovals.components[c].size() << " vertices, area "
         << std::abs(signed_area(ovals.components[c])) << ", depth " << ovals.depth[c];
    report.lines.push_back(line.str());
  }
  if (ovals.is_nested_pair()) {
    report.outcome = Outcome::Pass;
    report.summary = "Pass(2 nested ovals)";
  } else {
    report.outcome = Outcome::Fail;
    report.summary = "Fail(" + std::to_string(ovals.component_count()) + " components" +
                     (ovals.component_count() == 2 ? ", not nested" : "") + ")";
  }
  report.wall_time_ms = clock.elapsed_ms();
  return report;
}

// --- selftest ----------------------------------------------------------------------

struct SelftestCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick end-to-end checks of each command against known outcomes, plus a
/// seeded randomized additivity check of the surgery formula.
inline std::vector<SelftestCase> cmd_selftest(std::uint64_t seed = 1) {
  std::vector<SelftestCase> out;
  const auto run = [&out](std::string name, auto&& fn) {
    SelftestCase c{std::move(name), false, {}};
    try {
      std::tie(c.passed, c.detail) = fn();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(c));
  };
  run("alexander trefoil", [] {
    const auto r = cmd_alexander("torus:2,3");
    return std::pair{pretty(r.polynomial) == "t - 1 + t^-1", pretty(r.polynomial)};
  });
  run("alexander trefoil#trefoil", [] {
    const auto r = cmd_alexander("sum(torus:2,3,torus:2,3)");
    return std::pair{pretty(r.polynomial) == "t^2 - 2t + 3 - 2t^-1 + t^-2", pretty(r.polynomial)};
  });
  run("pi1 d=5 cyclic", [] {
    const auto r = cmd_pi1(5, 1, kDefaultMaxCosets);
    return std::pair{r.summary == "Pass(Z/5)", r.summary};
  });
  run("pi1 d=4 non-abelian", [] {
    const auto r = cmd_pi1(4, 1, kDefaultMaxCosets);
    return std::pair{r.summary == "NonAbelian(Q8)", r.summary};
  });
  run("sw-family T(2,3..7)", [] {
    const auto r = cmd_sw_family(nullptr, 2, torus_family(3), {true, true});
    return std::pair{r.outcome == Outcome::Pass && r.summary == "Pass(counts 5,9,13)", r.summary};
  });
  run("genus d=5", [] {
    const auto g = cmd_genus(5);
    return std::pair{g == 6, std::to_string(g)};
  });
  run("x9 ovals", [] {
    const auto r = cmd_x9(X9Params{});
    return std::pair{r.outcome == Outcome::Pass, r.summary};
  });
  run("surgery additivity (seed " + std::to_string(seed) + ")", [seed] {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> pick(1, 6);
    const auto lattice = HomologyLattice::free(1);
    for (int trial = 0; trial < 10; ++trial) {
      SwPolynomial sw(lattice);
      for (int t = 0; t < 3; ++t) sw.add_term({pick(rng) - 3}, pick(rng) - 3);
      const auto delta = alexander(Knot::torus(2, 2 * pick(rng) + 1));
      const auto twice = fs_surgery(fs_surgery(sw, lattice.basis(0), delta), lattice.basis(0), delta);
      if (!(twice == fs_surgery(sw, lattice.basis(0), delta * delta))) {
        return std::pair{false, "mismatch at trial " + std::to_string(trial)};
      }
    }
    return std::pair{true, std::string("10 trials agree")};
  });
  return out;
}

}  // namespace rimcert
