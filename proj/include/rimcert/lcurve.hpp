#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "rimcert/fpgroups.hpp"

namespace rimcert {

// --- maximal nest presentations ----------------------------------------------

/// Maximal nest of k = floor(d/2) ovals O_1 inside ... inside O_k. Region 0
/// is the disk inside O_1, region i (1 <= i < k) the annulus between O_i and
/// O_(i+1), region k the outside of O_k.
struct NestConfig {
  std::int64_t degree = 0;
  std::int64_t membrane_index = 1;
  std::set<std::int64_t> punctured;

  [[nodiscard]] std::int64_t ovals() const noexcept { return degree / 2; }

  void validate() const {
    if (degree < 2) throw InvalidConfig("nest degree must be >= 2");
    const auto k = ovals();
    if (k - 1 < 1) {
      throw InvalidConfig("degree " + std::to_string(degree) + " leaves no membrane index in [1, k-1]");
    }
    if (membrane_index < 1 || membrane_index > k - 1) {
      throw InvalidConfig("membrane index " + std::to_string(membrane_index) + " outside [1, " +
                          std::to_string(k - 1) + "]");
    }
    for (auto i : punctured) {
      if (i < 0 || i > k) throw InvalidConfig("punctured region " + std::to_string(i) + " outside [0, k]");
      if (i == membrane_index) throw InvalidConfig("the membrane region cannot be punctured");
    }
  }

  /// Every region except the membrane punctured.
  static NestConfig maximal(std::int64_t degree, std::int64_t membrane_index = 1) {
    NestConfig c{degree, membrane_index, {}};
    for (std::int64_t i = 0; i <= degree / 2; ++i)
      if (i != membrane_index) c.punctured.insert(i);
    c.validate();
    return c;
  }
};

/// How a big circle dual to a point of region R_i splits the 2d lifted
/// vertices: one hemisphere holds `first_component` vertices of the a-side
/// component and `second_component` of the b-side one.
struct GeneticNestModel {
  std::int64_t degree = 0;
  std::int64_t first_component = 0;
  std::int64_t second_component = 0;

  /// The other hemisphere sees the complementary counts.
  [[nodiscard]] GeneticNestModel opposite() const {
    return {degree, degree - first_component, degree - second_component};
  }

  /// Loop around the hemisphere boundary: a^first b^second.
  [[nodiscard]] Word relation() const {
    return Word::power(0, first_component) * Word::power(1, second_component);
  }
};

inline GeneticNestModel genetic_nest_model(std::int64_t d, std::int64_t i) {
  if (i < 0 || i > d) throw InvalidConfig("hemisphere index must lie in [0, d]");
  return {d, i, d - i};
}

/// Relators from puncturing R_i: a^i b^(d-i) and a^(d-i) b^i, deduplicated
/// when they coincide.
inline std::vector<Word> hemisphere_relation(std::int64_t d, std::int64_t i) {
  const auto model = genetic_nest_model(d, i);
  std::vector<Word> out{model.relation()};
  Word other = model.opposite().relation();
  if (other != out.front()) out.push_back(std::move(other));
  return out;
}

/// <a, b | a^d b^d, a^(d-i) b^i, b^(d-i) a^i for i punctured>.
inline Presentation nest_presentation(const NestConfig& c) {
  c.validate();
  const auto d = c.degree;
  std::vector<Word> rels{Word::power(0, d) * Word::power(1, d)};
  for (auto i : c.punctured) {
    rels.push_back(Word::power(0, d - i) * Word::power(1, i));
    rels.push_back(Word::power(1, d - i) * Word::power(0, i));
  }
  return Presentation(2, std::move(rels));
}

// --- Nori condition ----------------------------------------------------------

enum class Singularity { X9, Node, Cusp, Tacnode, Other };

inline Singularity parse_singularity(const std::string& tag) {
  std::string lower;
  for (char c : tag) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "x9") return Singularity::X9;
  if (lower == "node" || lower == "a1") return Singularity::Node;
  if (lower == "cusp" || lower == "a2") return Singularity::Cusp;
  if (lower == "tacnode" || lower == "a3") return Singularity::Tacnode;
  return Singularity::Other;
}

/// True iff the only singularity is a single X9 and A.A > 16.
inline bool nori_abelian_guaranteed(std::int64_t self_intersection, const std::vector<Singularity>& singularities) {
  return singularities.size() == 1 && singularities.front() == Singularity::X9 && self_intersection > 16;
}

// --- X9 perturbation ovals -----------------------------------------------------

struct Point2 {
  double x = 0;
  double y = 0;
};

struct Window {
  double xmin = 0;
  double xmax = 0;
  double ymin = 0;
  double ymax = 0;

  /// Square of half-width 3 sqrt(eps) around the origin; holds both ovals.
  static Window around_origin(double epsilon) {
    const double r = 3.0 * std::sqrt(epsilon);
    return {-r, r, -r, r};
  }
};

struct X9Params {
  double epsilon = 0.01;
  double delta = 1e-7;
  Window window = Window::around_origin(0.01);
  int resolution = 512;
};

/// delta must not exceed this multiple of epsilon^2.
inline constexpr double kDeltaOverEpsilonSquaredMax = 0.01;
inline constexpr int kMinResolution = 64;
inline constexpr int kDegenerateRetries = 3;

struct OvalReport {
  X9Params params;
  double grid_shift = 0;  // fraction of a cell the grid was offset by
  std::vector<std::vector<Point2>> components;
  /// (outer, inner) index pairs with inner strictly inside outer.
  std::vector<std::pair<std::size_t, std::size_t>> nesting;
  std::vector<std::size_t> depth;

  [[nodiscard]] std::size_t component_count() const noexcept { return components.size(); }

  [[nodiscard]] bool is_nested_pair() const {
    return components.size() == 2 && nesting.size() == 1;
  }
};

/// (x^2 + y^2 - 4 eps)(x^2 + 2 y^2 - eps) - delta
inline double x9_perturbation(double x, double y, double epsilon, double delta) {
  return (x * x + y * y - 4.0 * epsilon) * (x * x + 2.0 * y * y - epsilon) - delta;
}

inline double signed_area(const std::vector<Point2>& poly) {
  double a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return a / 2;
}

/// Even-odd ray cast towards +x.
inline bool point_in_polygon(const Point2& pt, const std::vector<Point2>& poly) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y > pt.y) != (b.y > pt.y)) {
      const double x_cross = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (pt.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

namespace detail {

struct NodeTouch {};

class LevelSetTracer {
 public:
  LevelSetTracer(const X9Params& p, double shift) : p_(p), n_(p.resolution) {
    h_ = (p.window.xmax - p.window.xmin) / n_;
    x0_ = p.window.xmin + shift * h_;
    y0_ = p.window.ymin + shift * h_;
    values_.resize(static_cast<std::size_t>((n_ + 1) * (n_ + 1)));
    for (int j = 0; j <= n_; ++j)
      for (int i = 0; i <= n_; ++i) {
        const double v = x9_perturbation(x(i), y(j), p.epsilon, p.delta);
        if (v == 0.0) throw NodeTouch{};
        value(i, j) = v;
      }
  }

  std::vector<std::vector<Point2>> trace() {
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i) cell(i, j);

    std::vector<std::int64_t> ids;
    for (const auto& [id, nb] : adjacency_) {
      if (nb.count != 2) {
        throw ResolutionTooCoarse("level-set chain does not close inside the window at resolution " +
                                  std::to_string(n_));
      }
      ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    std::unordered_map<std::int64_t, bool> visited;
    std::vector<std::vector<Point2>> out;
    for (auto start : ids) {
      if (visited[start]) continue;
      std::vector<Point2> chain;
      std::int64_t prev = -1;
      std::int64_t cur = start;
      while (!visited[cur]) {
        visited[cur] = true;
        chain.push_back(crossing(cur));
        const auto& nb = adjacency_.at(cur);
        const auto next = nb.ids[0] != prev ? nb.ids[0] : nb.ids[1];
        prev = cur;
        cur = next;
      }
      if (cur != start || chain.size() < 3) {
        throw ResolutionTooCoarse("level-set component failed to close at resolution " + std::to_string(n_));
      }
      out.push_back(std::move(chain));
    }
    return out;
  }

 private:
  struct Neighbours {
    std::int64_t ids[2] = {-1, -1};
    int count = 0;
  };

  [[nodiscard]] double x(int i) const { return x0_ + i * h_; }
  [[nodiscard]] double y(int j) const { return y0_ + j * h_; }
  double& value(int i, int j) { return values_[static_cast<std::size_t>(j * (n_ + 1) + i)]; }

  // Horizontal edge (i,j)-(i+1,j) and vertical edge (i,j)-(i,j+1).
  [[nodiscard]] std::int64_t h_edge(int i, int j) const { return static_cast<std::int64_t>(j) * n_ + i; }
  [[nodiscard]] std::int64_t v_edge(int i, int j) const {
    return static_cast<std::int64_t>(n_ + 1) * n_ + static_cast<std::int64_t>(j) * (n_ + 1) + i;
  }

  Point2 crossing(std::int64_t id) {
    const std::int64_t horizontal = static_cast<std::int64_t>(n_ + 1) * n_;
    int i0, j0, i1, j1;
    if (id < horizontal) {
      j0 = j1 = static_cast<int>(id / n_);
      i0 = static_cast<int>(id % n_);
      i1 = i0 + 1;
    } else {
      const auto r = id - horizontal;
      j0 = static_cast<int>(r / (n_ + 1));
      i0 = i1 = static_cast<int>(r % (n_ + 1));
      j1 = j0 + 1;
    }
    const double f0 = value(i0, j0);
    const double f1 = value(i1, j1);
    const double t = f0 / (f0 - f1);
    return {x(i0) + t * (x(i1) - x(i0)), y(j0) + t * (y(j1) - y(j0))};
  }

  void link(std::int64_t a, std::int64_t b) {
    for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
      auto& nb = adjacency_[from];
      if (nb.count == 2) throw ResolutionTooCoarse("edge crossed by more than two segments");
      nb.ids[nb.count++] = to;
    }
  }

  void cell(int i, int j) {
    const bool s0 = value(i, j) > 0;
    const bool s1 = value(i + 1, j) > 0;
    const bool s2 = value(i + 1, j + 1) > 0;
    const bool s3 = value(i, j + 1) > 0;
    const std::int64_t bottom = h_edge(i, j);
    const std::int64_t right = v_edge(i + 1, j);
    const std::int64_t top = h_edge(i, j + 1);
    const std::int64_t left = v_edge(i, j);

    std::vector<std::int64_t> cut;
    if (s0 != s1) cut.push_back(bottom);
    if (s1 != s2) cut.push_back(right);
    if (s2 != s3) cut.push_back(top);
    if (s3 != s0) cut.push_back(left);
    if (cut.empty()) return;
    if (cut.size() == 2) {
      link(cut[0], cut[1]);
      return;
    }
    // Saddle: the centre sample decides which diagonal pair is joined.
    const double centre = x9_perturbation(x(i) + h_ / 2, y(j) + h_ / 2, p_.epsilon, p_.delta);
    if ((centre > 0) == s0) {
      link(bottom, right);
      link(top, left);
    } else {
      link(left, bottom);
      link(right, top);
    }
  }

  X9Params p_;
  int n_;
  double h_ = 0;
  double x0_ = 0;
  double y0_ = 0;
  std::vector<double> values_;
  std::unordered_map<std::int64_t, Neighbours> adjacency_;
};

}  // namespace detail

/// Zero set of the X9 perturbation on a square window, traced by
/// marching squares into closed polylines, sorted by decreasing area, with
/// the containment order between them.
inline OvalReport x9_ovals(const X9Params& params) {
  if (!(params.epsilon > 0) || !(params.epsilon < 1)) throw PreconditionViolation("epsilon must lie in (0, 1)");
  if (!(params.delta > 0)) throw PreconditionViolation("delta must be positive");
  if (params.delta > kDeltaOverEpsilonSquaredMax * params.epsilon * params.epsilon) {
    throw PreconditionViolation("delta must not exceed epsilon^2 / 100");
  }
  const auto& w = params.window;
  const double wx = w.xmax - w.xmin;
  const double wy = w.ymax - w.ymin;
  if (!(wx > 0) || !(wy > 0) || std::abs(wx - wy) > 1e-12 * std::max(wx, wy)) {
    throw PreconditionViolation("window must be a nondegenerate square");
  }
  if (params.resolution < kMinResolution) {
    throw ResolutionTooCoarse("resolution " + std::to_string(params.resolution) + " below minimum " +
                              std::to_string(kMinResolution));
  }

  OvalReport report;
  report.params = params;
  for (int attempt = 0;; ++attempt) {
    // Irrational-ish offsets keep retried grids off the curve's nodes.
    const double shift = attempt == 0 ? 0.0 : 0.1234567 * attempt;
    try {
      detail::LevelSetTracer tracer(params, shift);
      report.components = tracer.trace();
      report.grid_shift = shift;
      break;
    } catch (const detail::NodeTouch&) {
      if (attempt == kDegenerateRetries) {
        throw DegenerateLevelSet("zero set passes through grid nodes after " +
                                 std::to_string(kDegenerateRetries) + " perturbed retries");
      }
    }
  }

  auto& comps = report.components;
  std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return std::abs(signed_area(a)) > std::abs(signed_area(b));
  });
  report.depth.assign(comps.size(), 0);
  for (std::size_t outer = 0; outer < comps.size(); ++outer)
    for (std::size_t inner = 0; inner < comps.size(); ++inner) {
      if (outer == inner) continue;
      if (point_in_polygon(comps[inner].front(), comps[outer])) {
        report.nesting.emplace_back(outer, inner);
        ++report.depth[inner];
      }
    }
  return report;
}

inline nlohmann::json to_json(const OvalReport& r) {
  nlohmann::json comps = nlohmann::json::array();
  for (std::size_t c = 0; c < r.components.size(); ++c) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : r.components[c]) pts.push_back({p.x, p.y});
    comps.push_back({{"depth", r.depth[c]},
                     {"vertex_count", r.components[c].size()},
                     {"area", std::abs(signed_area(r.components[c]))},
                     {"points", pts}});
  }
  nlohmann::json nesting = nlohmann::json::array();
  for (const auto& [o, i] : r.nesting) nesting.push_back({{"outer", o}, {"inner", i}});
  const auto& w = r.params.window;
  return {{"epsilon", r.params.epsilon},
          {"delta", r.params.delta},
          {"delta_over_epsilon_squared_max", kDeltaOverEpsilonSquaredMax},
          {"window", {w.xmin, w.xmax, w.ymin, w.ymax}},
          {"resolution", r.params.resolution},
          {"grid_shift", r.grid_shift},
          {"component_count", r.component_count()},
          {"nested_pair", r.is_nested_pair()},
          {"nesting", nesting},
          {"components", comps}};
}

inline std::string to_svg(const OvalReport& r, int pixels = 512) {
  const auto& w = r.params.window;
  const double scale = pixels / (w.xmax - w.xmin);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels << "\" height=\"" << pixels
      << "\" viewBox=\"0 0 " << pixels << ' ' << pixels << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t c = 0; c < r.components.size(); ++c) {
    out << "<polygon fill=\"none\" stroke=\"" << (r.depth[c] % 2 ? "#c0392b" : "#2c3e50")
        << "\" stroke-width=\"1\" points=\"";
    for (const auto& p : r.components[c]) {
      out << (p.x - w.xmin) * scale << ',' << (w.ymax - p.y) * scale << ' ';
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace rimcert
