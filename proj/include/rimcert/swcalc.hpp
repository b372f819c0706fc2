#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rimcert/intmat.hpp"
#include "rimcert/knots.hpp"
#include "rimcert/laurent.hpp"

namespace rimcert {

/// A homology class, stored as its canonical representative in some lattice.
/// Construct through HomologyLattice::make_class.
struct HClass {
  std::vector<std::int64_t> coords;

  friend auto operator<=>(const HClass&, const HClass&) = default;
  friend bool operator==(const HClass&, const HClass&) = default;
};

/// Z^rank modulo the integer span of `relations`.
class HomologyLattice {
 public:
  using Vector = std::vector<std::int64_t>;

  explicit HomologyLattice(std::size_t rank, std::vector<Vector> relations = {})
      : rank_(rank), relations_(std::move(relations)) {
    if (rank_ < 1) throw PreconditionViolation("lattice rank must be >= 1");
    std::vector<IntVector> wide;
    for (const auto& r : relations_) {
      if (r.size() != rank_) throw DimensionMismatch("relation length differs from lattice rank");
      wide.emplace_back(r.begin(), r.end());
    }
    const HermiteBasis basis = hermite_basis(wide, rank_);
    pivots_ = basis.pivot_cols;
    for (const auto& row : basis.rows) {
      Vector narrow;
      for (const auto& x : row) narrow.push_back(to_int64(x));
      hermite_.push_back(std::move(narrow));
    }
    wide_relations_ = std::move(wide);
  }

  static HomologyLattice free(std::size_t rank) { return HomologyLattice(rank); }

  /// Z^d / (e_1 + ... + e_d): the lattice spanned by the lifted tori.
  static HomologyLattice cyclic_cover(std::size_t d) {
    return HomologyLattice(d, {Vector(d, 1)});
  }

  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] const std::vector<Vector>& relations() const noexcept { return relations_; }
  [[nodiscard]] const std::vector<Vector>& hermite_rows() const noexcept { return hermite_; }

  [[nodiscard]] HClass make_class(Vector v) const {
    if (v.size() != rank_) throw DimensionMismatch("class length differs from lattice rank");
    for (std::size_t k = 0; k < hermite_.size(); ++k) {
      const auto pc = pivots_[k];
      const auto p = hermite_[k][pc];
      auto q = v[pc] / p;
      if (v[pc] - q * p < 0) --q;
      if (q == 0) continue;
      for (std::size_t c = pc; c < rank_; ++c) v[c] = checked_add(v[c], -checked_mul(q, hermite_[k][c]));
    }
    return HClass{std::move(v)};
  }

  [[nodiscard]] HClass zero() const { return HClass{Vector(rank_, 0)}; }

  [[nodiscard]] HClass basis(std::size_t i) const {
    Vector v(rank_, 0);
    v.at(i) = 1;
    return make_class(std::move(v));
  }

  /// a + factor * b, canonicalized.
  [[nodiscard]] HClass add_multiple(const HClass& a, const HClass& b, std::int64_t factor) const {
    Vector v = a.coords;
    for (std::size_t i = 0; i < rank_; ++i) v[i] = checked_add(v[i], checked_mul(factor, b.coords[i]));
    return make_class(std::move(v));
  }

  [[nodiscard]] HClass negate(const HClass& a) const { return add_multiple(zero(), a, -1); }

  /// No positive multiple of c vanishes, i.e. c is outside the rational
  /// span of the relations.
  [[nodiscard]] bool has_infinite_order(const HClass& c) const {
    if (c.coords.size() != rank_) throw DimensionMismatch("class length differs from lattice rank");
    return !in_rational_span(wide_relations_, IntVector(c.coords.begin(), c.coords.end()));
  }

  /// Same quotient group presented the same way up to relation span.
  friend bool operator==(const HomologyLattice& a, const HomologyLattice& b) {
    return a.rank_ == b.rank_ && a.hermite_ == b.hermite_;
  }

 private:
  std::size_t rank_;
  std::vector<Vector> relations_;
  std::vector<IntVector> wide_relations_;
  std::vector<Vector> hermite_;
  std::vector<std::size_t> pivots_;
};

inline bool has_infinite_order(const HomologyLattice& lattice, const HClass& c) {
  return lattice.has_infinite_order(c);
}

/// Formal SW invariant: finitely supported integer function on a lattice.
class SwPolynomial {
 public:
  using Terms = std::map<HClass, Integer>;

  explicit SwPolynomial(std::shared_ptr<const HomologyLattice> lattice) : lattice_(std::move(lattice)) {}
  explicit SwPolynomial(const HomologyLattice& lattice)
      : lattice_(std::make_shared<const HomologyLattice>(lattice)) {}

  /// The preset single-basic-class invariant {0 -> 1}.
  static SwPolynomial k3_like(const HomologyLattice& lattice) {
    SwPolynomial sw(lattice);
    sw.add_term(lattice.zero().coords, 1);
    return sw;
  }

  [[nodiscard]] const HomologyLattice& lattice() const noexcept { return *lattice_; }
  [[nodiscard]] const std::shared_ptr<const HomologyLattice>& lattice_ptr() const noexcept { return lattice_; }
  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c at the class of `raw` (canonicalized first).
  void add_term(const HomologyLattice::Vector& raw, const Integer& c) {
    add_canonical(lattice_->make_class(raw), c);
  }

  void add_canonical(const HClass& cls, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(cls, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Invariant under c -> -c.
  [[nodiscard]] bool is_conjugation_symmetric() const {
    for (const auto& [cls, c] : terms_) {
      auto it = terms_.find(lattice_->negate(cls));
      if (it == terms_.end() || it->second != c) return false;
    }
    return true;
  }

  friend bool operator==(const SwPolynomial& a, const SwPolynomial& b) {
    return *a.lattice_ == *b.lattice_ && a.terms_ == b.terms_;
  }

 private:
  std::shared_ptr<const HomologyLattice> lattice_;
  Terms terms_;
};

/// sw * delta(t) with t^n -> 2n[torus].
inline SwPolynomial fs_surgery(const SwPolynomial& sw, const HClass& torus, const LaurentPoly& delta) {
  const auto& lattice = sw.lattice();
  const HClass t = lattice.make_class(torus.coords);
  if (!lattice.has_infinite_order(t)) {
    throw TorsionTorusClass("torus class has finite order; the product formula does not apply");
  }
  if (delta.is_zero()) throw PreconditionViolation("surgery polynomial must be nonzero");
  try {
    if (symmetric_normalize(delta) != delta) {
      throw PreconditionViolation("surgery polynomial must be symmetric-normalized");
    }
  } catch (const NotSymmetrizable&) {
    throw PreconditionViolation("surgery polynomial must be symmetric-normalized");
  }
  SwPolynomial out(sw.lattice_ptr());
  for (const auto& [n, c] : delta.terms()) {
    const auto shift = checked_mul(2, n);
    for (const auto& [cls, a] : sw.terms()) out.add_canonical(lattice.add_multiple(cls, t, shift), a * c);
  }
  return out;
}

inline SwPolynomial multi_torus_surgery(const SwPolynomial& sw, const std::vector<HClass>& tori,
                                        const LaurentPoly& delta) {
  if (tori.empty()) throw PreconditionViolation("multi_torus_surgery needs at least one torus");
  for (const auto& t : tori) {
    if (!sw.lattice().has_infinite_order(sw.lattice().make_class(t.coords))) {
      throw TorsionTorusClass("torus class has finite order; the product formula does not apply");
    }
  }
  SwPolynomial out = sw;
  for (const auto& t : tori) out = fs_surgery(out, t, delta);
  return out;
}

inline std::set<HClass> basic_classes(const SwPolynomial& sw) {
  std::set<HClass> out;
  for (const auto& [cls, c] : sw.terms()) out.insert(cls);
  return out;
}

struct DistinctnessEntry {
  std::string knot;
  LaurentPoly delta;
  SwPolynomial sw;
  std::size_t basic_class_count = 0;
};

struct DistinctnessCertificate {
  HomologyLattice lattice;
  std::vector<HClass> tori;
  SwPolynomial base;
  bool doubled = true;
  std::vector<DistinctnessEntry> entries;
  std::vector<std::vector<bool>> pairwise_distinct;
  std::vector<std::vector<bool>> count_distinct;
  bool pass = false;
  bool counts_all_distinct = false;
  bool base_conjugation_symmetric = false;
};

struct FamilyOptions {
  /// Apply alexander(K # K) (the rim-surgery doubling); false uses K itself.
  bool double_knot = true;
};

inline DistinctnessCertificate certify_family_distinct(const SwPolynomial& sw0, const std::vector<HClass>& tori,
                                                       const std::vector<Knot>& knots, FamilyOptions options = {}) {
  if (sw0.is_zero()) throw PreconditionViolation("base SW invariant must be nonzero");
  DistinctnessCertificate cert{sw0.lattice(), {}, sw0, options.double_knot, {}, {}, {}, false, false,
                               sw0.is_conjugation_symmetric()};
  for (const auto& t : tori) cert.tori.push_back(sw0.lattice().make_class(t.coords));

  for (const auto& k : knots) {
    const Knot applied = options.double_knot ? Knot::sum(k, k) : k;
    LaurentPoly delta = alexander(applied);
    SwPolynomial sw = multi_torus_surgery(sw0, cert.tori, delta);
    const auto count = sw.terms().size();
    cert.entries.push_back({to_string(k), std::move(delta), std::move(sw), count});
  }

  const auto n = cert.entries.size();
  cert.pairwise_distinct.assign(n, std::vector<bool>(n, false));
  cert.count_distinct.assign(n, std::vector<bool>(n, false));
  cert.pass = true;
  cert.counts_all_distinct = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool differ = !(cert.entries[i].sw == cert.entries[j].sw);
      const bool counts = cert.entries[i].basic_class_count != cert.entries[j].basic_class_count;
      cert.pairwise_distinct[i][j] = differ;
      cert.count_distinct[i][j] = counts;
      if (!differ) cert.pass = false;
      if (!counts) cert.counts_all_distinct = false;
    }
  return cert;
}

// --- JSON ------------------------------------------------------------------

inline nlohmann::json to_json(const HomologyLattice& lattice) {
  return {{"rank", lattice.rank()}, {"relations", lattice.relations()}};
}

inline nlohmann::json to_json(const SwPolynomial& sw) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [cls, c] : sw.terms()) terms.push_back({{"class", cls.coords}, {"coeff", integer_to_json(c)}});
  return terms;
}

/// Accepts either an array of {"class": [...], "coeff": c} or an object with
/// such an array under "terms".
inline SwPolynomial sw_from_json(const nlohmann::json& j, const HomologyLattice& lattice) {
  const nlohmann::json& terms = j.is_object() && j.contains("terms") ? j.at("terms") : j;
  if (!terms.is_array()) throw ParseError("SW invariant JSON must be an array of terms", 0);
  SwPolynomial sw(lattice);
  for (const auto& term : terms) {
    if (!term.is_object() || !term.contains("class") || !term.contains("coeff")) {
      throw ParseError("SW term needs 'class' and 'coeff'", 0);
    }
    HomologyLattice::Vector v;
    try {
      v = term.at("class").get<HomologyLattice::Vector>();
    } catch (const nlohmann::json::exception&) {
      throw ParseError("SW term class must be an integer array", 0);
    }
    sw.add_term(v, integer_from_json(term.at("coeff")));
  }
  return sw;
}

inline nlohmann::json to_json(const DistinctnessCertificate& cert) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : cert.entries) {
    entries.push_back({{"knot", e.knot},
                       {"delta", pretty(e.delta)},
                       {"sw_terms", to_json(e.sw)},
                       {"basic_class_count", e.basic_class_count}});
  }
  nlohmann::json tori = nlohmann::json::array();
  for (const auto& t : cert.tori) tori.push_back(t.coords);
  return {{"lattice", to_json(cert.lattice)},
          {"tori", tori},
          {"base_sw", to_json(cert.base)},
          {"doubled_knot", cert.doubled},
          {"assumptions",
           {{"alexander_normalization", "symmetric, positive top coefficient"},
            {"base_sw_conjugation_symmetric", cert.base_conjugation_symmetric}}},
          {"entries", entries},
          {"pairwise_distinct", cert.pairwise_distinct},
          {"pairwise_count_distinct", cert.count_distinct},
          {"counts_all_distinct", cert.counts_all_distinct},
          {"verdict", cert.pass ? "pass" : "fail"}};
}

}  // namespace rimcert
