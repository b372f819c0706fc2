#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rimcert/intmat.hpp"
#include "rimcert/laurent.hpp"

namespace rimcert {

/// Square integer Seifert matrix V of a genus-g surface (2g x 2g).
class SeifertMatrix {
 public:
  SeifertMatrix() = default;
  explicit SeifertMatrix(IntMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw InvalidSeifertMatrix("Seifert matrix must be square");
    if (entries_.rows() % 2 != 0) throw InvalidSeifertMatrix("Seifert matrix size must be even");
  }

  [[nodiscard]] const IntMatrix& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.rows(); }

  /// det(V - V^T); +-1 for the Seifert matrix of a knot.
  [[nodiscard]] Integer intersection_determinant() const {
    IntMatrix form = entries_;
    const IntMatrix t = entries_.transposed();
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) form(i, j) -= t(i, j);
    return determinant(form);
  }

  /// Standard matrix for T(2, 2g+1): -1 on the diagonal, 1 just above it.
  static SeifertMatrix torus_two(std::int64_t q) {
    if (q < 3 || q % 2 == 0) throw InvalidKnot("T(2,q) needs odd q >= 3");
    const auto n = static_cast<std::size_t>(q - 1);
    IntMatrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      v(i, i) = -1;
      if (i + 1 < n) v(i, i + 1) = 1;
    }
    return SeifertMatrix(std::move(v));
  }

  /// Genus-one matrix [[-1, 1], [0, n]] for the n-twist knot.
  static SeifertMatrix twist(std::int64_t n) {
    return SeifertMatrix(IntMatrix::from_rows({{Integer(-1), Integer(1)}, {Integer(0), Integer(n)}}));
  }

  friend bool operator==(const SeifertMatrix&, const SeifertMatrix&) = default;

 private:
  IntMatrix entries_;
};

/// det(V - t V^T) over Z[t, t^-1], not normalized.
inline LaurentPoly seifert_determinant(const SeifertMatrix& v) {
  const auto n = v.size();
  std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n));
  const auto& e = v.entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j].add_term(0, e(i, j));
      m[i][j].add_term(1, -e(j, i));
    }
  return bareiss_determinant<LaurentPoly>(std::move(m), LaurentPoly{}, LaurentPoly::constant(1),
                                          [](const LaurentPoly& a, const LaurentPoly& b) {
                                            return exact_divide(a, b);
                                          });
}

class Knot {
 public:
  struct Unknot {
    friend bool operator==(const Unknot&, const Unknot&) = default;
  };
  struct Torus {
    std::int64_t p = 0;
    std::int64_t q = 0;
    friend bool operator==(const Torus&, const Torus&) = default;
  };
  struct Twist {
    std::int64_t n = 0;
    friend bool operator==(const Twist&, const Twist&) = default;
  };
  struct Seifert {
    SeifertMatrix matrix;
    friend bool operator==(const Seifert&, const Seifert&) = default;
  };
  struct Sum {
    std::shared_ptr<const Knot> left;
    std::shared_ptr<const Knot> right;
    friend bool operator==(const Sum& a, const Sum& b) { return *a.left == *b.left && *a.right == *b.right; }
  };
  using Spec = std::variant<Unknot, Torus, Twist, Seifert, Sum>;

  static Knot unknot() { return Knot(Unknot{}); }

  static Knot torus(std::int64_t p, std::int64_t q) {
    if (p < 2 || q < 2) throw InvalidKnot("torus knot needs p, q >= 2");
    if (std::gcd(p, q) != 1) throw InvalidKnot("torus knot needs gcd(p, q) = 1");
    return Knot(Torus{p, q});
  }

  static Knot twist(std::int64_t n) {
    if (n == 0) throw InvalidKnot("twist knot needs n != 0");
    return Knot(Twist{n});
  }

  static Knot seifert(SeifertMatrix v) { return Knot(Seifert{std::move(v)}); }

  static Knot sum(Knot a, Knot b) {
    return Knot(Sum{std::make_shared<const Knot>(std::move(a)), std::make_shared<const Knot>(std::move(b))});
  }

  [[nodiscard]] const Spec& spec() const noexcept { return spec_; }

  friend bool operator==(const Knot&, const Knot&) = default;

 private:
  explicit Knot(Spec spec) : spec_(std::move(spec)) {}
  Spec spec_;
};

/// CLI knot syntax; round-trips through parse_knot.
inline std::string to_string(const Knot& k) {
  struct Printer {
    std::string operator()(const Knot::Unknot&) const { return "unknot"; }
    std::string operator()(const Knot::Torus& t) const {
      return "torus:" + std::to_string(t.p) + "," + std::to_string(t.q);
    }
    std::string operator()(const Knot::Twist& t) const { return "twist:" + std::to_string(t.n); }
    std::string operator()(const Knot::Seifert& s) const {
      std::string out = "seifert:[";
      const auto& m = s.matrix.entries();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ',';
        out += '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
          if (j) out += ',';
          out += m(i, j).str();
        }
        out += ']';
      }
      return out + "]";
    }
    std::string operator()(const Knot::Sum& s) const {
      return "sum(" + to_string(*s.left) + "," + to_string(*s.right) + ")";
    }
  };
  return std::visit(Printer{}, k.spec());
}

/// Torus-knot Alexander polynomial from the closed form
/// (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)), not normalized.
inline LaurentPoly torus_closed_form(std::int64_t p, std::int64_t q) {
  const auto t_minus_one = [](std::int64_t e) {
    return LaurentPoly::monomial(1, e) - LaurentPoly::constant(1);
  };
  return exact_divide(t_minus_one(checked_mul(p, q)) * t_minus_one(1), t_minus_one(p) * t_minus_one(q));
}

namespace detail {

inline LaurentPoly checked_normal_form(const LaurentPoly& raw, const std::string& what) {
  LaurentPoly out = symmetric_normalize(raw);
  const Integer at_one = eval_at_one(out);
  if (at_one != 1 && at_one != -1) {
    throw InvalidKnot(what + ": Alexander polynomial has |Delta(1)| = " + at_one.str() + " != 1");
  }
  return out;
}

}  // namespace detail

/// Symmetric-normalized Alexander polynomial.
inline LaurentPoly alexander(const Knot& k) {
  struct Visitor {
    LaurentPoly operator()(const Knot::Unknot&) const { return LaurentPoly::constant(1); }
    LaurentPoly operator()(const Knot::Torus& t) const {
      return detail::checked_normal_form(torus_closed_form(t.p, t.q), "torus knot");
    }
    LaurentPoly operator()(const Knot::Twist& t) const {
      return (*this)(Knot::Seifert{SeifertMatrix::twist(t.n)});
    }
    LaurentPoly operator()(const Knot::Seifert& s) const {
      if (s.matrix.size() == 0) return LaurentPoly::constant(1);
      const Integer form_det = s.matrix.intersection_determinant();
      if (form_det != 1 && form_det != -1) {
        throw InvalidSeifertMatrix("det(V - V^T) = " + form_det.str() + ", expected +-1");
      }
      return detail::checked_normal_form(seifert_determinant(s.matrix), "Seifert matrix");
    }
    LaurentPoly operator()(const Knot::Sum& s) const {
      return symmetric_normalize(alexander(*s.left) * alexander(*s.right));
    }
  };
  return std::visit(Visitor{}, k.spec());
}

/// T(2,3), T(2,5), ..., T(2, 2n_max+1); Alexander degree spans 2, 4, ..., 2n_max.
inline std::vector<Knot> torus_family(std::int64_t n_max) {
  if (n_max < 1) throw InvalidKnot("torus_family needs n_max >= 1");
  std::vector<Knot> out;
  std::int64_t previous_span = -1;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    Knot k = Knot::torus(2, 2 * n + 1);
    const auto span = degree_span(alexander(k));
    if (span <= previous_span) throw InvalidKnot("torus family degree spans not strictly increasing");
    previous_span = span;
    out.push_back(std::move(k));
  }
  return out;
}

/// n t - (2n+1) + n t^-1, normalized to a positive top coefficient.
inline LaurentPoly twist_alexander(std::int64_t n) {
  if (n == 0) throw InvalidKnot("twist knot needs n != 0");
  const LaurentPoly raw{{1, Integer(n)}, {0, -Integer(2 * n + 1)}, {-1, Integer(n)}};
  return symmetric_normalize(raw);
}

// --- parsing ------------------------------------------------------------

namespace detail {

class KnotParser {
 public:
  explicit KnotParser(std::string_view text) : text_(text) {}

  Knot parse() {
    Knot k = knot();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input in knot spec", pos_);
    return k;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) throw ParseError("expected '" + std::string(token) + "'", pos_);
  }

  std::int64_t integer() {
    skip_ws();
    const auto start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const auto digits_start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits_start) throw ParseError("expected integer", start);
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      throw ParseError("integer out of range", start);
    }
  }

  Knot knot() {
    skip_ws();
    const auto start = pos_;
    try {
      if (accept("unknot")) return Knot::unknot();
      if (accept("torus:")) {
        const auto p = integer();
        expect(",");
        const auto q = integer();
        return Knot::torus(p, q);
      }
      if (accept("twist:")) return Knot::twist(integer());
      if (accept("seifert:")) return Knot::seifert(SeifertMatrix(matrix()));
      if (accept("sum(")) {
        Knot a = knot();
        expect(",");
        Knot b = knot();
        expect(")");
        return Knot::sum(std::move(a), std::move(b));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), start);
    }
    throw ParseError("unknown knot kind", start);
  }

  IntMatrix matrix() {
    std::vector<IntVector> rows;
    expect("[");
    if (!accept("]")) {
      do {
        IntVector row;
        expect("[");
        do {
          row.emplace_back(integer());
        } while (accept(","));
        expect("]");
        rows.push_back(std::move(row));
      } while (accept(","));
      expect("]");
    }
    const auto at = pos_;
    try {
      return IntMatrix::from_rows(rows);
    } catch (const DimensionMismatch& e) {
      throw ParseError(e.what(), at);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Knot parse_knot(std::string_view text) { return detail::KnotParser(text).parse(); }

}  // namespace rimcert
