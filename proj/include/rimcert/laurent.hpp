#pragma once

#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "rimcert/integer.hpp"

namespace rimcert {

/// Integer Laurent polynomial in one variable t. Zero coefficients are never
/// stored, so equality is structural.
class LaurentPoly {
 public:
  using Exponent = std::int64_t;
  using Terms = std::map<Exponent, Integer>;

  LaurentPoly() = default;

  LaurentPoly(std::initializer_list<std::pair<const Exponent, Integer>> terms) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  explicit LaurentPoly(const Terms& terms) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static LaurentPoly constant(const Integer& c) { return monomial(c, 0); }

  static LaurentPoly monomial(const Integer& c, Exponent e) {
    LaurentPoly p;
    p.add_term(e, c);
    return p;
  }

  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t term_count() const noexcept { return terms_.size(); }

  [[nodiscard]] Integer coefficient(Exponent e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  [[nodiscard]] Exponent min_exponent() const {
    require_nonzero("min_exponent");
    return terms_.begin()->first;
  }

  [[nodiscard]] Exponent max_exponent() const {
    require_nonzero("max_exponent");
    return terms_.rbegin()->first;
  }

  void add_term(Exponent e, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& q) {
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& q) {
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly p, const LaurentPoly& q) { return p += q; }
  friend LaurentPoly operator-(LaurentPoly p, const LaurentPoly& q) { return p -= q; }

  friend LaurentPoly operator-(const LaurentPoly& p) {
    LaurentPoly out;
    for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
    LaurentPoly out;
    for (const auto& [e1, c1] : p.terms_) {
      for (const auto& [e2, c2] : q.terms_) out.add_term(checked_add(e1, e2), c1 * c2);
    }
    return out;
  }

  LaurentPoly& operator*=(const LaurentPoly& q) { return *this = *this * q; }

  /// Multiplies by the unit t^k.
  [[nodiscard]] LaurentPoly shifted(Exponent k) const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(checked_add(e, k), c);
    return out;
  }

  /// p(t^-1)
  [[nodiscard]] LaurentPoly mirrored() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
  }

  [[nodiscard]] bool is_palindromic() const { return *this == mirrored(); }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  void require_nonzero(const char* op) const {
    if (terms_.empty()) throw ZeroPolynomial(std::string(op) + " of the zero polynomial");
  }

  Terms terms_;
};

inline LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
inline LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

inline Integer eval_at_one(const LaurentPoly& p) {
  Integer sum = 0;
  for (const auto& [e, c] : p.terms()) sum += c;
  return sum;
}

inline std::int64_t degree_span(const LaurentPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("degree_span of the zero polynomial");
  return p.max_exponent() - p.min_exponent();
}

/// The unique unit multiple +-t^k of p that is palindromic with a positive
/// top coefficient.
inline LaurentPoly symmetric_normalize(const LaurentPoly& p) {
  if (p.is_zero()) throw NotSymmetrizable("the zero polynomial has no symmetric normal form");
  const auto lo = p.min_exponent();
  const auto hi = p.max_exponent();
  if ((hi - lo) % 2 != 0) {
    throw NotSymmetrizable("odd exponent span " + std::to_string(hi - lo) + " cannot be centered");
  }
  LaurentPoly centered = p.shifted(-(lo + hi) / 2);
  if (!centered.is_palindromic()) {
    throw NotSymmetrizable("no unit multiple is palindromic");
  }
  if (centered.terms().rbegin()->second < 0) centered = -centered;
  return centered;
}

/// Exact quotient p / q in Z[t, t^-1]; throws InexactDivision otherwise.
inline LaurentPoly exact_divide(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  if (p.is_zero()) return {};
  // Clear the t-adic valuations; the divisor then has a nonzero constant term,
  // so Laurent divisibility reduces to ordinary polynomial divisibility.
  LaurentPoly rem = p.shifted(-p.min_exponent());
  const LaurentPoly divisor = q.shifted(-q.min_exponent());
  const auto dtop = divisor.max_exponent();
  const Integer& lead = divisor.terms().rbegin()->second;
  LaurentPoly quotient;
  while (!rem.is_zero() && rem.max_exponent() >= dtop) {
    const auto e = rem.max_exponent() - dtop;
    const Integer& top = rem.terms().rbegin()->second;
    if (top % lead != 0) throw InexactDivision("leading coefficient does not divide");
    const Integer factor = top / lead;
    quotient.add_term(e, factor);
    rem -= LaurentPoly::monomial(factor, e) * divisor;
  }
  if (!rem.is_zero()) throw InexactDivision("nonzero remainder");
  return quotient.shifted(p.min_exponent() - q.min_exponent());
}

// --- text forms ------------------------------------------------------------

/// Serialization form: ascending exponents, every term written as c*t^e,
/// e.g. "1*t^-1 + -1*t^0 + 1*t^1". The zero polynomial is "0".
inline std::string serialize(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) out << " + ";
    first = false;
    out << c.str() << "*t^" << e;
  }
  return out.str();
}

/// Human form with descending exponents, e.g. "t^2 - 2t + 3 - 2t^-1 + t^-2".
inline std::string pretty(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto e = it->first;
    const Integer& c = it->second;
    const Integer mag = c < 0 ? Integer(-c) : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << mag.str();
      continue;
    }
    if (mag != 1) out << mag.str();
    out << 't';
    if (e != 1) out << '^' << e;
  }
  return out.str();
}

/// Parses both the serialization and the human form.
inline LaurentPoly parse_laurent(std::string_view text) {
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  const auto read_digits = [&]() -> std::string {
    const auto start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  };

  LaurentPoly out;
  skip_ws();
  if (pos == text.size()) throw ParseError("empty polynomial", pos);
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    int sign = 1;
    if (!first) {
      if (text[pos] == '+') {
        ++pos;
      } else if (text[pos] == '-') {
        sign = -1;
        ++pos;
      } else {
        throw ParseError("expected '+' or '-'", pos);
      }
      skip_ws();
    }
    first = false;
    while (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      if (text[pos] == '-') sign = -sign;
      ++pos;
      skip_ws();
    }
    Integer coeff = 1;
    bool have_coeff = false;
    if (const auto digits = read_digits(); !digits.empty()) {
      coeff = Integer(digits);
      have_coeff = true;
    }
    skip_ws();
    if (pos < text.size() && text[pos] == '*') {
      if (!have_coeff) throw ParseError("'*' without coefficient", pos);
      ++pos;
      skip_ws();
      if (pos == text.size() || text[pos] != 't') throw ParseError("expected 't' after '*'", pos);
    }
    LaurentPoly::Exponent exponent = 0;
    if (pos < text.size() && text[pos] == 't') {
      ++pos;
      exponent = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        int esign = 1;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
          if (text[pos] == '-') esign = -1;
          ++pos;
        }
        const auto start = pos;
        const auto digits = read_digits();
        if (digits.empty()) throw ParseError("expected exponent", start);
        try {
          exponent = esign * std::stoll(digits);
        } catch (const std::out_of_range&) {
          throw ParseError("exponent out of range", start);
        }
      }
    } else if (!have_coeff) {
      throw ParseError("expected a term", pos);
    }
    out.add_term(exponent, sign * coeff);
  }
  return out;
}

inline nlohmann::json to_json(const LaurentPoly& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [e, c] : p.terms()) j[std::to_string(e)] = integer_to_json(c);
  return j;
}

inline LaurentPoly laurent_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("Laurent polynomial JSON must be an object", 0);
  LaurentPoly out;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    LaurentPoly::Exponent e = 0;
    try {
      e = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) throw ParseError("bad exponent key '" + key + "'", 0);
    out.add_term(e, integer_from_json(value));
  }
  return out;
}

}  // namespace rimcert
