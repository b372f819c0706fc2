#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rimcert/intmat.hpp"

namespace rimcert {

struct Letter {
  std::uint32_t generator = 0;
  std::int8_t exponent = 1;  // +1 or -1

  [[nodiscard]] Letter inverse() const { return {generator, static_cast<std::int8_t>(-exponent)}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the generators and their inverses.
class Word {
 public:
  Word() = default;

  explicit Word(const std::vector<Letter>& letters) {
    for (const auto& l : letters) push_back(l);
  }

  /// g^k
  static Word power(std::uint32_t generator, std::int64_t k) {
    Word w;
    const Letter l{generator, static_cast<std::int8_t>(k < 0 ? -1 : 1)};
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) w.push_back(l);
    return w;
  }

  [[nodiscard]] const std::vector<Letter>& letters() const noexcept { return letters_; }
  [[nodiscard]] std::size_t length() const noexcept { return letters_.size(); }
  [[nodiscard]] bool empty() const noexcept { return letters_.empty(); }

  void push_back(Letter l) {
    if (l.exponent != 1 && l.exponent != -1) throw PreconditionViolation("letter exponent must be +-1");
    if (!letters_.empty() && letters_.back() == l.inverse()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  Word& operator*=(const Word& other) {
    for (const auto& l : other.letters_) push_back(l);
    return *this;
  }
  friend Word operator*(Word a, const Word& b) { return a *= b; }

  [[nodiscard]] Word inverse() const {
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  /// Exponent sum of each generator.
  [[nodiscard]] std::vector<std::int64_t> exponent_sums(std::size_t n_generators) const {
    std::vector<std::int64_t> out(n_generators, 0);
    for (const auto& l : letters_) out.at(l.generator) += l.exponent;
    return out;
  }

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// "a^5 b^-2 a"; the empty word is "1".
inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    if (!out.empty()) out += ' ';
    out += static_cast<char>('a' + ls[i].generator);
    const auto run = static_cast<std::int64_t>(j - i) * ls[i].exponent;
    if (run != 1) out += '^' + std::to_string(run);
    i = j;
  }
  return out;
}

struct Presentation {
  std::size_t n_generators = 1;
  std::vector<Word> relators;

  Presentation() = default;
  Presentation(std::size_t n, std::vector<Word> rels) : n_generators(n), relators(std::move(rels)) {
    if (n_generators < 1) throw PreconditionViolation("presentation needs at least one generator");
    for (const auto& r : relators)
      for (const auto& l : r.letters())
        if (l.generator >= n_generators) throw PreconditionViolation("relator uses an undeclared generator");
  }
};

inline std::string to_string(const Presentation& p) {
  std::string out = "<";
  for (std::size_t g = 0; g < p.n_generators; ++g) {
    if (g) out += ',';
    out += static_cast<char>('a' + g);
  }
  out += " | ";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (i) out += ", ";
    out += to_string(p.relators[i]);
  }
  return out + ">";
}

namespace detail {

inline Word parse_word(std::string_view text, std::size_t offset) {
  Word w;
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos < text.size() && text[pos] == '1') {
    ++pos;
    skip_ws();
    if (pos != text.size()) throw ParseError("unexpected input after identity '1'", offset + pos);
    return w;
  }
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    bool inverted = false;
    if (text[pos] == '-') {
      inverted = true;
      ++pos;
      skip_ws();
    }
    if (pos == text.size() || text[pos] < 'a' || text[pos] > 'z') {
      throw ParseError("expected generator letter a-z", offset + pos);
    }
    const auto gen = static_cast<std::uint32_t>(text[pos] - 'a');
    ++pos;
    std::int64_t k = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const auto start = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      try {
        k = std::stoll(std::string(text.substr(start, pos - start)));
      } catch (const std::exception&) {
        throw ParseError("expected exponent", offset + start);
      }
    }
    w *= Word::power(gen, inverted ? -k : k);
  }
  return w;
}

}  // namespace detail

/// Text syntax: optional generator list before '|', then comma-separated
/// relators, e.g. "a^5 b^5, a^3 b^2, b^3 a^2" or "a,b | a b -a -b".
/// Without a generator list the generators are a .. the largest letter used.
inline Presentation parse_presentation(std::string_view text) {
  std::size_t n_generators = 0;
  std::size_t body_start = 0;
  if (const auto bar = text.find('|'); bar != std::string_view::npos) {
    const auto gens = text.substr(0, bar);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const char c = gens[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '<') continue;
      if (c < 'a' || c > 'z') throw ParseError("bad generator name", i);
      if (static_cast<std::size_t>(c - 'a') != n_generators) {
        throw ParseError("generators must be listed as a, b, c, ...", i);
      }
      ++n_generators;
    }
    if (n_generators == 0) throw ParseError("empty generator list", 0);
    body_start = bar + 1;
  }
  std::string_view body = text.substr(body_start);
  if (const auto close = body.rfind('>'); close != std::string_view::npos) body = body.substr(0, close);

  std::vector<Word> relators;
  std::size_t max_gen = 0;
  std::size_t start = 0;
  while (start <= body.size()) {
    auto comma = body.find(',', start);
    if (comma == std::string_view::npos) comma = body.size();
    const auto piece = body.substr(start, comma - start);
    const bool blank = std::all_of(piece.begin(), piece.end(),
                                   [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) {
      Word w = detail::parse_word(piece, body_start + start);
      for (const auto& l : w.letters()) max_gen = std::max<std::size_t>(max_gen, l.generator + 1);
      relators.push_back(std::move(w));
    } else if (comma != body.size()) {
      throw ParseError("empty relator", body_start + start);
    }
    start = comma + 1;
  }
  if (n_generators == 0) n_generators = std::max<std::size_t>(max_gen, 1);
  if (max_gen > n_generators) throw ParseError("relator uses an undeclared generator", body_start);
  return Presentation(n_generators, std::move(relators));
}

inline nlohmann::json to_json(const Presentation& p) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : p.relators) rels.push_back(to_string(r));
  return {{"generators", p.n_generators}, {"relators", rels}};
}

inline Presentation presentation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("relators")) throw ParseError("presentation JSON needs 'relators'", 0);
  std::string text;
  if (j.contains("generators")) {
    const auto n = j.at("generators").get<std::size_t>();
    for (std::size_t g = 0; g < n; ++g) {
      if (g) text += ',';
      text += static_cast<char>('a' + g);
    }
    text += " | ";
  }
  bool first = true;
  for (const auto& r : j.at("relators")) {
    if (!first) text += ", ";
    first = false;
    text += r.get<std::string>();
  }
  return parse_presentation(text);
}

// --- abelianization --------------------------------------------------------

/// Invariant factors of H1: torsion d1 | d2 | ... (1s omitted), then one 0
/// per free Z summand.
inline std::vector<Integer> abelianization(const Presentation& p) {
  std::vector<IntVector> rows;
  for (const auto& r : p.relators) {
    const auto sums = r.exponent_sums(p.n_generators);
    rows.emplace_back(sums.begin(), sums.end());
  }
  const auto smith = smith_normal_form(IntMatrix::from_rows(rows, p.n_generators));
  std::vector<Integer> out;
  std::size_t nonzero = 0;
  for (const auto& d : smith.diagonal) {
    if (d == 0) continue;
    ++nonzero;
    if (d != 1) out.push_back(d);
  }
  out.insert(out.end(), p.n_generators - nonzero, Integer(0));
  return out;
}

// --- coset enumeration -----------------------------------------------------

struct EnumerationResult {
  enum class Status { Finite, Inconclusive };
  Status status = Status::Inconclusive;
  std::size_t order = 0;
  /// table[coset][generator] = coset * generator; coset 0 is the identity.
  std::vector<std::vector<std::uint32_t>> table;
  std::size_t max_cosets = 0;
  std::size_t cosets_defined = 0;

  [[nodiscard]] bool finite() const noexcept { return status == Status::Finite; }
};

inline constexpr std::size_t kDefaultMaxCosets = 100000;

namespace detail {

// HLT-style Todd-Coxeter over the trivial subgroup. Column 2g is generator
// g, column 2g+1 its inverse.
class CosetEnumerator {
 public:
  CosetEnumerator(const Presentation& p, std::size_t max_cosets)
      : n_cols_(2 * p.n_generators), limit_(max_cosets) {
    for (const auto& r : p.relators) {
      if (r.empty()) continue;
      std::vector<std::uint32_t> cols;
      for (const auto& l : r.letters()) cols.push_back(2 * l.generator + (l.exponent < 0 ? 1 : 0));
      relators_.push_back(std::move(cols));
    }
  }

  EnumerationResult run() {
    EnumerationResult result;
    result.max_cosets = limit_;
    try {
      new_coset();
      for (std::uint32_t alpha = 0; alpha < parent_.size(); ++alpha) {
        for (const auto& rel : relators_) {
          if (!live(alpha)) break;
          scan_and_fill(alpha, rel);
        }
        if (!live(alpha)) continue;
        for (std::uint32_t x = 0; x < n_cols_; ++x)
          if (at(alpha, x) == kUndefined) define(alpha, x);
      }
    } catch (const LimitHit&) {
      result.cosets_defined = parent_.size();
      return result;
    }
    result.cosets_defined = parent_.size();
    compact(result);
    return result;
  }

 private:
  struct LimitHit {};
  static constexpr std::int64_t kUndefined = -1;

  std::int64_t& at(std::uint64_t coset, std::uint32_t col) { return table_[coset * n_cols_ + col]; }
  bool live(std::uint64_t c) const { return parent_[c] == c; }

  std::uint32_t new_coset() {
    if (parent_.size() >= limit_) throw LimitHit{};
    const auto c = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + n_cols_, kUndefined);
    return c;
  }

  void define(std::uint32_t coset, std::uint32_t x) {
    const auto fresh = new_coset();
    at(coset, x) = fresh;
    at(fresh, x ^ 1U) = coset;
  }

  std::uint32_t rep(std::uint32_t k) {
    std::uint32_t root = k;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[k] != root) {
      const auto next = parent_[k];
      parent_[k] = root;
      k = next;
    }
    return root;
  }

  void merge(std::uint32_t k, std::uint32_t l) {
    const auto phi = rep(k);
    const auto psi = rep(l);
    if (phi == psi) return;
    const auto mu = std::min(phi, psi);
    const auto nu = std::max(phi, psi);
    parent_[nu] = mu;
    queue_.push_back(nu);
  }

  void coincidence(std::uint32_t alpha, std::uint32_t beta) {
    queue_.clear();
    merge(alpha, beta);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const auto gamma = queue_[i];
      for (std::uint32_t x = 0; x < n_cols_; ++x) {
        const auto target = at(gamma, x);
        if (target == kUndefined) continue;
        const auto delta = static_cast<std::uint32_t>(target);
        at(delta, x ^ 1U) = kUndefined;
        const auto mu = rep(gamma);
        const auto nu = rep(delta);
        if (at(mu, x) != kUndefined) {
          merge(nu, static_cast<std::uint32_t>(at(mu, x)));
        } else if (at(nu, x ^ 1U) != kUndefined) {
          merge(mu, static_cast<std::uint32_t>(at(nu, x ^ 1U)));
        } else {
          at(mu, x) = nu;
          at(nu, x ^ 1U) = mu;
        }
      }
    }
  }

  void scan_and_fill(std::uint32_t alpha, const std::vector<std::uint32_t>& w) {
    std::uint32_t f = alpha;
    std::uint32_t b = alpha;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    while (true) {
      while (i < j && at(f, w[i]) != kUndefined) f = static_cast<std::uint32_t>(at(f, w[i++]));
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && at(b, w[j - 1] ^ 1U) != kUndefined) b = static_cast<std::uint32_t>(at(b, w[--j] ^ 1U));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, w[i]) = b;
        at(b, w[i] ^ 1U) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void compact(EnumerationResult& result) {
    std::vector<std::int64_t> renumber(parent_.size(), -1);
    std::uint32_t next = 0;
    for (std::uint32_t c = 0; c < parent_.size(); ++c)
      if (live(c)) renumber[c] = next++;
    result.status = EnumerationResult::Status::Finite;
    result.order = next;
    const std::uint32_t n_gens = n_cols_ / 2;
    for (std::uint32_t c = 0; c < parent_.size(); ++c) {
      if (!live(c)) continue;
      std::vector<std::uint32_t> row(n_gens);
      for (std::uint32_t g = 0; g < n_gens; ++g) {
        row[g] = static_cast<std::uint32_t>(renumber[rep(static_cast<std::uint32_t>(at(c, 2 * g)))]);
      }
      result.table.push_back(std::move(row));
    }
  }

  std::uint32_t n_cols_;
  std::size_t limit_;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::int64_t> table_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> queue_;
};

}  // namespace detail

/// Todd-Coxeter enumeration of the cosets of the trivial subgroup. Finite
/// results are re-verified against every relator before being returned.
inline EnumerationResult coset_enumeration(const Presentation& p, std::size_t max_cosets = kDefaultMaxCosets) {
  if (max_cosets < 1) throw PreconditionViolation("max_cosets must be >= 1");
  EnumerationResult result = detail::CosetEnumerator(p, max_cosets).run();
  if (!result.finite()) return result;

  // Closure and relator check on the compacted table.
  const auto n = result.order;
  for (std::size_t g = 0; g < p.n_generators; ++g) {
    std::vector<bool> hit(n, false);
    for (std::size_t c = 0; c < n; ++c) {
      const auto img = result.table[c][g];
      if (img >= n || hit[img]) throw Error("internal: coset table column is not a permutation");
      hit[img] = true;
    }
  }
  std::vector<std::vector<std::uint32_t>> inverse(n, std::vector<std::uint32_t>(p.n_generators));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t g = 0; g < p.n_generators; ++g) inverse[result.table[c][g]][g] = static_cast<std::uint32_t>(c);
  for (const auto& r : p.relators)
    for (std::size_t c = 0; c < n; ++c) {
      auto cur = static_cast<std::uint32_t>(c);
      for (const auto& l : r.letters()) cur = l.exponent > 0 ? result.table[cur][l.generator] : inverse[cur][l.generator];
      if (cur != c) throw Error("internal: coset table violates relator " + to_string(r));
    }
  return result;
}

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct CyclicCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t expected_order = 0;
  EnumerationResult enumeration;
  std::vector<Integer> abelian_invariants;
  std::string reason;
};

/// Pass iff the group has order n and its abelianization is Z/n: a finite
/// group whose order equals that of its abelianization is abelian, and an
/// abelian group with invariants [n] is cyclic.
inline CyclicCertificate is_cyclic_of_order(const Presentation& p, std::size_t n,
                                            std::size_t max_cosets = kDefaultMaxCosets) {
  if (n < 1) throw PreconditionViolation("expected order must be >= 1");
  CyclicCertificate cert;
  cert.expected_order = n;
  cert.abelian_invariants = abelianization(p);
  cert.enumeration = coset_enumeration(p, max_cosets);
  const std::vector<Integer> expected = n == 1 ? std::vector<Integer>{} : std::vector<Integer>{Integer(n)};
  // A wrong abelianization refutes cyclicity even when enumeration is cut off.
  if (cert.abelian_invariants != expected) {
    cert.verdict = Verdict::Fail;
    cert.reason = "abelianization is not Z/" + std::to_string(n);
  } else if (!cert.enumeration.finite()) {
    cert.verdict = Verdict::Inconclusive;
    cert.reason = "coset limit " + std::to_string(max_cosets) + " reached";
  } else if (cert.enumeration.order != n) {
    cert.verdict = Verdict::Fail;
    cert.reason = "group order " + std::to_string(cert.enumeration.order) + " != " + std::to_string(n);
  } else {
    cert.verdict = Verdict::Pass;
    cert.reason = "order and abelianization both equal " + std::to_string(n);
  }
  return cert;
}

// --- finite quotients ------------------------------------------------------

/// Finite group by Cayley table with a designated generating set.
class FiniteGroupTable {
 public:
  FiniteGroupTable(std::string name, std::vector<std::vector<std::uint32_t>> table,
                   std::vector<std::string> element_names, std::vector<std::uint32_t> generators)
      : name_(std::move(name)),
        table_(std::move(table)),
        names_(std::move(element_names)),
        generators_(std::move(generators)) {
    const auto n = table_.size();
    if (n == 0 || names_.size() != n) throw PreconditionViolation("group table shape mismatch");
    for (const auto& row : table_) {
      if (row.size() != n) throw PreconditionViolation("group table is not square");
      for (auto x : row)
        if (x >= n) throw PreconditionViolation("group table entry out of range");
    }
    identity_ = n;
    for (std::uint32_t e = 0; e < n && identity_ == n; ++e) {
      bool is_identity = true;
      for (std::uint32_t x = 0; x < n; ++x)
        if (table_[e][x] != x || table_[x][e] != x) is_identity = false;
      if (is_identity) identity_ = e;
    }
    if (identity_ == n) throw PreconditionViolation("group table has no identity");
    inverse_.assign(n, static_cast<std::uint32_t>(n));
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        if (table_[x][y] == identity_) inverse_[x] = y;
    for (auto inv : inverse_)
      if (inv == n) throw PreconditionViolation("group table element without inverse");
    if (subgroup_order(generators_) != n) throw PreconditionViolation("designated generators do not generate");
  }

  /// Closure of a permutation generating set, elements in BFS order from the
  /// identity.
  static FiniteGroupTable from_permutations(std::string name, const std::vector<std::vector<std::uint32_t>>& gens) {
    using Perm = std::vector<std::uint32_t>;
    const auto degree = gens.front().size();
    const auto compose = [](const Perm& a, const Perm& b) {  // apply a then b
      Perm out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
      return out;
    };
    Perm id(degree);
    for (std::uint32_t i = 0; i < degree; ++i) id[i] = i;
    std::vector<Perm> elements{id};
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (const auto& g : gens) {
        Perm next = compose(elements[i], g);
        if (std::find(elements.begin(), elements.end(), next) == elements.end()) elements.push_back(next);
      }
    const auto index = [&](const Perm& p) {
      return static_cast<std::uint32_t>(std::find(elements.begin(), elements.end(), p) - elements.begin());
    };
    std::vector<std::vector<std::uint32_t>> table(elements.size(), std::vector<std::uint32_t>(elements.size()));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (std::size_t j = 0; j < elements.size(); ++j) table[i][j] = index(compose(elements[i], elements[j]));
      std::string n = "[";
      for (std::size_t k = 0; k < degree; ++k) n += (k ? " " : "") + std::to_string(elements[i][k]);
      names.push_back(n + "]");
    }
    std::vector<std::uint32_t> gen_idx;
    for (const auto& g : gens) gen_idx.push_back(index(g));
    return FiniteGroupTable(std::move(name), std::move(table), std::move(names), std::move(gen_idx));
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t order() const noexcept { return table_.size(); }
  [[nodiscard]] std::uint32_t identity() const noexcept { return identity_; }
  [[nodiscard]] std::uint32_t multiply(std::uint32_t x, std::uint32_t y) const { return table_[x][y]; }
  [[nodiscard]] std::uint32_t inverse(std::uint32_t x) const { return inverse_[x]; }
  [[nodiscard]] const std::string& element_name(std::uint32_t x) const { return names_.at(x); }
  [[nodiscard]] const std::vector<std::uint32_t>& generators() const noexcept { return generators_; }

  [[nodiscard]] std::uint32_t element(std::string_view name) const {
    for (std::uint32_t x = 0; x < names_.size(); ++x)
      if (names_[x] == name) return x;
    throw PreconditionViolation("no element named " + std::string(name));
  }

  [[nodiscard]] bool is_abelian() const {
    for (std::uint32_t x = 0; x < order(); ++x)
      for (std::uint32_t y = 0; y < order(); ++y)
        if (table_[x][y] != table_[y][x]) return false;
    return true;
  }

  [[nodiscard]] std::size_t subgroup_order(const std::vector<std::uint32_t>& gens) const {
    std::vector<bool> seen(order(), false);
    std::vector<std::uint32_t> queue{identity_};
    seen[identity_] = true;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto g : gens) {
        const auto next = table_[queue[i]][g];
        if (!seen[next]) {
          seen[next] = true;
          queue.push_back(next);
        }
      }
    return queue.size();
  }

  [[nodiscard]] std::uint32_t evaluate(const Word& w, const std::vector<std::uint32_t>& images) const {
    std::uint32_t acc = identity_;
    for (const auto& l : w.letters()) {
      const auto img = images.at(l.generator);
      acc = table_[acc][l.exponent > 0 ? img : inverse_[img]];
    }
    return acc;
  }

 private:
  std::string name_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> generators_;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> inverse_;
};

/// Quaternion group; elements 1, -1, i, -i, j, -j, k, -k.
inline FiniteGroupTable quaternion_group() {
  // unit index 0..3 = 1, i, j, k; product of units as (sign, unit).
  static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> units{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  const auto idx = [](int sign, int unit) { return static_cast<std::uint32_t>(2 * unit + (sign < 0 ? 1 : 0)); };
  std::vector<std::vector<std::uint32_t>> table(8, std::vector<std::uint32_t>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int sx = x % 2 ? -1 : 1;
      const int sy = y % 2 ? -1 : 1;
      const auto [s, u] = units[static_cast<std::size_t>(x / 2)][static_cast<std::size_t>(y / 2)];
      table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = idx(sx * sy * s, u);
    }
  return FiniteGroupTable("Q8", std::move(table), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, {2, 4});
}

/// Dihedral group of order 2n; element r^a s^b has index a + n b.
inline FiniteGroupTable dihedral_group(std::uint32_t n) {
  if (n < 3) throw PreconditionViolation("dihedral group needs n >= 3");
  const auto size = 2 * n;
  std::vector<std::vector<std::uint32_t>> table(size, std::vector<std::uint32_t>(size));
  std::vector<std::string> names;
  for (std::uint32_t x = 0; x < size; ++x) {
    const auto a = x % n;
    const auto b = x / n;
    std::string name = a == 0 ? "" : a == 1 ? "r" : "r^" + std::to_string(a);
    if (b) name += "s";
    names.push_back(name.empty() ? "1" : name);
    for (std::uint32_t y = 0; y < size; ++y) {
      const auto c = y % n;
      const auto d = y / n;
      const auto rot = b ? (a + n - c) % n : (a + c) % n;
      table[x][y] = rot + n * ((b + d) % 2);
    }
  }
  return FiniteGroupTable("D" + std::to_string(n), std::move(table), std::move(names), {1, n});
}

inline FiniteGroupTable symmetric_group_3() {
  return FiniteGroupTable::from_permutations("S3", {{1, 0, 2}, {1, 2, 0}});
}

/// Built-in non-abelian targets, searched in this order.
inline std::vector<FiniteGroupTable> builtin_nonabelian_targets() {
  return {quaternion_group(), dihedral_group(3), dihedral_group(4), dihedral_group(5), dihedral_group(6),
          symmetric_group_3()};
}

struct Homomorphism {
  std::string target;
  std::vector<std::uint32_t> images;
  std::vector<std::string> image_names;
  bool surjective = false;
};

/// Exhaustive search over generator images for a surjection onto target
/// that kills every relator. Tuples are tried in lexicographic order.
inline std::optional<Homomorphism> find_finite_quotient(const Presentation& p, const FiniteGroupTable& target) {
  const auto n = p.n_generators;
  const auto order = static_cast<std::uint32_t>(target.order());
  std::vector<std::uint32_t> images(n, 0);
  while (true) {
    bool kills = true;
    for (const auto& r : p.relators)
      if (target.evaluate(r, images) != target.identity()) {
        kills = false;
        break;
      }
    if (kills && target.subgroup_order(images) == target.order()) {
      Homomorphism h{target.name(), images, {}, true};
      for (auto x : images) h.image_names.push_back(target.element_name(x));
      return h;
    }
    // last generator varies fastest
    std::size_t pos = n;
    while (pos > 0 && ++images[pos - 1] == order) images[--pos] = 0;
    if (pos == 0) return std::nullopt;
  }
}

}  // namespace rimcert
