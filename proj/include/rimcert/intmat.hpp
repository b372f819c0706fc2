#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rimcert/integer.hpp"

namespace rimcert {

using IntVector = std::vector<Integer>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Builds from nested rows; all rows must have equal length.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0) {
    const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const Integer> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  [[nodiscard]] std::vector<IntVector> to_rows() const {
    std::vector<IntVector> out;
    for (std::size_t r = 0; r < rows_; ++r) out.emplace_back(row(r).begin(), row(r).end());
    return out;
  }

  [[nodiscard]] IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
  }

  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
  }

  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant over any integral domain. `exact_div`
/// must return the exact quotient of two ring elements.
template <class Ring, class ExactDiv>
Ring bareiss_determinant(std::vector<std::vector<Ring>> a, const Ring& zero, const Ring& one,
                         ExactDiv exact_div) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw DimensionMismatch("determinant of a non-square matrix");
  if (n == 0) return one;
  bool negate = false;
  Ring prev = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == zero) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a[swap_with][k] == zero) ++swap_with;
      if (swap_with == n) return zero;
      std::swap(a[k], a[swap_with]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      }
      a[i][k] = zero;
    }
    prev = a[k][k];
  }
  Ring det = a[n - 1][n - 1];
  return negate ? Ring(zero - det) : det;
}

inline Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  return bareiss_determinant<Integer>(m.to_rows(), Integer(0), Integer(1),
                                      [](const Integer& x, const Integer& y) { return x / y; });
}

struct SmithForm {
  /// min(rows, cols) entries d1 | d2 | ..., nonnegative, zeros last.
  std::vector<Integer> diagonal;
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix V;  // cols x cols, unimodular
};

namespace detail {

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Smallest nonzero |entry| in the trailing block starting at (t, t); ties go
// to the first position in row-major order.
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(const IntMatrix& a,
                                                                         std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs_value(a(i, j));
      if (!best || v < best_abs) {
        best = {i, j};
        best_abs = std::move(v);
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form with transforms: U * m * V == diag(diagonal).
inline SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t steps = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < steps; ++t) {
    bool block_zero = false;
    while (true) {
      const auto pivot = detail::smallest_pivot(a, t);
      if (!pivot) {
        block_zero = true;
        break;
      }
      a.swap_rows(t, pivot->first);
      u.swap_rows(t, pivot->first);
      a.swap_cols(t, pivot->second);
      v.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = a(i, t) / a(t, t);
        a.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = a(t, j) / a(t, t);
        a.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and redo.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < a.rows() && !offending; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (a(i, j) % a(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      a.add_row_multiple(t, *offending, Integer(1));
      u.add_row_multiple(t, *offending, Integer(1));
    }
    if (block_zero) break;
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }

  SmithForm out{{}, std::move(u), std::move(v)};
  out.diagonal.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) out.diagonal.push_back(a(t, t));
  return out;
}

/// Row-style Hermite normal form of the integer span of `vectors`: echelon
/// rows with positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped.
struct HermiteBasis {
  std::vector<IntVector> rows;
  std::vector<std::size_t> pivot_cols;
  std::size_t dimension = 0;

  /// Unique representative of v modulo the span.
  [[nodiscard]] IntVector reduce(IntVector v) const {
    if (v.size() != dimension) throw DimensionMismatch("vector length differs from lattice rank");
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto pc = pivot_cols[k];
      const Integer& p = rows[k][pc];
      Integer q = v[pc] / p;
      if (v[pc] - q * p < 0) --q;  // floor division
      if (q == 0) continue;
      for (std::size_t c = pc; c < dimension; ++c) v[c] -= q * rows[k][c];
    }
    return v;
  }

  [[nodiscard]] std::size_t rank() const noexcept { return rows.size(); }
};

inline HermiteBasis hermite_basis(const std::vector<IntVector>& vectors, std::size_t dimension) {
  for (const auto& v : vectors)
    if (v.size() != dimension) throw DimensionMismatch("vectors of unequal length");
  std::vector<IntVector> work = vectors;
  HermiteBasis out;
  out.dimension = dimension;
  std::size_t cur = 0;
  for (std::size_t col = 0; col < dimension && cur < work.size(); ++col) {
    // Euclid on column `col` among rows cur.. until a single nonzero remains.
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t r = cur; r < work.size(); ++r) {
        if (work[r][col] == 0) continue;
        if (!best || detail::abs_value(work[r][col]) < detail::abs_value(work[*best][col])) best = r;
      }
      if (!best) break;
      std::swap(work[cur], work[*best]);
      bool done = true;
      for (std::size_t r = cur + 1; r < work.size(); ++r) {
        if (work[r][col] == 0) continue;
        const Integer q = work[r][col] / work[cur][col];
        for (std::size_t c = col; c < dimension; ++c) work[r][c] -= q * work[cur][c];
        if (work[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (cur >= work.size() || work[cur][col] == 0) continue;
    if (work[cur][col] < 0)
      for (auto& x : work[cur]) x = -x;
    const Integer& p = work[cur][col];
    for (std::size_t r = 0; r < cur; ++r) {
      Integer q = work[r][col] / p;
      if (work[r][col] - q * p < 0) --q;
      if (q == 0) continue;
      for (std::size_t c = col; c < dimension; ++c) work[r][c] -= q * work[cur][c];
    }
    out.pivot_cols.push_back(col);
    ++cur;
  }
  work.resize(cur);
  out.rows = std::move(work);
  return out;
}

inline std::size_t rank(const std::vector<IntVector>& vectors, std::size_t dimension) {
  return hermite_basis(vectors, dimension).rank();
}

/// True iff target lies in the Q-span of vectors.
inline bool in_rational_span(const std::vector<IntVector>& vectors, const IntVector& target) {
  const std::size_t dim = target.size();
  for (const auto& v : vectors)
    if (v.size() != dim) throw DimensionMismatch("span vectors and target differ in length");
  auto extended = vectors;
  extended.push_back(target);
  return rank(vectors, dim) == rank(extended, dim);
}

}  // namespace rimcert
