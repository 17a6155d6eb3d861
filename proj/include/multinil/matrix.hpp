#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "multinil/rational.hpp"

namespace multinil {

// Sparse row: (column, value) pairs, sorted by column, values nonzero.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
SparseVec sparse_axpy(const SparseVec& a, const Rational& c,
                      const SparseVec& b);  // a + c*b
SparseVec sparse_scale(const SparseVec& a, const Rational& c);
bool sparse_is_zero(const SparseVec& a);

// Row-major sparse matrix over Q.
struct RationalMatrix {
  int cols = 0;
  std::vector<SparseVec> rows;

  int row_count() const { return static_cast<int>(rows.size()); }
  Rational at(int r, int c) const;
  void append_row(SparseVec row);

  static RationalMatrix from_dense(
      const std::vector<std::vector<Rational>>& data);
  std::vector<std::vector<Rational>> to_dense() const;
};

struct RrefResult {
  RationalMatrix matrix;     // canonical reduced row echelon form
  std::vector<int> pivots;   // pivot column of each nonzero row, increasing
  int rank() const { return static_cast<int>(pivots.size()); }
};

RrefResult rref(const RationalMatrix& m);

// Incremental echelon accumulator: rows kept pivot-normalized (pivot value 1),
// each new row reduced against existing pivots before insertion.  to_rref()
// back-substitutes to the canonical form.
class RowEchelon {
 public:
  explicit RowEchelon(int cols) : cols_(cols) {}

  // Reduce `row` against the current pivots.  Returns the residue (empty if
  // the row is in the current row space).
  SparseVec reduce(SparseVec row) const;

  // Reduce and, if a nonzero residue remains, insert it as a new pivot row.
  // Returns true if the rank grew.
  bool insert(SparseVec row);

  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const std::vector<int>& pivots() const { return pivot_cols_; }

  RrefResult to_rref() const;

 private:
  int cols_;
  std::vector<SparseVec> rows_;    // ordered by pivot column
  std::vector<int> pivot_cols_;    // parallel to rows_, strictly increasing
};

// Is v in the row space of m?  If `combination` is non-null and the answer is
// yes, *combination holds coefficients c with v = sum_i c_i * m.rows[i].
bool in_row_space(const RationalMatrix& m, const SparseVec& v,
                  std::vector<Rational>* combination = nullptr);

// Small dense matrices over an arbitrary exact ring (Rational, MultiPoly).
template <typename T>
struct DenseMatrix {
  int n = 0, m = 0;
  std::vector<T> data;  // row-major

  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, T fill = T())
      : n(rows), m(cols), data(static_cast<size_t>(rows) * cols, fill) {}

  T& at(int r, int c) { return data[static_cast<size_t>(r) * m + c]; }
  const T& at(int r, int c) const {
    return data[static_cast<size_t>(r) * m + c];
  }
};

template <typename T>
T det_cofactor(const DenseMatrix<T>& a) {
  if (a.n != a.m) throw std::invalid_argument("determinant of non-square");
  if (a.n == 0) return T(1);
  if (a.n == 1) return a.at(0, 0);
  T acc{};
  for (int j = 0; j < a.m; ++j) {
    DenseMatrix<T> minor(a.n - 1, a.m - 1);
    for (int r = 1; r < a.n; ++r) {
      int cc = 0;
      for (int c = 0; c < a.m; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = a.at(r, c);
      }
    }
    T term = a.at(0, j) * det_cofactor(minor);
    if (j % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

// Fraction-free Gaussian elimination (Bareiss).  Requires exact_div(x, y)
// found by ADL to divide exactly within T.
template <typename T>
T det_bareiss(DenseMatrix<T> a) {
  if (a.n != a.m) throw std::invalid_argument("determinant of non-square");
  const int n = a.n;
  if (n == 0) return T(1);
  T prev(1);
  int sign = 1;
  auto is_zero = [](const T& x) { return x == T(); };
  for (int k = 0; k + 1 < n; ++k) {
    if (is_zero(a.at(k, k))) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (!is_zero(a.at(r, k))) {
          p = r;
          break;
        }
      if (p < 0) return T();
      for (int c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(p, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        T num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = exact_div(num, prev);
      }
      a.at(i, k) = T();
    }
    prev = a.at(k, k);
  }
  T d = a.at(n - 1, n - 1);
  return sign < 0 ? T() - d : d;
}

template <typename T>
T det(const DenseMatrix<T>& a) {
  if (a.n <= 3) return det_cofactor(a);
  return det_bareiss(a);
}

}  // namespace multinil
