#include "multinil/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace multinil {

SparseVec sparse_axpy(const SparseVec& a, const Rational& c,
                      const SparseVec& b) {
  if (c == 0) return a;
  SparseVec r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second + c * b[j].second;
      if (v != 0) r.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
  return sparse_axpy(a, Rational(1), b);
}

SparseVec sparse_scale(const SparseVec& a, const Rational& c) {
  if (c == 0) return {};
  SparseVec r = a;
  for (auto& [col, v] : r) v *= c;
  return r;
}

bool sparse_is_zero(const SparseVec& a) { return a.empty(); }

Rational RationalMatrix::at(int r, int c) const {
  const auto& row = rows.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& p, int col) { return p.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return Rational(0);
}

void RationalMatrix::append_row(SparseVec row) {
  for (const auto& [col, v] : row) {
    if (col < 0 || col >= cols) throw std::out_of_range("row entry past cols");
    if (v == 0) throw std::invalid_argument("explicit zero in sparse row");
  }
  rows.push_back(std::move(row));
}

RationalMatrix RationalMatrix::from_dense(
    const std::vector<std::vector<Rational>>& data) {
  RationalMatrix m;
  m.cols = data.empty() ? 0 : static_cast<int>(data.front().size());
  for (const auto& drow : data) {
    if (static_cast<int>(drow.size()) != m.cols)
      throw std::invalid_argument("ragged dense matrix");
    SparseVec row;
    for (int c = 0; c < m.cols; ++c)
      if (drow[c] != 0) row.emplace_back(c, drow[c]);
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::vector<std::vector<Rational>> RationalMatrix::to_dense() const {
  std::vector<std::vector<Rational>> d(rows.size(),
                                       std::vector<Rational>(cols, Rational(0)));
  for (size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) d[r][c] = v;
  return d;
}

SparseVec RowEchelon::reduce(SparseVec row) const {
  // pivot_cols_ is strictly increasing and row stays sorted, so a single
  // forward sweep clears every reducible position.
  size_t k = 0;
  for (size_t i = 0; i < row.size();) {
    while (k < pivot_cols_.size() && pivot_cols_[k] < row[i].first) ++k;
    if (k == pivot_cols_.size()) break;
    if (pivot_cols_[k] == row[i].first) {
      Rational c = -row[i].second;
      int col = row[i].first;
      row = sparse_axpy(row, c, rows_[k]);
      // The eliminated column vanished; resume at the first entry past it.
      auto it = std::lower_bound(
          row.begin(), row.end(), col,
          [](const auto& p, int cc) { return p.first < cc; });
      i = static_cast<size_t>(it - row.begin());
    } else {
      ++i;
    }
  }
  return row;
}

bool RowEchelon::insert(SparseVec row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  int pc = row.front().first;
  if (row.front().second != 1) {
    Rational inv = Rational(1) / row.front().second;
    row = sparse_scale(row, inv);
  }
  auto pos = std::lower_bound(pivot_cols_.begin(), pivot_cols_.end(), pc);
  size_t idx = static_cast<size_t>(pos - pivot_cols_.begin());
  pivot_cols_.insert(pos, pc);
  rows_.insert(rows_.begin() + idx, std::move(row));
  return true;
}

RrefResult RowEchelon::to_rref() const {
  RrefResult res;
  res.matrix.cols = cols_;
  res.matrix.rows = rows_;
  res.pivots = pivot_cols_;
  // Back-substitute: clear entries above each pivot, bottom-up.
  auto& rows = res.matrix.rows;
  for (int k = static_cast<int>(rows.size()) - 1; k >= 0; --k) {
    int pc = res.pivots[k];
    for (int i = 0; i < k; ++i) {
      const auto& row = rows[i];
      auto it = std::lower_bound(
          row.begin(), row.end(), pc,
          [](const auto& p, int c) { return p.first < c; });
      if (it != row.end() && it->first == pc)
        rows[i] = sparse_axpy(row, -it->second, rows[k]);
    }
  }
  return res;
}

RrefResult rref(const RationalMatrix& m) {
  RowEchelon ech(m.cols);
  for (const auto& row : m.rows) ech.insert(row);
  return ech.to_rref();
}

bool in_row_space(const RationalMatrix& m, const SparseVec& v,
                  std::vector<Rational>* combination) {
  if (!combination) {
    RowEchelon ech(m.cols);
    for (const auto& row : m.rows) ech.insert(row);
    return ech.reduce(v).empty();
  }
  // Track coefficients: augment each row with its index in an extra block.
  int n = m.row_count();
  RowEchelon ech(m.cols + n);
  for (int i = 0; i < n; ++i) {
    SparseVec row = m.rows[i];
    row.emplace_back(m.cols + i, Rational(1));
    ech.insert(std::move(row));
  }
  SparseVec res = ech.reduce(v);
  for (const auto& [c, val] : res)
    if (c < m.cols) return false;
  combination->assign(n, Rational(0));
  // v - sum tail_i * row_i reduced to zero on the main block, so
  // v = -sum over the tail coefficients.
  for (const auto& [c, val] : res) (*combination)[c - m.cols] = -val;
  return true;
}

}  // namespace multinil
