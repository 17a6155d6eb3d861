#include "multinil/modp.hpp"

#include <algorithm>

namespace multinil {
namespace modp {

uint64_t project(const Rational& x, bool* ok) {
  if (ok) *ok = true;
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, 61);
  p -= 1;
  mpz_class nm = num % p, dm = den % p;
  if (nm < 0) nm += p;
  uint64_t n = mpz_get_ui(nm.get_mpz_t());
  uint64_t d = mpz_get_ui(dm.get_mpz_t());
  if (d == 0) {
    if (ok) *ok = false;
    return 0;
  }
  return mul(n, inv(d));
}

Row project_row(const std::vector<std::pair<int, Rational>>& row, bool* ok) {
  Row r;
  r.reserve(row.size());
  bool all_ok = true;
  for (const auto& [c, v] : row) {
    bool one = true;
    uint64_t m = project(v, &one);
    all_ok = all_ok && one;
    if (m != 0) r.emplace_back(c, m);
  }
  if (ok) *ok = all_ok;
  return r;
}

namespace {

Row axpy(const Row& a, uint64_t c, const Row& b) {
  Row r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      uint64_t v = mul(c, b[j].second);
      if (v) r.emplace_back(b[j].first, v);
      ++j;
    } else {
      uint64_t v = add(a[i].second, mul(c, b[j].second));
      if (v) r.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

Row Echelon::reduce(Row row) const {
  size_t k = 0;
  for (size_t i = 0; i < row.size();) {
    while (k < pivot_cols_.size() && pivot_cols_[k] < row[i].first) ++k;
    if (k == pivot_cols_.size()) break;
    if (pivot_cols_[k] == row[i].first) {
      int col = row[i].first;
      row = axpy(row, P - row[i].second, rows_[k]);
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

bool Echelon::insert(Row row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  int pc = row.front().first;
  if (row.front().second != 1) {
    uint64_t s = inv(row.front().second);
    for (auto& [c, v] : row) v = mul(v, s);
  }
  auto pos = std::lower_bound(pivot_cols_.begin(), pivot_cols_.end(), pc);
  size_t idx = static_cast<size_t>(pos - pivot_cols_.begin());
  pivot_cols_.insert(pos, pc);
  rows_.insert(rows_.begin() + idx, std::move(row));
  return true;
}

}  // namespace modp
}  // namespace multinil
