#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "multinil/rational.hpp"

namespace multinil {
namespace modp {

// Arithmetic mod the Mersenne prime 2^61 - 1, used only as a fast screen for
// rank growth; every accepted row is re-checked in exact rational arithmetic.
inline constexpr uint64_t P = (uint64_t(1) << 61) - 1;

inline uint64_t reduce(uint64_t x) {
  x = (x & P) + (x >> 61);
  return x >= P ? x - P : x;
}

inline uint64_t add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= P ? s - P : s;
}

inline uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + P - b; }

inline uint64_t mul(uint64_t a, uint64_t b) {
  unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  uint64_t lo = static_cast<uint64_t>(t & P);
  uint64_t hi = static_cast<uint64_t>(t >> 61);
  uint64_t s = lo + hi;
  return s >= P ? s - P : s;
}

inline uint64_t pow(uint64_t b, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

inline uint64_t inv(uint64_t a) { return pow(a, P - 2); }

// Image of a rational with denominator coprime to P (always true here: P is
// a 61-bit prime and the denominators stay far smaller in practice; if a
// denominator did hit a multiple of P the exact fallback still decides).
uint64_t project(const Rational& x, bool* ok = nullptr);

using Row = std::vector<std::pair<int, uint64_t>>;

Row project_row(const std::vector<std::pair<int, Rational>>& row, bool* ok);

// Echelon accumulator mod P, mirroring RowEchelon's reduction order.
class Echelon {
 public:
  explicit Echelon(int cols) : cols_(cols) {}
  Row reduce(Row row) const;
  bool insert(Row row);
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  int cols_;
  std::vector<Row> rows_;
  std::vector<int> pivot_cols_;
};

}  // namespace modp
}  // namespace multinil
