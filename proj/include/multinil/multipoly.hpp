#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multinil/rational.hpp"

namespace multinil {

// Ordered list of variable identifiers, shared between the polynomials of
// one computation. Two lists are compatible when they have equal content.
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);

// "x1".."xn" (or with several prefixes concatenated: x1..xn,z1..zn,...).
VarList indexed_vars(const std::vector<std::string>& prefixes, int n);

using Expvec = std::vector<uint32_t>;

inline uint64_t total_degree(const Expvec& e) {
  uint64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

// Graded-lexicographic term order: lower total degree first, ties broken
// lexicographically. Iterating the term map in reverse yields the leading
// term first, which is the printing order.
struct GrlexLess {
  bool operator()(const Expvec& a, const Expvec& b) const {
    uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: no zero coefficients stored; every exponent vector has length
// equal to the variable count.
class MultiPoly {
 public:
  using TermMap = std::map<Expvec, Rational, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(VarList vars) : vars_(std::move(vars)) {}
  // Varless constant, so generic ring code can write T(1).
  explicit MultiPoly(const Rational& c) {
    if (c != 0) terms_.emplace(Expvec{}, c);
  }

  static MultiPoly constant(Rational c, VarList vars = nullptr);
  static MultiPoly variable(const VarList& vars, int index);
  static MultiPoly monomial(const VarList& vars, Expvec exps, Rational c);

  const VarList& vars() const { return vars_; }
  int var_count() const { return vars_ ? static_cast<int>(vars_->size()) : 0; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // the degree-0 coefficient

  void add_term(const Expvec& exps, const Rational& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const Rational& c) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly derivative(int var) const;

  // Substitutes images[i] for variable i; all images share one variable list.
  MultiPoly compose(const std::vector<MultiPoly>& images) const;

  Rational eval(std::span<const Rational> point) const;

  int64_t degree() const;  // total degree; -1 for the zero polynomial
  // Degree if every term has the same total degree (zero counts as
  // homogeneous of any degree and yields nullopt).
  std::optional<int64_t> homogeneous_degree() const;
  MultiPoly homogeneous_part(int64_t deg) const;
  MultiPoly truncated_above(int64_t deg) const;  // drop terms of degree > deg

  std::string to_string() const;

 private:
  // Throws unless the two lists are compatible; lifts constants.
  static void align(MultiPoly& a, MultiPoly& b);

  VarList vars_;
  TermMap terms_;
};

enum class PolyOp { add, sub, mul, scale };

// Dispatching entry point; `scale` multiplies a by b's constant value.
MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op);

// Exact polynomial division: returns a/b when b divides a, nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

inline MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::domain_error("inexact polynomial division");
  return *q;
}

}  // namespace multinil
