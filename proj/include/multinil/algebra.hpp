#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multinil/matrix.hpp"
#include "multinil/multipoly.hpp"

namespace multinil {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite-dimensional symmetric d-linear algebra: structure tensor over Q.
// Keys are non-decreasing 0-based index tuples; lookups symmetrize.
struct MultilinearAlgebra {
  int d = 2;
  int n = 1;
  std::vector<std::string> basis;  // names, defaults e1..en
  std::map<std::vector<int>, SparseVec> tensor;

  // Checks index ranges and normalized (sorted, zero-free) storage.
  void validate() const;

  // mu(e_{key[0]}, ..., e_{key[d-1]}) for any index order.
  const SparseVec* product(std::vector<int> key) const;

  std::string basis_name(int i) const;
};

// Algebra element with polynomial coordinates.
struct SymbolicElement {
  std::vector<MultiPoly> coords;

  bool is_zero() const;
  SymbolicElement operator+(const SymbolicElement& o) const;
  SymbolicElement operator-(const SymbolicElement& o) const;
  bool operator==(const SymbolicElement& o) const = default;
};

// Variable list with one block of n variables per prefix ("x" -> x1..xn).
VarList symbol_vars(int n, const std::vector<std::string>& prefixes);
// Generic element whose coordinates are block `block` of `vars`.
SymbolicElement generic_element(const MultilinearAlgebra& A, const VarList& vars,
                                int block);
SymbolicElement zero_element(const MultilinearAlgebra& A, const VarList& vars);

struct NilReport {
  std::string kind;  // engel | yagzhev | gerstenhaber
  std::optional<int> index;
  int bound = 0;
  int window_lo = 0, window_hi = 0;     // checked window for the found index
  std::optional<std::string> witness;   // nonvanishing value at the bound
};

SymbolicElement mu(const MultilinearAlgebra& A,
                   const std::vector<SymbolicElement>& args);
SymbolicElement ad_pow(const MultilinearAlgebra& A, const SymbolicElement& x,
                       int k, const SymbolicElement& y);
SymbolicElement T(const MultilinearAlgebra& A, int q, const SymbolicElement& x);
SymbolicElement g_map(const MultilinearAlgebra& A, const SymbolicElement& x);
SymbolicElement gamma(const MultilinearAlgebra& A, const SymbolicElement& y,
                      int D);
SymbolicElement dg(const MultilinearAlgebra& A, const SymbolicElement& x,
                   const SymbolicElement& z);
// Directional derivative of T_q at y in direction t.
SymbolicElement dT(const MultilinearAlgebra& A, int q, const SymbolicElement& y,
                   const SymbolicElement& t);
SymbolicElement dgamma(const MultilinearAlgebra& A, const SymbolicElement& y,
                       const SymbolicElement& t, int D);

// Matrix of Ad_x in the chosen basis: column j holds Ad_x(e_j).
DenseMatrix<MultiPoly> ad_matrix(const MultilinearAlgebra& A,
                                 const SymbolicElement& x);

NilReport engel_index(const MultilinearAlgebra& A, int n_max);
NilReport yagzhev_index(const MultilinearAlgebra& A, int p_max);
NilReport gerstenhaber_index(const MultilinearAlgebra& A, int n_max);

}  // namespace multinil
