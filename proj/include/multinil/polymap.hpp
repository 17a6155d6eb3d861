#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multinil/algebra.hpp"
#include "multinil/matrix.hpp"
#include "multinil/multipoly.hpp"

namespace multinil {

// Polynomial self-map of rational affine n-space, coordinates over X1..Xn.
struct PolyMap {
  int n = 0;
  VarList vars;  // X1..Xn
  std::vector<MultiPoly> coords;

  static PolyMap identity(int n);
  static PolyMap identity(const VarList& vars);

  // this(other(X)): substitute other's coordinates into this.
  PolyMap compose(const PolyMap& other) const;
  bool is_identity() const;
};

// PolyMap whose nonzero coordinates all share one total degree d >= 2.
struct HomogeneousMap {
  PolyMap map;
  int d = 2;

  // Throws on mixed or wrong degrees.
  static HomogeneousMap checked(PolyMap m, std::optional<int> expect_d = {});
};

// Symmetric tensor from signed inclusion-exclusion over subsets of arguments;
// satisfies the diagonal identity mu(X,...,X) = H(X).
MultilinearAlgebra polarize(const HomogeneousMap& H);
// H(X) = mu(X,...,X).
HomogeneousMap depolarize(const MultilinearAlgebra& A);

DenseMatrix<MultiPoly> jacobian(const PolyMap& F);
MultiPoly jacobian_det(const PolyMap& F);

// For F = Id - H with H homogeneous of degree d >= 2: the truncated inverse
// sum_{j<=D} T_j over Y1..Yn.  Throws std::invalid_argument on wrong shape.
PolyMap formal_inverse(const PolyMap& F, int D);

struct AutomorphismReport {
  std::string verdict;  // EXACT | OK_MOD_D | FAIL
  int D = 0;
  std::string residual;  // first nonzero residual coordinate, if any
};

AutomorphismReport verify_automorphism(const PolyMap& F, const PolyMap& G,
                                       int D);

struct JacobianCheckReport {
  NilReport yagzhev;
  NilReport engel;
  std::optional<int> engel_bound;  // d*floor((p-2)/(d-1)) + 1
  bool pass = false;               // engel index found within the bound
  std::string jacobian_determinant;  // of Id - depolarize(A), reported only
};

JacobianCheckReport jacobian_theorem_check(const MultilinearAlgebra& A,
                                           int p_max);

}  // namespace multinil
