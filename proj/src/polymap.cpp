#include "multinil/polymap.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace multinil {

PolyMap PolyMap::identity(int n) { return identity(indexed_vars({"X"}, n)); }

PolyMap PolyMap::identity(const VarList& vars) {
  PolyMap F;
  F.n = static_cast<int>(vars->size());
  F.vars = vars;
  F.coords.reserve(F.n);
  for (int i = 0; i < F.n; ++i) F.coords.push_back(MultiPoly::variable(vars, i));
  return F;
}

PolyMap PolyMap::compose(const PolyMap& other) const {
  if (n != other.n) throw std::invalid_argument("composing maps of unequal n");
  PolyMap R;
  R.n = n;
  R.vars = other.vars;
  R.coords.reserve(n);
  for (const MultiPoly& c : coords) R.coords.push_back(c.compose(other.coords));
  return R;
}

bool PolyMap::is_identity() const {
  for (int i = 0; i < n; ++i)
    if (coords[i] != MultiPoly::variable(vars, i)) return false;
  return true;
}

HomogeneousMap HomogeneousMap::checked(PolyMap m, std::optional<int> expect_d) {
  std::optional<int64_t> common;
  for (const MultiPoly& c : m.coords) {
    auto deg = c.homogeneous_degree();
    if (c.is_zero()) continue;
    if (!deg) throw std::invalid_argument("coordinate is not homogeneous");
    if (common && *common != *deg)
      throw std::invalid_argument("coordinates of mixed degrees");
    common = *deg;
  }
  int d = common ? static_cast<int>(*common) : expect_d.value_or(2);
  if (expect_d && d != *expect_d)
    throw std::invalid_argument("homogeneous degree differs from expected");
  if (d < 2) throw std::invalid_argument("homogeneous degree must be >= 2");
  HomogeneousMap H;
  H.map = std::move(m);
  H.d = d;
  return H;
}

MultilinearAlgebra polarize(const HomogeneousMap& H) {
  int n = H.map.n, d = H.d;
  MultilinearAlgebra A;
  A.d = d;
  A.n = n;
  Rational inv_dfact = Rational(1) / Rational(factorial(d));

  std::vector<int> idx(d, 0);
  std::vector<Rational> point(n), acc(n);
  for (;;) {
    for (auto& a : acc) a = 0;
    for (unsigned S = 1; S < (1u << d); ++S) {
      for (auto& x : point) x = 0;
      for (int k = 0; k < d; ++k)
        if (S >> k & 1u) point[idx[k]] += 1;
      bool neg = (d - std::popcount(S)) % 2 != 0;
      for (int i = 0; i < n; ++i) {
        Rational v = H.map.coords[i].eval(point);
        if (neg)
          acc[i] -= v;
        else
          acc[i] += v;
      }
    }
    SparseVec out;
    for (int i = 0; i < n; ++i)
      if (acc[i] != 0) out.emplace_back(i, acc[i] * inv_dfact);
    if (!out.empty())
      A.tensor.emplace(std::vector<int>(idx.begin(), idx.end()), std::move(out));

    int k = d - 1;
    while (k >= 0 && idx[k] == n - 1) --k;
    if (k < 0) break;
    int v = idx[k] + 1;
    for (int j = k; j < d; ++j) idx[j] = v;
  }
  return A;
}

HomogeneousMap depolarize(const MultilinearAlgebra& A) {
  A.validate();
  VarList vars = indexed_vars({"X"}, A.n);
  HomogeneousMap H;
  H.d = A.d;
  H.map.n = A.n;
  H.map.vars = vars;
  H.map.coords.assign(A.n, MultiPoly(vars));
  Integer dfact = factorial(A.d);
  for (const auto& [key, value] : A.tensor) {
    Expvec exps(A.n, 0);
    for (int i : key) ++exps[i];
    Integer orderings = dfact;
    for (uint32_t m : exps)
      if (m > 1) orderings /= factorial(static_cast<int>(m));
    for (const auto& [i, v] : value)
      H.map.coords[i].add_term(exps, v * Rational(orderings));
  }
  return H;
}

DenseMatrix<MultiPoly> jacobian(const PolyMap& F) {
  DenseMatrix<MultiPoly> J(F.n, F.n);
  for (int i = 0; i < F.n; ++i)
    for (int j = 0; j < F.n; ++j) J.at(i, j) = F.coords[i].derivative(j);
  return J;
}

MultiPoly jacobian_det(const PolyMap& F) { return det(jacobian(F)); }

PolyMap formal_inverse(const PolyMap& F, int D) {
  if (F.n < 1 || D < 1) throw std::invalid_argument("need n >= 1 and D >= 1");
  PolyMap id = PolyMap::identity(F.vars);
  PolyMap Hmap;
  Hmap.n = F.n;
  Hmap.vars = F.vars;
  bool zero = true;
  for (int i = 0; i < F.n; ++i) {
    Hmap.coords.push_back(id.coords[i] - F.coords[i]);
    zero = zero && Hmap.coords.back().is_zero();
  }
  VarList Y = indexed_vars({"Y"}, F.n);
  if (zero) return PolyMap::identity(Y);

  HomogeneousMap H = HomogeneousMap::checked(std::move(Hmap));
  MultilinearAlgebra A = polarize(H);
  SymbolicElement y = generic_element(A, Y, 0);
  SymbolicElement g = gamma(A, y, D);
  PolyMap G;
  G.n = F.n;
  G.vars = Y;
  G.coords = std::move(g.coords);
  return G;
}

namespace {

// First nonzero coordinate of comp - Id, or "" if none.
std::string first_residual(const PolyMap& comp, int64_t truncate_above) {
  PolyMap id = PolyMap::identity(comp.vars);
  for (int i = 0; i < comp.n; ++i) {
    MultiPoly r = comp.coords[i] - id.coords[i];
    if (truncate_above >= 0) r = r.truncated_above(truncate_above);
    if (!r.is_zero()) return r.to_string();
  }
  return "";
}

}  // namespace

AutomorphismReport verify_automorphism(const PolyMap& F, const PolyMap& G,
                                       int D) {
  if (F.n != G.n) throw std::invalid_argument("maps of unequal n");
  AutomorphismReport R;
  R.D = D;
  PolyMap FG = F.compose(G);
  PolyMap GF = G.compose(F);
  if (FG.is_identity() && GF.is_identity()) {
    R.verdict = "EXACT";
    return R;
  }
  std::string res = first_residual(FG, D);
  if (res.empty()) res = first_residual(GF, D);
  if (res.empty()) {
    R.verdict = "OK_MOD_D";
    R.residual = first_residual(FG, -1);
    if (R.residual.empty()) R.residual = first_residual(GF, -1);
  } else {
    R.verdict = "FAIL";
    R.residual = res;
  }
  return R;
}

JacobianCheckReport jacobian_theorem_check(const MultilinearAlgebra& A,
                                           int p_max) {
  A.validate();
  JacobianCheckReport R;
  R.yagzhev = yagzhev_index(A, p_max);
  if (R.yagzhev.index) {
    int p = *R.yagzhev.index;
    int bound = A.d * ((p - 2) / (A.d - 1)) + 1;
    R.engel_bound = bound;
    R.engel = engel_index(A, bound);
    R.pass = R.engel.index.has_value();
  } else {
    R.engel.kind = "engel";
    R.pass = false;
  }

  PolyMap F = PolyMap::identity(A.n);
  HomogeneousMap H = depolarize(A);
  for (int i = 0; i < A.n; ++i)
    F.coords[i] = F.coords[i] - H.map.coords[i];
  R.jacobian_determinant = jacobian_det(F).to_string();
  return R;
}

}  // namespace multinil
