#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "multinil/algebra.hpp"

using namespace multinil;
using namespace testutil;

namespace {

DenseMatrix<MultiPoly> mul(const DenseMatrix<MultiPoly>& a,
                           const DenseMatrix<MultiPoly>& b,
                           const VarList& vars) {
  DenseMatrix<MultiPoly> c(a.n, b.m, MultiPoly(vars));
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.m; ++k)
      for (int j = 0; j < b.m; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
  return c;
}

bool is_identity(const DenseMatrix<MultiPoly>& a) {
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.m; ++j) {
      const MultiPoly& p = a.at(i, j);
      if (i == j ? !(p.is_constant() && p.constant_value() == 1) : !p.is_zero())
        return false;
    }
  return true;
}

void check_triple(const MultilinearAlgebra& A, int engel, int yagzhev,
                  int gerst) {
  NilReport e = engel_index(A, engel + 2);
  REQUIRE(e.index.has_value());
  CHECK(*e.index == engel);
  CHECK(!e.witness);

  NilReport y = yagzhev_index(A, yagzhev + 2);
  REQUIRE(y.index.has_value());
  CHECK(*y.index == yagzhev);
  CHECK(y.window_lo == yagzhev);
  CHECK(y.window_hi == A.d * (yagzhev - 1) + 1);

  NilReport g = gerstenhaber_index(A, gerst + 2);
  REQUIRE(g.index.has_value());
  CHECK(*g.index == gerst);

  // Engel index obeys the multilinear bound derived from the Yagzhev index.
  int bound = A.d * ((yagzhev - 2) / (A.d - 1)) + 1;
  CHECK(engel <= bound);
}

}  // namespace

TEST_SUITE("algebra-core") {

TEST_CASE("validate rejects malformed tensors") {
  MultilinearAlgebra A = tr_algebra(3);
  CHECK_NOTHROW(A.validate());

  MultilinearAlgebra bad = A;
  bad.d = 1;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = A;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = A;
  bad.tensor[{1, 0}] = {{2, Rational(1)}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = A;
  bad.tensor[{0, 3}] = {{0, Rational(1)}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = A;
  bad.tensor[{0, 0}] = {{1, Rational(0)}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = A;
  bad.tensor[{0, 0}] = {{1, Rational(1)}, {1, Rational(2)}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = A;
  bad.basis = {"a"};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("product lookups symmetrize the key") {
  MultilinearAlgebra A = tr_algebra(3);
  const SparseVec* ab = A.product({0, 1});
  const SparseVec* ba = A.product({1, 0});
  REQUIRE(ab);
  REQUIRE(ba);
  CHECK(*ab == *ba);
  CHECK(A.product({2, 2}) == nullptr);
}

TEST_CASE("mu is symmetric in its arguments") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 6; ++rep) {
    MultilinearAlgebra A = random_graded({1, 2, 3}, rng);
    Symbols sym(A);
    CHECK(mu(A, {sym.x, sym.z}) == mu(A, {sym.z, sym.x}));
  }

  MultilinearAlgebra A3;
  A3.d = 3;
  A3.n = 2;
  A3.tensor[{0, 0, 0}] = {{1, Rational(1)}};
  A3.validate();
  VarList vars = symbol_vars(2, {"a", "b", "c"});
  SymbolicElement a = generic_element(A3, vars, 0);
  SymbolicElement b = generic_element(A3, vars, 1);
  SymbolicElement c = generic_element(A3, vars, 2);
  SymbolicElement ref = mu(A3, {a, b, c});
  for (const auto& args : {std::vector{a, c, b}, std::vector{b, a, c},
                           std::vector{b, c, a}, std::vector{c, a, b},
                           std::vector{c, b, a}})
    CHECK(mu(A3, args) == ref);
}

TEST_CASE("index triples of the truncated polynomial algebras") {
  check_triple(tr_algebra(2), 2, 3, 2);
  check_triple(tr_algebra(3), 3, 4, 3);
  check_triple(tr_algebra(4), 4, 5, 4);
}

TEST_CASE("zero algebra has the minimal indices") {
  check_triple(zero_algebra(2, 2), 1, 2, 1);
  check_triple(zero_algebra(3, 2), 1, 2, 1);
}

TEST_CASE("non-nilpotent cube algebra: searches fail with witnesses") {
  MultilinearAlgebra A = cube_algebra();
  NilReport e = engel_index(A, 3);
  CHECK(!e.index);
  REQUIRE(e.witness.has_value());
  CHECK(e.witness->find("Ad_x^3") != std::string::npos);

  NilReport y = yagzhev_index(A, 4);
  CHECK(!y.index);
  CHECK(y.witness.has_value());

  NilReport g = gerstenhaber_index(A, 2);
  CHECK(!g.index);
  CHECK(g.witness.has_value());

  CHECK_THROWS_AS(engel_index(A, 0), std::invalid_argument);
  CHECK_THROWS_AS(yagzhev_index(A, 1), std::invalid_argument);
}

TEST_CASE("T_q vanishes off parity and survives on it for the cube algebra") {
  MultilinearAlgebra A = cube_algebra();
  VarList vars = symbol_vars(1, {"x"});
  SymbolicElement x = generic_element(A, vars, 0);
  for (int q = 2; q <= 12; q += 2) CHECK(T(A, q, x).is_zero());
  for (int q = 1; q <= 11; q += 2) CHECK(!T(A, q, x).is_zero());
}

TEST_CASE("T_q beyond the Yagzhev window vanishes identically") {
  MultilinearAlgebra A = tr_algebra(3);
  VarList vars = symbol_vars(A.n, {"x"});
  SymbolicElement x = generic_element(A, vars, 0);
  CHECK(!T(A, 2, x).is_zero());
  CHECK(!T(A, 3, x).is_zero());
  for (int q = 4; q <= 9; ++q) CHECK(T(A, q, x).is_zero());
}

TEST_CASE("gamma inverts g on nil algebras, both ways, exactly") {
  std::mt19937_64 rng(9);
  std::vector<MultilinearAlgebra> algs{tr_algebra(2), tr_algebra(3),
                                       random_graded({1, 1, 2, 2}, rng),
                                       random_graded({1, 2, 3}, rng)};
  for (const auto& A : algs) {
    NilReport y = yagzhev_index(A, 6);
    REQUIRE(y.index.has_value());
    int W = A.d * (*y.index - 1) + 1;
    Symbols sym(A);

    SymbolicElement inv = gamma(A, sym.x, W);
    CHECK((g_map(A, inv) - sym.x).is_zero());
    CHECK((gamma(A, g_map(A, sym.x), W) - sym.x).is_zero());

    // Differential of the inverse undoes the differential of g.
    SymbolicElement t = dg(A, sym.x, sym.z);
    CHECK((dgamma(A, g_map(A, sym.x), t, W) - sym.z).is_zero());
  }
}

TEST_CASE("dg matrix is unipotent with the expected polynomial inverse") {
  MultilinearAlgebra A = tr_algebra(3);
  VarList vars = symbol_vars(A.n, {"x"});
  SymbolicElement x = generic_element(A, vars, 0);
  DenseMatrix<MultiPoly> M = ad_matrix(A, x);

  // dg(x, z) = z - d * Ad_x(z), so its matrix is I - d M.
  DenseMatrix<MultiPoly> J(A.n, A.n, MultiPoly(vars));
  for (int i = 0; i < A.n; ++i) J.at(i, i) = MultiPoly::constant(1, vars);
  DenseMatrix<MultiPoly> Jg = J;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      Jg.at(i, j) -= M.at(i, j).scaled(Rational(A.d));

  CHECK(det(Jg) == MultiPoly::constant(1, vars));

  // Engel index 3 makes M^3 = 0; the Neumann series stops there.
  DenseMatrix<MultiPoly> Minv = J;
  DenseMatrix<MultiPoly> P = J;
  for (int k = 1; k <= 2; ++k) {
    P = mul(P, M, vars);
    for (int i = 0; i < A.n; ++i)
      for (int j = 0; j < A.n; ++j)
        Minv.at(i, j) += P.at(i, j).scaled(Rational(1 << k));
  }
  CHECK(is_identity(mul(Jg, Minv, vars)));
  CHECK(is_identity(mul(Minv, Jg, vars)));

  DenseMatrix<MultiPoly> M3 = mul(mul(M, M, vars), M, vars);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) CHECK(M3.at(i, j).is_zero());
}

TEST_CASE("ad_pow iterates the adjoint action") {
  MultilinearAlgebra A = tr_algebra(3);
  Symbols sym(A);
  SymbolicElement once = ad_pow(A, sym.x, 1, sym.z);
  CHECK(once == mu(A, {sym.x, sym.z}));
  CHECK(ad_pow(A, sym.x, 2, sym.z) == mu(A, {sym.x, once}));
  CHECK(ad_pow(A, sym.x, 3, sym.z).is_zero());
  CHECK(!ad_pow(A, sym.x, 2, sym.z).is_zero());
}

}  // TEST_SUITE
