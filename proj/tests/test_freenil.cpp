#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "multinil/ideal.hpp"

using namespace multinil;
using namespace testutil;

namespace {

SymbolicElement scale_elem(const SymbolicElement& e, const Rational& c) {
  SymbolicElement out = e;
  for (auto& p : out.coords) p = p.scaled(c);
  return out;
}

MlElement all_trees(TreePool& pool, int q) {
  std::vector<int> labels(q);
  for (int i = 0; i < q; ++i) labels[i] = i + 1;
  MlElement e(&pool, q);
  for (TreeId t : pool.enumerate_trees(labels)) e.add(t, 1);
  return e;
}

// Relabel a shape's leaves with perm in traversal order.
TreeId assign_labels(TreePool& pool, TreeId shape, const std::vector<int>& perm,
                     size_t& next) {
  if (pool.is_leaf(shape)) return pool.leaf(perm[next++]);
  std::vector<TreeId> ch;
  for (TreeId c : pool.children(shape))
    ch.push_back(assign_labels(pool, c, perm, next));
  return pool.node(std::move(ch));
}

MlElement row_element(const IdealBasis& B, const SparseVec& row) {
  MlElement e(B.pool, B.degree);
  for (const auto& [col, c] : row) e.add(B.tree_basis[col], c);
  return e;
}

void collect_leaf_counts(TreePool& pool, TreeId t, std::vector<int>& out) {
  if (pool.is_leaf(t)) return;
  out.push_back(pool.leaf_count(t));
  for (TreeId c : pool.children(t)) collect_leaf_counts(pool, c, out);
}

}  // namespace

TEST_SUITE("free-nil") {

TEST_CASE("polarized T_q is the all-trees sum scaled by (d!)^k") {
  for (int d : {2, 3}) {
    TreePool pool(d);
    for (int q = 1; q <= (d == 2 ? 6 : 5); q += d - 1) {
      int k = (q - 1) / (d - 1);
      Rational c = 1;
      for (int i = 0; i < k; ++i) c *= Rational(factorial(unsigned(d)));
      CHECK(polarize_T(pool, q) == all_trees(pool, q).scaled(c));
    }
  }
  TreePool pool(2);
  CHECK(polarize_T(pool, 3).to_string() ==
        "4*((1,2),3) + 4*((1,3),2) + 4*((2,3),1)");
}

TEST_CASE("diagonal evaluation of the polarization recovers q! T_q") {
  std::mt19937_64 rng(55);
  std::vector<MultilinearAlgebra> algs{tr_algebra(3),
                                       random_graded({1, 2, 3}, rng)};
  for (const auto& A : algs) {
    TreePool pool(A.d);
    VarList vars = symbol_vars(A.n, {"x"});
    SymbolicElement x = generic_element(A, vars, 0);
    for (int q = 1; q <= 6; ++q) {
      SymbolicElement lhs =
          polarize_T(pool, q).eval(A, std::vector<int>(q + 1, 0), {x});
      CHECK(lhs == scale_elem(T(A, q, x), Rational(factorial(unsigned(q)))));
    }
  }

  MultilinearAlgebra C = cube_algebra();
  TreePool pool3(C.d);
  VarList vars = symbol_vars(C.n, {"x"});
  SymbolicElement x = generic_element(C, vars, 0);
  for (int q : {1, 3, 5}) {
    SymbolicElement lhs =
        polarize_T(pool3, q).eval(C, std::vector<int>(q + 1, 0), {x});
    CHECK(lhs == scale_elem(T(C, q, x), Rational(factorial(unsigned(q)))));
  }
}

TEST_CASE("single-direction evaluation recovers (q-1)! dT_q") {
  MultilinearAlgebra A = tr_algebra(3);
  TreePool pool(A.d);
  Symbols sym(A);
  for (int q = 2; q <= 5; ++q) {
    std::vector<int> which(q + 1, 0);
    which[q] = 1;
    SymbolicElement lhs = polarize_T(pool, q).eval(A, which, {sym.x, sym.z});
    SymbolicElement rhs = scale_elem(dT(A, q, sym.x, sym.z),
                                     Rational(factorial(unsigned(q - 1))));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("engel elements: binary examples and a ternary brute force") {
  TreePool pool(2);
  MlElement e1 = engel_element(pool, 1);
  CHECK(e1.to_string() == "1*(1,2)");
  MlElement e2 = engel_element(pool, 2);
  CHECK(e2.to_string() == "1*((1,3),2) + 1*((2,3),1)");

  // Arity 3, n = 2: linearize mu(x,x,mu(x,x,t)) over all 24 slot fillings.
  TreePool pool3(3);
  MlElement brute(&pool3, 5);
  std::vector<int> perm{1, 2, 3, 4};
  do {
    TreeId inner =
        pool3.node({pool3.leaf(perm[2]), pool3.leaf(perm[3]), pool3.leaf(5)});
    brute.add(pool3.node({pool3.leaf(perm[0]), pool3.leaf(perm[1]), inner}), 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  MlElement lib = engel_element(pool3, 2);
  CHECK(lib == brute);
  CHECK(lib.support_size() == 6);
  for (const auto& [t, c] : lib.terms()) CHECK(c == 4);
}

TEST_CASE("symmetrized shapes against the labeling brute force") {
  TreePool pool(2);
  TreeId z = pool.leaf(0);
  MlElement comb = symmetrized_shape(pool, pool.node({pool.node({z, z}), z}), 3);
  CHECK(comb.support_size() == 3);
  for (const auto& [t, c] : comb.terms()) CHECK(c == 2);

  MlElement bal = symmetrized_shape(
      pool, pool.node({pool.node({z, z}), pool.node({z, z})}), 4);
  CHECK(bal.support_size() == 3);
  for (const auto& [t, c] : bal.terms()) CHECK(c == 8);

  CHECK(symmetrized_shape(pool, z, 1).to_string() == "1*1");

  for (int q = 2; q <= 5; ++q) {
    for (TreeId s : pool.enumerate_shapes(q)) {
      MlElement brute(&pool, q);
      std::vector<int> perm(q);
      for (int i = 0; i < q; ++i) perm[i] = i + 1;
      do {
        size_t next = 0;
        brute.add(assign_labels(pool, s, perm, next), 1);
      } while (std::next_permutation(perm.begin(), perm.end()));
      CHECK(symmetrized_shape(pool, s, q) == brute);

      Rational mass = 0;
      for (const auto& [t, c] : brute.terms()) mass += c;
      CHECK(mass == Rational(factorial(unsigned(q))));
    }
  }
}

TEST_CASE("smallest ideal component: one generator, one row") {
  TreePool pool(2);
  IdealBasis B = ideal_span(pool, 3, {3});
  CHECK(B.dim() == 3);
  CHECK(B.rank() == 1);
  REQUIRE(B.basis.matrix.rows.size() == 1);
  SparseVec expect{{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}};
  CHECK(B.basis.matrix.rows[0] == expect);
}

TEST_CASE("ideal rows vanish on every algebra satisfying the generators") {
  TreePool pool(2);
  IdealBasis B = ideal_span(pool, 4, {3});
  CHECK(B.dim() == 15);
  CHECK(B.rank() >= 1);

  std::mt19937_64 rng(77);
  std::vector<MultilinearAlgebra> algs{tr_algebra(2),
                                       random_graded({1, 1, 2, 2}, rng),
                                       random_graded({1, 1, 2, 2}, rng)};
  for (const auto& A : algs) {
    // These algebras really do satisfy T_3 = 0 (and more).
    Symbols sym(A);
    REQUIRE(T(A, 3, sym.x).is_zero());

    VarList vars = symbol_vars(A.n, {"a", "b", "c", "d"});
    std::vector<SymbolicElement> pts;
    for (int b = 0; b < 4; ++b) pts.push_back(generic_element(A, vars, b));
    std::vector<int> which{0, 0, 1, 2, 3};  // label L -> block L-1
    for (const auto& row : B.basis.matrix.rows)
      CHECK(row_element(B, row).eval(A, which, pts).is_zero());
  }
}

TEST_CASE("membership verdicts are stable across prescreen and workers") {
  TreePool pool(2);
  SpanOptions plain;
  SpanOptions noscreen;
  noscreen.prescreen = false;
  SpanOptions parallel;
  parallel.workers = 3;

  IdealBasis a = ideal_span(pool, 4, {3}, plain);
  IdealBasis b = ideal_span(pool, 4, {3}, noscreen);
  IdealBasis c = ideal_span(pool, 4, {3}, parallel);
  CHECK(a.basis.matrix.rows == b.basis.matrix.rows);
  CHECK(a.basis.matrix.rows == c.basis.matrix.rows);
  CHECK(a.basis.pivots == b.basis.pivots);
  CHECK(a.tree_basis == b.tree_basis);

  MlElement t4 = polarize_T(pool, 4);
  ContainsResult ra = contains(a, t4);
  ContainsResult rb = contains(b, t4);
  ContainsResult rc = contains(c, t4);
  CHECK(ra.member == rb.member);
  CHECK(ra.member == rc.member);
  if (ra.member) {
    REQUIRE(ra.certificate.has_value());
    CHECK(ra.certificate->digest() == rb.certificate->digest());
  }

  MlElement zero(&pool, 4);
  ContainsResult rz = contains(a, zero);
  CHECK(rz.member);
  REQUIRE(rz.certificate.has_value());
  for (const auto& c0 : rz.certificate->coeffs) CHECK(c0 == 0);
}

TEST_CASE("engel element of index 5 lies in the window-generated component") {
  TreePool pool(2);
  IdealBasis B = ideal_span(pool, 6, {4, 5, 6});
  CHECK(B.dim() == 945);
  CHECK(B.rank() == 230);
  ContainsResult r = contains(B, engel_element(pool, 5));
  CHECK(r.member);
  REQUIRE(r.certificate.has_value());
  size_t nonzero = 0;
  for (const auto& c : r.certificate->coeffs)
    if (c != 0) ++nonzero;
  CHECK(nonzero > 0);
}

TEST_CASE("ideal components are stable under label permutations") {
  TreePool pool(2);
  IdealBasis B = ideal_span(pool, 5, {3, 4, 5});
  std::vector<int> swap12{0, 2, 1, 3, 4, 5};
  std::vector<int> cycle{0, 2, 3, 4, 5, 1};
  for (const auto& row : B.basis.matrix.rows)
    for (const auto& map : {swap12, cycle}) {
      MlElement moved(&pool, 5);
      for (const auto& [col, c] : row)
        moved.add(pool.relabel(B.tree_basis[col], map), c);
      CHECK(contains(B, moved).member);
    }
}

TEST_CASE("every tall shape contains a window-sized subtree") {
  for (int d : {2, 3}) {
    TreePool pool(d);
    for (int p : {2, 3, 4}) {
      int hi = d * (p - 1) + 1;
      for (int m = hi + 1; m <= 9 + (d == 3 ? 2 : 0); ++m) {
        for (TreeId s : pool.enumerate_shapes(m)) {
          std::vector<int> counts;
          collect_leaf_counts(pool, s, counts);
          bool found = false;
          for (int c : counts) found = found || (c >= p && c <= hi);
          CHECK(found);
        }
      }
    }
  }
}

TEST_CASE("empty generator sets, bad degrees, and the ambient cap") {
  TreePool pool(2);
  IdealBasis empty = ideal_span(pool, 4, {});
  CHECK(empty.rank() == 0);
  CHECK(empty.dim() == 15);
  CHECK(!contains(empty, polarize_T(pool, 4)).member);
  CHECK(contains(empty, MlElement(&pool, 4)).member);

  CHECK_THROWS_AS(ideal_span(pool, 4, {6}), std::invalid_argument);
  CHECK_THROWS_AS(ideal_span(pool, 4, {0}), std::invalid_argument);
  TreePool pool3(3);
  CHECK_THROWS_AS(ideal_span(pool3, 5, {4}), std::invalid_argument);

  SpanOptions tiny;
  tiny.max_basis_trees = 100;
  CHECK_THROWS_AS(ideal_span(pool, 6, {5}, tiny), ResourceError);
}

}  // TEST_SUITE
