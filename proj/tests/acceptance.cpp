// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "multinil/theorems.hpp"

using namespace multinil;
using namespace testutil;

namespace {

int g_failed = 0;

void line(int num, const std::string& name, bool ok,
          const std::string& detail = "") {
  std::printf("%s: %d %s%s%s\n", ok ? "PASS" : "FAIL", num, name.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

SymbolicElement scale_elem(const SymbolicElement& e, const Rational& c) {
  SymbolicElement out = e;
  for (auto& p : out.coords) p = p.scaled(c);
  return out;
}

// Diagonal value of a single shape: all leaves at one generic point.
bool shape_diag_vanishes(const MultilinearAlgebra& A, TreePool& pool,
                         TreeId shape) {
  VarList vars = symbol_vars(A.n, {"x"});
  SymbolicElement x = generic_element(A, vars, 0);
  MlElement e(&pool, pool.leaf_count(shape));
  e.add(shape, 1);
  return e.eval(A, {0}, {x}).is_zero();
}

bool window_satisfied(const MultilinearAlgebra& A, const std::vector<int>& J) {
  Symbols sym(A);
  for (int j : J)
    if (!T(A, j, sym.x).is_zero()) return false;
  return true;
}

}  // namespace

int main() {
  TheoremReport r1, r2, r3;

  {  // 1. d=2, p=3: n=3 certified on the 15-dimensional degree-4 component.
    auto t0 = std::chrono::steady_clock::now();
    r1 = verify_main_theorem(2, 3);
    double dt = seconds(t0);
    std::ostringstream d;
    d << "n=" << (r1.n ? *r1.n : -1) << ", dim=" << r1.space_dim << ", "
      << dt << "s";
    line(1, "main theorem d=2 p=3",
         r1.verdict == "PASS" && r1.n == 3 && r1.degree == 4 &&
             r1.space_dim == 15 && dt < 10.0,
         d.str());
  }

  {  // 2. d=2, p=4: n=5 on the 945-dimensional degree-6 component.
    auto t0 = std::chrono::steady_clock::now();
    r2 = verify_main_theorem(2, 4);
    double dt = seconds(t0);
    std::ostringstream d;
    d << "n=" << (r2.n ? *r2.n : -1) << ", dim=" << r2.space_dim << ", "
      << dt << "s";
    line(2, "main theorem d=2 p=4",
         r2.verdict == "PASS" && r2.n == 5 && r2.degree == 6 &&
             r2.space_dim == 945 && dt < 600.0,
         d.str());
  }

  {  // 3. Binary claim: shapes, T_6, and the 5-Engel element at degree 7.
    auto t0 = std::chrono::steady_clock::now();
    r3 = verify_binary_claim();
    double dt = seconds(t0);
    int shapes = 0;
    bool shapes_ok = true, t6 = false, engel5 = false;
    for (const auto& s : r3.subchecks) {
      if (s.name.rfind("shape", 0) == 0) {
        ++shapes;
        shapes_ok = shapes_ok && s.member;
      }
      if (s.name == "T6") t6 = s.member;
      if (s.name == "engel5") engel5 = s.member;
    }
    std::ostringstream d;
    d << shapes << " shapes, dim=" << r3.space_dim << ", " << dt << "s";
    line(3, "binary claim",
         r3.verdict == "PASS" && r3.space_dim == 10395 && shapes == 11 &&
             shapes_ok && t6 && engel5 && dt < 3600.0,
         d.str());
  }

  {  // 4. Stretch d=3, p=4; NOT_ATTEMPTED under the cap is acceptable.
    auto t0 = std::chrono::steady_clock::now();
    TheoremReport r = verify_main_theorem(3, 4);
    double dt = seconds(t0);
    std::ostringstream d;
    d << r.verdict << ", " << dt << "s";
    bool ok;
    if (r.verdict == "PASS")
      ok = r.n == 4 && r.degree == 9 && r.space_dim == 15400;
    else
      ok = r.verdict == "NOT_ATTEMPTED";
    line(4, "stretch d=3 p=4", ok, d.str());
  }

  {  // 5. Index triples of the truncated algebras, with the binary bound.
    bool ok = true;
    std::ostringstream d;
    const int expect[3][3] = {{2, 3, 2}, {3, 4, 3}, {4, 5, 4}};
    for (int m = 2; m <= 4; ++m) {
      MultilinearAlgebra A = tr_algebra(m);
      NilReport e = engel_index(A, 7);
      NilReport y = yagzhev_index(A, 8);
      NilReport g = gerstenhaber_index(A, 7);
      bool found = e.index && y.index && g.index;
      ok = ok && found;
      if (!found) continue;
      ok = ok && *e.index == expect[m - 2][0] && *y.index == expect[m - 2][1] &&
           *g.index == expect[m - 2][2];
      ok = ok && *e.index <= 2 * (*y.index - 2) + 1;
      d << "Tr(" << m << ")=(" << *e.index << "," << *y.index << ","
        << *g.index << ") ";
    }
    line(5, "finite-dimensional index triples", ok, d.str());
  }

  {  // 6. Exact inverse identities on every nil test algebra.
    std::vector<MultilinearAlgebra> algs{tr_algebra(2), tr_algebra(3),
                                         tr_algebra(4), zero_algebra(2, 3)};
    for (const auto& A : random_graded_family(4, 2026)) algs.push_back(A);
    bool ok = true;
    for (const auto& A : algs) {
      NilReport y = yagzhev_index(A, 8);
      if (!y.index) {
        ok = false;
        break;
      }
      int W = A.d * (*y.index - 1) + 1;
      Symbols sym(A);
      SymbolicElement inv = gamma(A, sym.x, W);
      ok = ok && (g_map(A, inv) - sym.x).is_zero();
      ok = ok && (gamma(A, g_map(A, sym.x), W) - sym.x).is_zero();
      SymbolicElement t = dg(A, sym.x, sym.z);
      ok = ok && (dgamma(A, g_map(A, sym.x), t, W) - sym.z).is_zero();
    }
    std::ostringstream d;
    d << algs.size() << " algebras, zero residuals";
    line(6, "inverse identities", ok, d.str());
  }

  {  // 7. Polarization: diagonal identity and depolarize-polarize round trip.
    bool ok = true;
    std::mt19937_64 rng(314);
    std::vector<MultilinearAlgebra> algs{tr_algebra(2), tr_algebra(3),
                                         zero_algebra(2, 2),
                                         random_graded({1, 1, 2, 2}, rng),
                                         random_graded({1, 2, 3}, rng)};
    for (const auto& A : algs) {
      TreePool pool(A.d);
      VarList vars = symbol_vars(A.n, {"x"});
      SymbolicElement x = generic_element(A, vars, 0);
      for (int q = 1; q <= 6; ++q) {
        SymbolicElement lhs =
            polarize_T(pool, q).eval(A, std::vector<int>(q + 1, 0), {x});
        ok = ok &&
             lhs == scale_elem(T(A, q, x), Rational(factorial(unsigned(q))));
      }
    }
    MultilinearAlgebra C = cube_algebra();
    TreePool pool3(C.d);
    VarList vars = symbol_vars(C.n, {"x"});
    SymbolicElement x = generic_element(C, vars, 0);
    for (int q : {1, 3, 5}) {
      SymbolicElement lhs =
          polarize_T(pool3, q).eval(C, std::vector<int>(q + 1, 0), {x});
      ok = ok && lhs == scale_elem(T(C, q, x), Rational(factorial(unsigned(q))));
    }

    int maps = 0;
    for (int rep = 0; rep < 24 && maps < 20; ++rep) {
      int d = 2 + rep % 2;
      int n = 1 + rep % 4;
      PolyMap H = random_homogeneous(n, d, rng);
      bool zero = true;
      for (const auto& p : H.coords) zero = zero && p.is_zero();
      if (zero) continue;
      ++maps;
      PolyMap back = depolarize(polarize(HomogeneousMap::checked(H, d))).map;
      for (int c = 0; c < n; ++c) ok = ok && back.coords[c] == H.coords[c];
    }
    ok = ok && maps >= 20;
    std::ostringstream d;
    d << "6 algebras, " << maps << " random maps";
    line(7, "polarization identities", ok, d.str());
  }

  {  // 8. Soundness: certified memberships vanish on satisfying algebras.
    bool ok = r1.verdict == "PASS" && r2.verdict == "PASS" &&
              r3.verdict == "PASS";
    std::vector<MultilinearAlgebra> algs{tr_algebra(2), tr_algebra(3)};
    for (const auto& A : random_graded_family(10, 99)) algs.push_back(A);

    int checked_345 = 0, checked_456 = 0, checked_45 = 0;
    TreePool pool(2);
    auto shapes7 = pool.enumerate_shapes(7);
    for (const auto& A : algs) {
      Symbols sym(A);
      // n=3 certificate: algebras with T_3 = T_4 = T_5 = 0 are 3-Engel.
      if (window_satisfied(A, {3, 4, 5})) {
        ++checked_345;
        ok = ok && ad_pow(A, sym.x, 3, sym.z).is_zero();
      }
      // n=5 certificate: algebras with T_4 = T_5 = T_6 = 0 are 5-Engel.
      if (window_satisfied(A, {4, 5, 6})) {
        ++checked_456;
        ok = ok && ad_pow(A, sym.x, 5, sym.z).is_zero();
      }
      // Binary claim: with T_4 = T_5 = 0, all 7-leaf products vanish,
      // T_6 vanishes, and the algebra is 5-Engel.
      if (window_satisfied(A, {4, 5})) {
        ++checked_45;
        for (TreeId s : shapes7) ok = ok && shape_diag_vanishes(A, pool, s);
        ok = ok && T(A, 6, sym.x).is_zero();
        ok = ok && ad_pow(A, sym.x, 5, sym.z).is_zero();
      }
    }
    // The families must actually exercise the implications.
    ok = ok && checked_345 >= 2 && checked_456 >= 6 && checked_45 >= 6;
    std::ostringstream d;
    d << checked_345 << "/" << checked_456 << "/" << checked_45
      << " algebras per window";
    line(8, "soundness cross-check", ok, d.str());
  }

  {  // 9. Component dimensions by enumeration, recurrence, and shape sum.
    bool ok = true;
    const Integer binary[] = {1, 1, 3, 15, 105, 945, 10395};  // q = 1..7
    TreePool pool2(2);
    for (int q = 1; q <= 7; ++q) {
      std::vector<int> labels(q);
      for (int i = 0; i < q; ++i) labels[i] = i + 1;
      Integer enumerated(static_cast<long>(pool2.enumerate_trees(labels).size()));
      ok = ok && enumerated == binary[q - 1];
      ok = ok && count_trees_formula(2, q) == binary[q - 1];
      Rational by_shapes = 0;
      for (TreeId s : pool2.enumerate_shapes(q))
        by_shapes += Rational(factorial(unsigned(q))) /
                     Rational(pool2.automorphisms(s));
      ok = ok && by_shapes == Rational(binary[q - 1]);
    }
    TreePool pool3(3);
    const std::pair<int, Integer> ternary[] = {
        {1, 1}, {3, 1}, {5, 10}, {7, 280}, {9, 15400}};
    for (auto [q, want] : ternary) {
      std::vector<int> labels(q);
      for (int i = 0; i < q; ++i) labels[i] = i + 1;
      Integer enumerated(static_cast<long>(pool3.enumerate_trees(labels).size()));
      ok = ok && enumerated == want;
      ok = ok && count_trees_formula(3, q) == want;
      Rational by_shapes = 0;
      for (TreeId s : pool3.enumerate_shapes(q))
        by_shapes += Rational(factorial(unsigned(q))) /
                     Rational(pool3.automorphisms(s));
      ok = ok && by_shapes == Rational(want);
    }
    line(9, "dimension formulas", ok);
  }

  return g_failed == 0 ? 0 : 1;
}
