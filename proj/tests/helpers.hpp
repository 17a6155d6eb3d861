#pragma once

#include <random>
#include <vector>

#include "multinil/algebra.hpp"
#include "multinil/polymap.hpp"

namespace testutil {

using namespace multinil;

// Truncated polynomial algebra on s, s^(m+1) = 0: basis e_i ~ s^i,
// mu(e_i, e_j) = e_{i+j} when i + j <= m.
inline MultilinearAlgebra tr_algebra(int m) {
  MultilinearAlgebra A;
  A.d = 2;
  A.n = m;
  for (int i = 1; i <= m; ++i)
    for (int j = i; j <= m; ++j)
      if (i + j <= m)
        A.tensor[{i - 1, j - 1}] = {{i + j - 1, Rational(1)}};
  return A;
}

// One-dimensional ternary algebra mu(e1,e1,e1) = e1 (not nilpotent).
inline MultilinearAlgebra cube_algebra() {
  MultilinearAlgebra A;
  A.d = 3;
  A.n = 1;
  A.tensor[{0, 0, 0}] = {{0, Rational(1)}};
  return A;
}

inline MultilinearAlgebra zero_algebra(int d, int n) {
  MultilinearAlgebra A;
  A.d = d;
  A.n = n;
  return A;
}

// Random weight-graded binary algebra: mu(V_a, V_b) subset of V_{a+b}.
// weights = (1,1,2,2) kills every T_q with q >= 3; weights = (1,2,3) kills
// every T_q with q >= 4 while T_2, T_3 may survive.
inline MultilinearAlgebra random_graded(const std::vector<int>& weights,
                                        std::mt19937_64& rng) {
  MultilinearAlgebra A;
  A.d = 2;
  A.n = static_cast<int>(weights.size());
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int i = 0; i < A.n; ++i)
    for (int j = i; j < A.n; ++j) {
      int w = weights[i] + weights[j];
      SparseVec row;
      for (int k = 0; k < A.n; ++k)
        if (weights[k] == w) {
          int c = coef(rng);
          if (c != 0) row.emplace_back(k, Rational(c));
        }
      if (!row.empty()) A.tensor[{i, j}] = std::move(row);
    }
  return A;
}

inline std::vector<MultilinearAlgebra> random_graded_family(int count,
                                                            uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<MultilinearAlgebra> out;
  for (int i = 0; i < count; ++i)
    out.push_back(
        random_graded(i % 2 ? std::vector<int>{1, 2, 3}
                            : std::vector<int>{1, 1, 2, 2},
                      rng));
  return out;
}

// Random symmetric tensor of the given arity and dimension.
inline MultilinearAlgebra random_tensor(int d, int n, std::mt19937_64& rng) {
  MultilinearAlgebra A;
  A.d = d;
  A.n = n;
  std::uniform_int_distribution<int> coef(-2, 2);
  std::vector<int> key(d, 0);
  auto rec = [&](auto&& self, int i, int lo) -> void {
    if (i == d) {
      SparseVec out;
      for (int k = 0; k < n; ++k) {
        int c = coef(rng);
        if (c != 0) out.emplace_back(k, Rational(c));
      }
      if (!out.empty()) A.tensor[key] = std::move(out);
      return;
    }
    for (int v = lo; v < n; ++v) {
      key[i] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, 0);
  return A;
}

// Random homogeneous degree-d polynomial map on n coordinates.
inline PolyMap random_homogeneous(int n, int d, std::mt19937_64& rng) {
  VarList vars = indexed_vars({"X"}, n);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::vector<Expvec> exps;
  Expvec cur(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      cur[i] = static_cast<uint32_t>(left);
      exps.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[i] = static_cast<uint32_t>(k);
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  PolyMap f;
  f.n = n;
  f.vars = vars;
  for (int c = 0; c < n; ++c) {
    MultiPoly p(vars);
    for (const auto& e : exps) p.add_term(e, Rational(coef(rng)));
    f.coords.push_back(std::move(p));
  }
  return f;
}

// Generic symbolic point of A over fresh variables; prefix blocks x, z.
struct Symbols {
  VarList vars;
  SymbolicElement x, z;
  explicit Symbols(const MultilinearAlgebra& A)
      : vars(symbol_vars(A.n, {"x", "z"})),
        x(generic_element(A, vars, 0)),
        z(generic_element(A, vars, 1)) {}
};

}  // namespace testutil
