#include "multinil/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "multinil/tree.hpp"

namespace multinil {

void MultilinearAlgebra::validate() const {
  if (d < 2) throw ValidationError("arity must be at least 2");
  if (n < 1) throw ValidationError("dimension must be at least 1");
  if (!basis.empty() && static_cast<int>(basis.size()) != n)
    throw ValidationError("basis name count differs from dimension");
  for (const auto& [key, out] : tensor) {
    if (static_cast<int>(key.size()) != d)
      throw ValidationError("tensor key arity mismatch");
    if (!std::is_sorted(key.begin(), key.end()))
      throw ValidationError("tensor key not normalized (must be sorted)");
    for (int i : key)
      if (i < 0 || i >= n) throw ValidationError("tensor input index out of range");
    int prev = -1;
    for (const auto& [j, v] : out) {
      if (j < 0 || j >= n)
        throw ValidationError("tensor output index out of range");
      if (j <= prev) throw ValidationError("tensor output not sorted");
      if (v == 0) throw ValidationError("explicit zero in tensor");
      prev = j;
    }
  }
}

const SparseVec* MultilinearAlgebra::product(std::vector<int> key) const {
  std::sort(key.begin(), key.end());
  auto it = tensor.find(key);
  return it == tensor.end() ? nullptr : &it->second;
}

std::string MultilinearAlgebra::basis_name(int i) const {
  if (!basis.empty()) return basis.at(i);
  return "e" + std::to_string(i + 1);
}

bool SymbolicElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const MultiPoly& p) { return p.is_zero(); });
}

SymbolicElement SymbolicElement::operator+(const SymbolicElement& o) const {
  if (coords.size() != o.coords.size())
    throw std::invalid_argument("element dimension mismatch");
  SymbolicElement r;
  r.coords.reserve(coords.size());
  for (size_t i = 0; i < coords.size(); ++i)
    r.coords.push_back(coords[i] + o.coords[i]);
  return r;
}

SymbolicElement SymbolicElement::operator-(const SymbolicElement& o) const {
  if (coords.size() != o.coords.size())
    throw std::invalid_argument("element dimension mismatch");
  SymbolicElement r;
  r.coords.reserve(coords.size());
  for (size_t i = 0; i < coords.size(); ++i)
    r.coords.push_back(coords[i] - o.coords[i]);
  return r;
}

VarList symbol_vars(int n, const std::vector<std::string>& prefixes) {
  return indexed_vars(prefixes, n);
}

SymbolicElement generic_element(const MultilinearAlgebra& A, const VarList& vars,
                                int block) {
  SymbolicElement x;
  x.coords.reserve(A.n);
  for (int i = 0; i < A.n; ++i)
    x.coords.push_back(MultiPoly::variable(vars, block * A.n + i));
  return x;
}

SymbolicElement zero_element(const MultilinearAlgebra& A, const VarList& vars) {
  SymbolicElement z;
  z.coords.assign(A.n, MultiPoly(vars));
  return z;
}

SymbolicElement mu(const MultilinearAlgebra& A,
                   const std::vector<SymbolicElement>& args) {
  if (static_cast<int>(args.size()) != A.d)
    throw std::invalid_argument("mu expects exactly d arguments");
  VarList vars;
  for (const auto& a : args) {
    if (static_cast<int>(a.coords.size()) != A.n)
      throw std::invalid_argument("mu argument dimension mismatch");
    if (!vars && !a.coords.empty()) vars = a.coords.front().vars();
  }
  SymbolicElement r;
  r.coords.assign(A.n, MultiPoly(vars));
  for (const auto& [key, out] : A.tensor) {
    // Sum over the distinct permutations of the canonical key.
    std::vector<int> perm = key;
    do {
      MultiPoly factor = args[0].coords[perm[0]];
      for (int k = 1; k < A.d && !factor.is_zero(); ++k)
        factor *= args[k].coords[perm[k]];
      if (factor.is_zero()) continue;
      for (const auto& [j, v] : out) r.coords[j] += factor.scaled(v);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return r;
}

SymbolicElement ad_pow(const MultilinearAlgebra& A, const SymbolicElement& x,
                       int k, const SymbolicElement& y) {
  if (k < 1) throw std::invalid_argument("ad_pow needs k >= 1");
  std::vector<SymbolicElement> args(A.d, x);
  SymbolicElement r = y;
  for (int i = 0; i < k; ++i) {
    args.back() = r;
    r = mu(A, args);
  }
  return r;
}

namespace {

// Ordered compositions of q into exactly d positive parts.
template <typename Fn>
void for_each_composition(int q, int d, Fn&& fn) {
  std::vector<int> parts(d, 1);
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == d - 1) {
      parts[slot] = left;
      fn(parts);
      return;
    }
    for (int i = 1; i <= left - (d - 1 - slot); ++i) {
      parts[slot] = i;
      self(self, slot + 1, left - i);
    }
  };
  if (q >= d) rec(rec, 0, q);
}

std::vector<SymbolicElement> T_table(const MultilinearAlgebra& A, int q,
                                     const SymbolicElement& x) {
  std::vector<SymbolicElement> t;
  t.reserve(q + 1);
  VarList vars = x.coords.empty() ? nullptr : x.coords.front().vars();
  SymbolicElement zero;
  zero.coords.assign(A.n, MultiPoly(vars));
  t.push_back(zero);  // unused slot 0
  t.push_back(x);
  for (int m = 2; m <= q; ++m) {
    SymbolicElement acc = zero;
    if ((m - 1) % (A.d - 1) == 0) {
      std::vector<SymbolicElement> args(A.d);
      for_each_composition(m, A.d, [&](const std::vector<int>& parts) {
        bool live = true;
        for (int i = 0; i < A.d; ++i) {
          if ((parts[i] - 1) % (A.d - 1) != 0) {
            live = false;
            break;
          }
          args[i] = t[parts[i]];
        }
        if (live) acc = acc + mu(A, args);
      });
    }
    t.push_back(std::move(acc));
  }
  return t;
}

}  // namespace

SymbolicElement T(const MultilinearAlgebra& A, int q, const SymbolicElement& x) {
  if (q < 1) throw std::invalid_argument("T needs q >= 1");
  return T_table(A, q, x).back();
}

SymbolicElement g_map(const MultilinearAlgebra& A, const SymbolicElement& x) {
  std::vector<SymbolicElement> args(A.d, x);
  return x - mu(A, args);
}

SymbolicElement gamma(const MultilinearAlgebra& A, const SymbolicElement& y,
                      int D) {
  if (D < 1) throw std::invalid_argument("gamma needs D >= 1");
  auto t = T_table(A, D, y);
  SymbolicElement acc = t[1];
  for (int j = 2; j <= D; ++j) acc = acc + t[j];
  return acc;
}

SymbolicElement dg(const MultilinearAlgebra& A, const SymbolicElement& x,
                   const SymbolicElement& z) {
  SymbolicElement a = ad_pow(A, x, 1, z);
  for (auto& c : a.coords) c = c.scaled(Rational(A.d));
  return z - a;
}

namespace {

std::vector<SymbolicElement> dT_table(const MultilinearAlgebra& A, int D,
                                      const SymbolicElement& y,
                                      const SymbolicElement& t) {
  auto tq = T_table(A, D, y);
  VarList vars = y.coords.empty() ? nullptr : y.coords.front().vars();
  SymbolicElement zero;
  zero.coords.assign(A.n, MultiPoly(vars));
  std::vector<SymbolicElement> dt;
  dt.reserve(D + 1);
  dt.push_back(zero);
  dt.push_back(t);
  for (int m = 2; m <= D; ++m) {
    SymbolicElement acc = zero;
    std::vector<SymbolicElement> args(A.d);
    for_each_composition(m, A.d, [&](const std::vector<int>& parts) {
      for (int k = 0; k < A.d; ++k) {
        for (int i = 0; i < A.d; ++i)
          args[i] = (i == k) ? dt[parts[i]] : tq[parts[i]];
        acc = acc + mu(A, args);
      }
    });
    dt.push_back(std::move(acc));
  }
  return dt;
}

}  // namespace

SymbolicElement dT(const MultilinearAlgebra& A, int q, const SymbolicElement& y,
                   const SymbolicElement& t) {
  if (q < 1) throw std::invalid_argument("dT needs q >= 1");
  return dT_table(A, q, y, t).back();
}

SymbolicElement dgamma(const MultilinearAlgebra& A, const SymbolicElement& y,
                       const SymbolicElement& t, int D) {
  if (D < 1) throw std::invalid_argument("dgamma needs D >= 1");
  auto dt = dT_table(A, D, y, t);
  SymbolicElement acc = dt[1];
  for (int j = 2; j <= D; ++j) acc = acc + dt[j];
  return acc;
}

DenseMatrix<MultiPoly> ad_matrix(const MultilinearAlgebra& A,
                                 const SymbolicElement& x) {
  VarList vars = x.coords.empty() ? nullptr : x.coords.front().vars();
  DenseMatrix<MultiPoly> M(A.n, A.n, MultiPoly(vars));
  SymbolicElement ej;
  ej.coords.assign(A.n, MultiPoly(vars));
  for (int j = 0; j < A.n; ++j) {
    ej.coords[j] = MultiPoly::constant(1, vars);
    SymbolicElement col = ad_pow(A, x, 1, ej);
    for (int i = 0; i < A.n; ++i) M.at(i, j) = col.coords[i];
    ej.coords[j] = MultiPoly(vars);
  }
  return M;
}

namespace {

DenseMatrix<MultiPoly> mat_mul(const DenseMatrix<MultiPoly>& a,
                               const DenseMatrix<MultiPoly>& b,
                               const VarList& vars) {
  DenseMatrix<MultiPoly> r(a.n, b.m, MultiPoly(vars));
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.m; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.m; ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  return r;
}

bool mat_is_zero(const DenseMatrix<MultiPoly>& a) {
  return std::all_of(a.data.begin(), a.data.end(),
                     [](const MultiPoly& p) { return p.is_zero(); });
}

}  // namespace

NilReport engel_index(const MultilinearAlgebra& A, int n_max) {
  if (n_max < 1) throw std::invalid_argument("engel_index needs n_max >= 1");
  NilReport rep;
  rep.kind = "engel";
  rep.bound = n_max;
  VarList vars = symbol_vars(A.n, {"x"});
  SymbolicElement x = generic_element(A, vars, 0);
  DenseMatrix<MultiPoly> M = ad_matrix(A, x);
  DenseMatrix<MultiPoly> P = M;
  for (int k = 1; k <= n_max; ++k) {
    if (mat_is_zero(P)) {
      rep.index = k;
      return rep;
    }
    if (k < n_max) P = mat_mul(P, M, vars);
  }
  for (int i = 0; i < P.n && !rep.witness; ++i)
    for (int j = 0; j < P.m; ++j)
      if (!P.at(i, j).is_zero()) {
        std::ostringstream os;
        os << "Ad_x^" << n_max << " matrix entry (" << i + 1 << "," << j + 1
           << ") = " << P.at(i, j).to_string();
        rep.witness = os.str();
        break;
      }
  return rep;
}

NilReport yagzhev_index(const MultilinearAlgebra& A, int p_max) {
  if (p_max < 2) throw std::invalid_argument("yagzhev_index needs p_max >= 2");
  NilReport rep;
  rep.kind = "yagzhev";
  rep.bound = p_max;
  int Q = A.d * (p_max - 1) + 1;
  VarList vars = symbol_vars(A.n, {"x"});
  SymbolicElement x = generic_element(A, vars, 0);
  auto t = T_table(A, Q, x);
  std::vector<bool> vanish(Q + 1, true);
  for (int q = 2; q <= Q; ++q) vanish[q] = t[q].is_zero();
  for (int p = 2; p <= p_max; ++p) {
    int hi = A.d * (p - 1) + 1;
    bool ok = true;
    for (int q = p; q <= hi; ++q) ok = ok && vanish[q];
    if (ok) {
      rep.index = p;
      rep.window_lo = p;
      rep.window_hi = hi;
      return rep;
    }
  }
  for (int q = p_max; q <= Q; ++q)
    if (!vanish[q]) {
      std::ostringstream os;
      os << "T_" << q << "(x) != 0";
      for (int i = 0; i < A.n; ++i)
        if (!t[q].coords[i].is_zero()) {
          os << "; coordinate " << A.basis_name(i) << " = "
             << t[q].coords[i].to_string();
          break;
        }
      rep.witness = os.str();
      break;
    }
  return rep;
}

NilReport gerstenhaber_index(const MultilinearAlgebra& A, int n_max) {
  if (n_max < 1)
    throw std::invalid_argument("gerstenhaber_index needs n_max >= 1");
  NilReport rep;
  rep.kind = "gerstenhaber";
  rep.bound = n_max;
  int K = A.d * (n_max - 1) + 1;  // largest internal-node count checked
  VarList vars = symbol_vars(A.n, {"x"});
  SymbolicElement x = generic_element(A, vars, 0);

  TreePool pool(A.d);
  std::map<TreeId, SymbolicElement> memo;
  auto eval_shape = [&](auto&& self, TreeId u) -> const SymbolicElement& {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    SymbolicElement v;
    if (pool.is_leaf(u)) {
      v = x;
    } else {
      std::vector<SymbolicElement> args;
      for (TreeId c : pool.children(u)) args.push_back(self(self, c));
      v = mu(A, args);
    }
    return memo.emplace(u, std::move(v)).first->second;
  };

  std::vector<bool> vanish(K + 1, true);
  std::vector<std::string> bad(K + 1);
  for (int k = 1; k <= K; ++k) {
    int leaves = k * (A.d - 1) + 1;
    for (TreeId s : pool.enumerate_shapes(leaves)) {
      const SymbolicElement& v = eval_shape(eval_shape, s);
      if (!v.is_zero()) {
        vanish[k] = false;
        if (bad[k].empty()) bad[k] = pool.code(s);
      }
    }
  }
  for (int m = 1; m <= n_max; ++m) {
    int hi = A.d * (m - 1) + 1;
    bool ok = true;
    for (int k = m; k <= hi; ++k) ok = ok && vanish[k];
    if (ok) {
      rep.index = m;
      rep.window_lo = m;
      rep.window_hi = hi;
      return rep;
    }
  }
  for (int k = n_max; k <= K; ++k)
    if (!vanish[k]) {
      rep.witness = "tree " + bad[k] + " evaluates nonzero";
      break;
    }
  return rep;
}

}  // namespace multinil
