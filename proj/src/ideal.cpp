#include "multinil/ideal.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "multinil/modp.hpp"
#include "multinil/theorems.hpp"

namespace multinil {

namespace {

// Set partitions of `labels` into exactly k unordered nonempty blocks,
// blocks listed in order of their minimal elements.
template <typename Fn>
void for_each_partition(const std::vector<int>& labels, int k, Fn&& fn) {
  std::vector<std::vector<int>> blocks;
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == labels.size()) {
      if (static_cast<int>(blocks.size()) == k) fn(blocks);
      return;
    }
    size_t remaining = labels.size() - i;
    // Indexed loop: recursion grows and shrinks `blocks`, which reallocates.
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (blocks.size() + remaining - 1 >= static_cast<size_t>(k)) {
        blocks[b].push_back(labels[i]);
        self(self, i + 1);
        blocks[b].pop_back();
      }
    }
    if (blocks.size() < static_cast<size_t>(k)) {
      blocks.push_back({labels[i]});
      self(self, i + 1);
      blocks.pop_back();
    }
  };
  if (k >= 1 && labels.size() >= static_cast<size_t>(k)) rec(rec, 0);
}

// All ways to pick one tree per block; fn(trees).
template <typename Fn>
void for_each_tree_tuple(TreePool& pool,
                         const std::vector<std::vector<int>>& blocks, Fn&& fn) {
  std::vector<std::vector<TreeId>> choices;
  choices.reserve(blocks.size());
  for (const auto& b : blocks) {
    choices.push_back(pool.enumerate_trees(b));
    if (choices.back().empty()) return;  // off-parity block
  }
  std::vector<size_t> pick(blocks.size(), 0);
  std::vector<TreeId> trees(blocks.size());
  for (;;) {
    for (size_t i = 0; i < pick.size(); ++i) trees[i] = choices[i][pick[i]];
    fn(trees);
    size_t k = 0;
    while (k < pick.size()) {
      if (++pick[k] < choices[k].size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == pick.size()) break;
  }
}

// Substitution instances of the degree-j generator at degree m: plug trees
// over a j-block partition of {1..m} into the generator's leaf slots.
void substitution_rows(TreePool& pool, const MlElement& gen, int j, int m,
                       std::vector<MlElement>& out) {
  std::vector<int> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = i + 1;
  // Shift generator labels out of the working range so grafts can't collide
  // with labels introduced by earlier grafts.
  int shift = m + 1;
  std::vector<int> shift_map(j + 1, 0);
  for (int k = 1; k <= j; ++k) shift_map[k] = k + shift;
  std::vector<std::pair<TreeId, Rational>> shifted;
  for (const auto& [t, c] : gen.terms())
    shifted.emplace_back(pool.relabel(t, shift_map), c);

  for_each_partition(labels, j, [&](const std::vector<std::vector<int>>& blocks) {
    for_each_tree_tuple(pool, blocks, [&](const std::vector<TreeId>& trees) {
      MlElement row(&pool, m);
      for (const auto& [t, c] : shifted) {
        TreeId r = t;
        for (int k = 0; k < j; ++k) r = pool.graft(r, k + 1 + shift, trees[k]);
        row.add(r, c);
      }
      if (!row.is_zero()) out.push_back(std::move(row));
    });
  });
}

// Wrap rows: node(a, w_1..w_{d-1}) with a an inner spanning element
// relabeled onto a size-m' subset and the w's covering the complement.
void wrap_rows(TreePool& pool, const std::vector<MlElement>& inner, int mp,
               int m, std::vector<MlElement>& out) {
  int d = pool.arity();
  std::vector<int> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = i + 1;
  // Choose the inner label subset S (as a sorted combination).
  std::vector<int> sel(mp);
  auto comb = [&](auto&& self, int slot, int start) -> void {
    if (slot == mp) {
      std::vector<int> relab(mp + 1, 0);
      for (int k = 0; k < mp; ++k) relab[k + 1] = sel[k];
      std::vector<int> rest;
      for (int l : labels)
        if (!std::binary_search(sel.begin(), sel.end(), l)) rest.push_back(l);
      for_each_partition(rest, d - 1, [&](const std::vector<std::vector<int>>& blocks) {
        for_each_tree_tuple(pool, blocks, [&](const std::vector<TreeId>& trees) {
          for (const MlElement& a : inner) {
            MlElement row(&pool, m);
            for (const auto& [t, c] : a.terms()) {
              std::vector<TreeId> ch;
              ch.reserve(d);
              ch.push_back(pool.relabel(t, relab));
              for (TreeId w : trees) ch.push_back(w);
              row.add(pool.node(std::move(ch)), c);
            }
            if (!row.is_zero()) out.push_back(std::move(row));
          }
        });
      });
      return;
    }
    for (int i = start; i <= m - (mp - slot); ++i) {
      sel[slot] = labels[i];
      self(self, slot + 1, i + 1);
    }
  };
  if (mp >= 1 && mp < m) comb(comb, 0, 0);
}

SparseVec to_vector(const MlElement& e,
                    const std::unordered_map<TreeId, int>& col) {
  SparseVec v;
  v.reserve(e.terms().size());
  for (const auto& [t, c] : e.terms()) {
    auto it = col.find(t);
    if (it == col.end())
      throw std::logic_error("tree outside the component basis");
    v.emplace_back(it->second, c);
  }
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

void normalize_row(SparseVec& v) {
  if (v.empty() || v.front().second == 1) return;
  Rational inv = Rational(1) / v.front().second;
  for (auto& [c, x] : v) x *= inv;
}

bool row_less(const SparseVec& a, const SparseVec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    int c = cmp(a[i].second, b[i].second);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

IdealBasis ideal_span(TreePool& pool, int q, std::vector<int> J,
                      const SpanOptions& opts) {
  int d = pool.arity();
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  for (int j : J) {
    if (j < 1 || j > q || (j - 1) % (d - 1) != 0)
      throw std::invalid_argument("generator degree outside [1,q] or parity");
  }
  Integer dim = count_trees_formula(d, q);
  if (dim > Integer(static_cast<long>(opts.max_basis_trees))) {
    std::ostringstream os;
    os << "component dimension " << dim.get_str() << " exceeds cap "
       << opts.max_basis_trees;
    throw ResourceError(os.str());
  }

  IdealBasis B;
  B.d = d;
  B.degree = q;
  B.generators = J;
  B.pool = &pool;
  std::vector<int> full_labels(q);
  for (int i = 0; i < q; ++i) full_labels[i] = i + 1;
  B.tree_basis = pool.enumerate_trees(full_labels);
  B.prescreened = opts.prescreen;

  RowEchelon ech(static_cast<int>(B.tree_basis.size()));
  if (J.empty()) {
    B.basis = ech.to_rref();
    return B;
  }

  // Spanning elements per degree, built low to high: substitution instances
  // of each generator plus single-node wraps of every lower-degree element.
  std::map<int, MlElement> gens;
  for (int j : J) gens.emplace(j, polarize_T(pool, j));
  std::map<int, std::vector<MlElement>> span;
  for (int m = J.front(); m <= q; ++m) {
    if ((m - 1) % (d - 1) != 0) continue;
    std::vector<MlElement> rows;
    for (int j : J)
      if (j <= m) substitution_rows(pool, gens.at(j), j, m, rows);
    for (const auto& [mp, inner] : span)
      if (mp < m && (m - mp) % (d - 1) == 0 && !inner.empty())
        wrap_rows(pool, inner, mp, m, rows);
    span.emplace(m, std::move(rows));
  }

  // Canonical column vectors, normalized and deduplicated, in a sort order
  // independent of generation details.
  std::unordered_map<TreeId, int> col;
  col.reserve(B.tree_basis.size());
  for (size_t i = 0; i < B.tree_basis.size(); ++i)
    col.emplace(B.tree_basis[i], static_cast<int>(i));
  const std::vector<MlElement>& final_rows = span.at(q);
  std::vector<SparseVec> vecs(final_rows.size());
  int workers = std::max(1, opts.workers);
  if (workers == 1 || final_rows.size() < 64) {
    for (size_t i = 0; i < final_rows.size(); ++i) {
      vecs[i] = to_vector(final_rows[i], col);
      normalize_row(vecs[i]);
    }
  } else {
    std::vector<std::thread> pool_threads;
    std::atomic<size_t> next{0};
    for (int w = 0; w < workers; ++w)
      pool_threads.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= final_rows.size()) return;
          vecs[i] = to_vector(final_rows[i], col);
          normalize_row(vecs[i]);
        }
      });
    for (auto& t : pool_threads) t.join();
  }
  std::sort(vecs.begin(), vecs.end(), row_less);
  vecs.erase(std::unique(vecs.begin(), vecs.end()), vecs.end());

  modp::Echelon screen(static_cast<int>(B.tree_basis.size()));
  for (SparseVec& v : vecs) {
    if (opts.prescreen) {
      bool ok = true;
      modp::Row pv = modp::project_row(v, &ok);
      if (ok && !screen.insert(std::move(pv))) {
        B.skipped_rows.push_back(std::move(v));
        continue;
      }
    }
    bool grew = ech.insert(std::move(v));
    if (opts.prescreen && !grew)
      throw std::logic_error("mod-p rank exceeded exact rank");
  }
  B.basis = ech.to_rref();
  return B;
}

SparseVec element_vector(const IdealBasis& B, const MlElement& e) {
  if (e.degree() != B.degree)
    throw std::invalid_argument("element degree differs from basis degree");
  if (e.pool() != B.pool) throw std::invalid_argument("pool mismatch");
  std::unordered_map<TreeId, int> col;
  col.reserve(B.tree_basis.size());
  for (size_t i = 0; i < B.tree_basis.size(); ++i)
    col.emplace(B.tree_basis[i], static_cast<int>(i));
  return to_vector(e, col);
}

uint64_t Certificate::digest() const {
  std::ostringstream os;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) os << i << ":" << coeffs[i].get_str() << ";";
  return fnv1a(os.str());
}

namespace {

bool verify_combination(const RationalMatrix& rows,
                        const std::vector<Rational>& coeffs,
                        const SparseVec& target) {
  SparseVec acc;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) acc = sparse_axpy(acc, coeffs[i], rows.rows[i]);
  return acc == target;
}

}  // namespace

ContainsResult contains(const IdealBasis& B, const MlElement& e) {
  SparseVec v = element_vector(B, e);
  ContainsResult res;
  std::vector<Rational> comb;
  if (in_row_space(B.basis.matrix, v, &comb)) {
    if (!verify_combination(B.basis.matrix, comb, v))
      throw std::logic_error("certificate failed direct-summation re-check");
    res.member = true;
    res.certificate = Certificate{std::move(comb)};
    return res;
  }
  if (B.prescreened && !B.skipped_rows.empty()) {
    // Exact confirmation: restore the rows the mod-p screen discarded.
    RationalMatrix full = B.basis.matrix;
    for (const SparseVec& r : B.skipped_rows) full.append_row(r);
    std::vector<Rational> comb2;
    if (in_row_space(full, v, &comb2)) {
      if (!verify_combination(full, comb2, v))
        throw std::logic_error("certificate failed direct-summation re-check");
      res.member = true;
      res.used_exact_fallback = true;
      res.certificate = Certificate{std::move(comb2)};
      return res;
    }
  }
  res.member = false;
  return res;
}

}  // namespace multinil
