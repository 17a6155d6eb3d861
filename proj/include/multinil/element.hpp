#pragma once

#include <map>
#include <string>
#include <vector>

#include "multinil/algebra.hpp"
#include "multinil/tree.hpp"

namespace multinil {

// Vector in one multilinear component of the free symmetric d-ary algebra:
// rational combination of canonical trees.  All trees share one pool.
class MlElement {
 public:
  MlElement(TreePool* pool, int degree) : pool_(pool), degree_(degree) {}

  TreePool* pool() const { return pool_; }
  int degree() const { return degree_; }
  const std::map<TreeId, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t support_size() const { return terms_.size(); }

  void add(TreeId t, const Rational& c);
  MlElement& operator+=(const MlElement& o);
  MlElement scaled(const Rational& c) const;

  // Equality is structural (same trees, same coefficients).
  bool operator==(const MlElement& o) const;

  // Deterministic rendering, ordered by canonical tree code.
  std::string to_string() const;

  // Evaluate in a finite-dimensional algebra: leaf label L becomes
  // symbols[symbol_of_label[L]].  Labels sharing a symbol collapse shared
  // subtree evaluations, so diagonal evaluations stay cheap.
  SymbolicElement eval(const MultilinearAlgebra& A,
                       const std::vector<int>& symbol_of_label,
                       const std::vector<SymbolicElement>& symbols) const;

 private:
  TreePool* pool_;
  int degree_;
  std::map<TreeId, Rational> terms_;
};

// Full linearization of T_q by the label-set recursion; labels 1..q.
// Diagonal identity: evaluating all labels at one x gives q! * T_q.
MlElement polarize_T(TreePool& pool, int q);

// Full linearization in x of Ad_x^n(t): x-labels 1..n(d-1), t-label
// n(d-1)+1.  Each canonical tree carries coefficient (d-1)!^n (the
// sibling orderings of the comb's slot assignments).
MlElement engel_element(TreePool& pool, int n);

// Sum over all bijective leaf labelings 1..q of an unlabeled shape,
// collapsed canonically (each tree gets coefficient |Aut(shape)|).
MlElement symmetrized_shape(TreePool& pool, TreeId shape, int q);

}  // namespace multinil
