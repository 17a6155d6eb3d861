#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multinil/element.hpp"
#include "multinil/matrix.hpp"

namespace multinil {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpanOptions {
  int64_t max_basis_trees = 25000;  // ambient dimension cap
  bool prescreen = true;            // skip mod-p-dependent rows early
  int workers = 1;
};

// Degree-q multilinear component of the consequence ideal of the chosen
// T_j identities, as a canonical RREF over the tree basis of that degree.
struct IdealBasis {
  int d = 2;
  int degree = 0;
  std::vector<int> generators;     // the j values used
  TreePool* pool = nullptr;
  std::vector<TreeId> tree_basis;  // column order (canonical code order)
  RrefResult basis;                // RREF rows over tree_basis columns
  bool prescreened = false;        // rows may have been skipped mod p
  // Rows the mod-p screen judged dependent, kept so a non-membership verdict
  // can be confirmed exactly against the full spanning set.
  std::vector<SparseVec> skipped_rows;

  int rank() const { return basis.rank(); }
  int dim() const { return static_cast<int>(tree_basis.size()); }
};

IdealBasis ideal_span(TreePool& pool, int q, std::vector<int> J,
                      const SpanOptions& opts = {});

// Membership certificate: e = sum coeffs[i] * basis row i, re-verified by
// direct summation before being reported.
struct Certificate {
  std::vector<Rational> coeffs;  // one per RREF basis row
  uint64_t digest() const;
};

struct ContainsResult {
  bool member = false;
  std::optional<Certificate> certificate;
  // Set when a prescreen-skipped row had to be restored to decide the query;
  // the certificate then refers to the completed basis.
  bool used_exact_fallback = false;
};

ContainsResult contains(const IdealBasis& B, const MlElement& e);

// Column vector of e over B's tree basis (throws on degree mismatch or a
// tree outside the basis).
SparseVec element_vector(const IdealBasis& B, const MlElement& e);

}  // namespace multinil
