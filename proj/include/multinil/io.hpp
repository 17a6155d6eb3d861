#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "multinil/algebra.hpp"
#include "multinil/polymap.hpp"
#include "multinil/theorems.hpp"

namespace multinil {

using ordered_json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Algebra document: {"arity": d, "dim": n, "basis": [...]?, "entries":
// [{"inputs": [i1..id], "output": j, "value": "num/den"}, ...]} with 1-based
// indices.  Permuted duplicates with equal values normalize; conflicting
// values are a symmetry violation.
MultilinearAlgebra parse_algebra(const std::string& text);
MultilinearAlgebra load_algebra(const std::string& path);
ordered_json algebra_to_json(const MultilinearAlgebra& A);

// Map document: {"n": n, "coords": [[{"exponents": [e1..en], "coeff":
// "num/den"}, ...], ...]}.
PolyMap parse_map(const std::string& text);
PolyMap load_map(const std::string& path);
ordered_json map_to_json(const PolyMap& F);

ordered_json nil_report_to_json(const NilReport& r);
ordered_json theorem_report_to_json(const TheoremReport& r);
TheoremReport theorem_report_from_json(const ordered_json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace multinil
