#include "multinil/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace multinil {

namespace {

const ordered_json& field(const ordered_json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

int int_field(const ordered_json& j, const char* name) {
  const ordered_json& v = field(j, name);
  if (!v.is_number_integer())
    throw ParseError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

Rational rational_field(const ordered_json& j, const char* name,
                        const std::string& where) {
  const ordered_json& v = field(j, name);
  if (!v.is_string())
    throw ParseError(where + ": \"" + name +
                     "\" must be a rational string like \"2/3\"");
  std::string s = v.get<std::string>();
  auto r = parse_rational(s);
  if (!r) throw ParseError(where + ": bad rational \"" + s + "\"");
  return *r;
}

ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

std::string rat_str(const Rational& r) { return r.get_str(); }

}  // namespace

MultilinearAlgebra parse_algebra(const std::string& text) {
  ordered_json j = parse_document(text);
  MultilinearAlgebra A;
  A.d = int_field(j, "arity");
  A.n = int_field(j, "dim");
  if (A.d < 2) throw ParseError("arity must be >= 2");
  if (A.n < 1) throw ParseError("dim must be >= 1");
  if (auto it = j.find("basis"); it != j.end()) {
    if (!it->is_array() || static_cast<int>(it->size()) != A.n)
      throw ParseError("basis must be an array of dim names");
    for (const auto& b : *it) {
      if (!b.is_string()) throw ParseError("basis names must be strings");
      A.basis.push_back(b.get<std::string>());
    }
  }
  const ordered_json& entries = field(j, "entries");
  if (!entries.is_array()) throw ParseError("entries must be an array");

  // key -> output -> value; permuted duplicates must agree.
  std::map<std::vector<int>, std::map<int, Rational>> acc;
  int idx = 0;
  for (const auto& e : entries) {
    std::string where = "entries[" + std::to_string(idx++) + "]";
    const ordered_json& inputs = field(e, "inputs");
    if (!inputs.is_array() || static_cast<int>(inputs.size()) != A.d)
      throw ParseError(where + ": inputs must list exactly arity indices");
    std::vector<int> key;
    for (const auto& v : inputs) {
      if (!v.is_number_integer())
        throw ParseError(where + ": inputs must be integers");
      int i = v.get<int>();
      if (i < 1 || i > A.n)
        throw ParseError(where + ": input index " + std::to_string(i) +
                         " outside 1.." + std::to_string(A.n));
      key.push_back(i - 1);
    }
    std::sort(key.begin(), key.end());
    int out = int_field(e, "output");
    if (out < 1 || out > A.n)
      throw ParseError(where + ": output index " + std::to_string(out) +
                       " outside 1.." + std::to_string(A.n));
    Rational val = rational_field(e, "value", where);
    auto [it, fresh] = acc[key].emplace(out - 1, val);
    if (!fresh && it->second != val) {
      std::ostringstream os;
      os << "conflicting values for inputs (";
      for (size_t k = 0; k < key.size(); ++k)
        os << (k ? "," : "") << key[k] + 1;
      os << ") output " << out << ": " << rat_str(it->second) << " vs "
         << rat_str(val) << " — tensor is not symmetric";
      throw ValidationError(os.str());
    }
  }
  for (auto& [key, outs] : acc) {
    SparseVec row;
    for (auto& [out, val] : outs)
      if (val != 0) row.emplace_back(out, val);
    if (!row.empty()) A.tensor.emplace(key, std::move(row));
  }
  A.validate();
  return A;
}

MultilinearAlgebra load_algebra(const std::string& path) {
  return parse_algebra(read_file(path));
}

ordered_json algebra_to_json(const MultilinearAlgebra& A) {
  ordered_json j;
  j["arity"] = A.d;
  j["dim"] = A.n;
  if (!A.basis.empty()) j["basis"] = A.basis;
  ordered_json entries = ordered_json::array();
  for (const auto& [key, value] : A.tensor) {
    for (const auto& [out, val] : value) {
      ordered_json e;
      ordered_json in = ordered_json::array();
      for (int i : key) in.push_back(i + 1);
      e["inputs"] = std::move(in);
      e["output"] = out + 1;
      e["value"] = rat_str(val);
      entries.push_back(std::move(e));
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

PolyMap parse_map(const std::string& text) {
  ordered_json j = parse_document(text);
  PolyMap F;
  F.n = int_field(j, "n");
  if (F.n < 1) throw ParseError("n must be >= 1");
  F.vars = indexed_vars({"X"}, F.n);
  const ordered_json& coords = field(j, "coords");
  if (!coords.is_array() || static_cast<int>(coords.size()) != F.n)
    throw ParseError("coords must be an array of n coordinate term lists");
  int ci = 0;
  for (const auto& terms : coords) {
    std::string cwhere = "coords[" + std::to_string(ci++) + "]";
    if (!terms.is_array()) throw ParseError(cwhere + " must be an array");
    MultiPoly p(F.vars);
    int ti = 0;
    for (const auto& t : terms) {
      std::string where = cwhere + "[" + std::to_string(ti++) + "]";
      const ordered_json& exps = field(t, "exponents");
      if (!exps.is_array() || static_cast<int>(exps.size()) != F.n)
        throw ParseError(where + ": exponents must list n entries");
      Expvec e;
      for (const auto& x : exps) {
        if (!x.is_number_integer() || x.get<int64_t>() < 0)
          throw ParseError(where + ": exponents must be nonnegative integers");
        e.push_back(x.get<uint32_t>());
      }
      p.add_term(e, rational_field(t, "coeff", where));
    }
    F.coords.push_back(std::move(p));
  }
  return F;
}

PolyMap load_map(const std::string& path) { return parse_map(read_file(path)); }

ordered_json map_to_json(const PolyMap& F) {
  ordered_json j;
  j["n"] = F.n;
  ordered_json coords = ordered_json::array();
  for (const MultiPoly& p : F.coords) {
    ordered_json terms = ordered_json::array();
    for (const auto& [exps, c] : p.terms()) {
      ordered_json t;
      t["exponents"] = exps;
      t["coeff"] = rat_str(c);
      terms.push_back(std::move(t));
    }
    coords.push_back(std::move(terms));
  }
  j["coords"] = std::move(coords);
  return j;
}

ordered_json nil_report_to_json(const NilReport& r) {
  ordered_json j;
  j["kind"] = r.kind;
  if (r.index)
    j["index"] = *r.index;
  else
    j["index"] = nullptr;
  j["bound"] = r.bound;
  j["window"] = {r.window_lo, r.window_hi};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

ordered_json theorem_report_to_json(const TheoremReport& r) {
  ordered_json j;
  j["check"] = r.check;
  j["d"] = r.d;
  if (r.p)
    j["p"] = *r.p;
  else
    j["p"] = nullptr;
  j["J"] = r.J;
  if (r.n)
    j["n"] = *r.n;
  else
    j["n"] = nullptr;
  j["degree"] = r.degree;
  j["space_dim"] = r.space_dim;
  j["ideal_rank"] = r.ideal_rank;
  j["verdict"] = r.verdict;
  j["certificate_digest"] = r.certificate_digest;
  ordered_json subs = ordered_json::array();
  for (const auto& s : r.subchecks) {
    ordered_json x;
    x["name"] = s.name;
    x["degree"] = s.degree;
    x["rank"] = s.rank;
    x["member"] = s.member;
    x["digest"] = s.digest;
    subs.push_back(std::move(x));
  }
  j["subchecks"] = std::move(subs);
  if (r.lower_engel_member)
    j["lower_engel_member"] = *r.lower_engel_member;
  else
    j["lower_engel_member"] = nullptr;
  j["wall_time"] = r.wall_time;
  return j;
}

TheoremReport theorem_report_from_json(const ordered_json& j) {
  TheoremReport r;
  r.check = field(j, "check").get<std::string>();
  r.d = int_field(j, "d");
  if (!field(j, "p").is_null()) r.p = int_field(j, "p");
  for (const auto& x : field(j, "J")) r.J.push_back(x.get<int>());
  if (!field(j, "n").is_null()) r.n = int_field(j, "n");
  r.degree = int_field(j, "degree");
  r.space_dim = field(j, "space_dim").get<int64_t>();
  r.ideal_rank = field(j, "ideal_rank").get<int64_t>();
  r.verdict = field(j, "verdict").get<std::string>();
  r.certificate_digest = field(j, "certificate_digest").get<uint64_t>();
  for (const auto& x : field(j, "subchecks")) {
    TheoremReport::Sub s;
    s.name = field(x, "name").get<std::string>();
    s.degree = int_field(x, "degree");
    s.rank = field(x, "rank").get<int64_t>();
    s.member = field(x, "member").get<bool>();
    s.digest = field(x, "digest").get<uint64_t>();
    r.subchecks.push_back(std::move(s));
  }
  if (!field(j, "lower_engel_member").is_null())
    r.lower_engel_member = field(j, "lower_engel_member").get<bool>();
  r.wall_time = field(j, "wall_time").get<double>();
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace multinil
