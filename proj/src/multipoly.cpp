#include "multinil/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace multinil {

namespace {

const std::vector<std::string> kNoVars;

const std::vector<std::string>& names(const VarList& v) {
  return v ? *v : kNoVars;
}

}  // namespace

VarList make_vars(std::vector<std::string> nm) {
  return std::make_shared<const std::vector<std::string>>(std::move(nm));
}

VarList indexed_vars(const std::vector<std::string>& prefixes, int n) {
  std::vector<std::string> nm;
  nm.reserve(prefixes.size() * n);
  for (const auto& p : prefixes)
    for (int i = 1; i <= n; ++i) nm.push_back(p + std::to_string(i));
  return make_vars(std::move(nm));
}

MultiPoly MultiPoly::constant(Rational c, VarList vars) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace(Expvec(p.var_count(), 0), std::move(c));
  return p;
}

MultiPoly MultiPoly::variable(const VarList& vars, int index) {
  if (!vars || index < 0 || index >= static_cast<int>(vars->size()))
    throw std::invalid_argument("variable index out of range");
  Expvec e(vars->size(), 0);
  e[index] = 1;
  return monomial(vars, std::move(e), 1);
}

MultiPoly MultiPoly::monomial(const VarList& vars, Expvec exps, Rational c) {
  if (exps.size() != names(vars).size())
    throw std::invalid_argument("exponent vector length mismatch");
  MultiPoly p(vars);
  if (c != 0) p.terms_.emplace(std::move(exps), std::move(c));
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rational MultiPoly::constant_value() const {
  Expvec zero(var_count(), 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Expvec& exps, const Rational& c) {
  if (exps.size() != static_cast<size_t>(var_count()))
    throw std::invalid_argument("exponent vector length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::align(MultiPoly& a, MultiPoly& b) {
  if (a.vars_ == b.vars_ || names(a.vars_) == names(b.vars_)) {
    if (!a.vars_) a.vars_ = b.vars_;
    return;
  }
  auto lift = [](MultiPoly& cst, const MultiPoly& tgt) {
    Rational c = cst.constant_value();
    cst = MultiPoly::constant(std::move(c), tgt.vars_);
  };
  if (a.is_constant() && a.var_count() == 0) {
    lift(a, b);
  } else if (b.is_constant() && b.var_count() == 0) {
    lift(b, a);
  } else {
    throw std::invalid_argument("polynomials over mismatched variable lists");
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  MultiPoly rhs = o;
  align(*this, rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  MultiPoly rhs = o;
  align(*this, rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly lhs = a, rhs = b;
  MultiPoly::align(lhs, rhs);
  MultiPoly r(lhs.vars_);
  Expvec e(lhs.var_count());
  Rational c;
  for (const auto& [ea, ca] : lhs.terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      c = ca * cb;
      r.add_term(e, c);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.vars_ != b.vars_ && names(a.vars_) != names(b.vars_)) {
    // Constants compare equal across variable lists.
    if (!(a.is_constant() && b.is_constant())) return false;
    return a.constant_value() == b.constant_value();
  }
  return a.terms_ == b.terms_;
}

MultiPoly MultiPoly::derivative(int var) const {
  if (var < 0 || var >= var_count())
    throw std::invalid_argument("derivative variable out of range");
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Expvec d = e;
    d[var] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(e[var])));
  }
  return r;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images) const {
  if (images.size() != static_cast<size_t>(var_count()))
    throw std::invalid_argument("compose: one image per variable required");
  VarList tgt = images.empty() ? nullptr : images.front().vars();
  MultiPoly r = images.empty() ? MultiPoly() : MultiPoly(tgt);
  // Power cache per variable.
  std::vector<std::vector<MultiPoly>> pows(images.size());
  auto power = [&](size_t i, uint32_t k) -> const MultiPoly& {
    auto& cache = pows[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(1, tgt));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(c, tgt);
    for (size_t i = 0; i < images.size(); ++i)
      if (e[i] > 0) term *= power(i, e[i]);
    r += term;
  }
  return r;
}

Rational MultiPoly::eval(std::span<const Rational> point) const {
  if (point.size() != static_cast<size_t>(var_count()))
    throw std::invalid_argument("eval: wrong point dimension");
  Rational acc = 0, term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (size_t i = 0; i < point.size(); ++i) {
      if (e[i] == 0) continue;
      Rational p = point[i];
      for (uint32_t k = 1; k < e[i]; ++k) p *= point[i];
      term *= p;
    }
    acc += term;
  }
  return acc;
}

int64_t MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int64_t>(total_degree(terms_.rbegin()->first));
}

std::optional<int64_t> MultiPoly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  uint64_t d = total_degree(terms_.begin()->first);
  if (total_degree(terms_.rbegin()->first) != d) return std::nullopt;
  return static_cast<int64_t>(d);
}

MultiPoly MultiPoly::homogeneous_part(int64_t deg) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (static_cast<int64_t>(total_degree(e)) == deg) r.terms_.emplace(e, c);
  return r;
}

MultiPoly MultiPoly::truncated_above(int64_t deg) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (static_cast<int64_t>(total_degree(e)) <= deg) r.terms_.emplace(e, c);
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool has_var = total_degree(e) > 0;
    if (a != 1 || !has_var) {
      os << a.get_str();
      if (has_var) os << "*";
    }
    bool first_var = true;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << (*vars_)[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::add:
      return a + b;
    case PolyOp::sub:
      return a - b;
    case PolyOp::mul:
      return a * b;
    case PolyOp::scale:
      if (!b.is_constant())
        throw std::invalid_argument("scale expects a constant right operand");
      return a.scaled(b.constant_value());
  }
  throw std::logic_error("unreachable");
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return MultiPoly(a.vars() ? a.vars() : b.vars());
  if (b.is_constant() && b.var_count() == 0)
    return a.scaled(Rational(1) / b.constant_value());

  // Repeatedly cancel the leading term; exact when the division succeeds.
  const auto& [eb, cb] = *b.terms().rbegin();
  MultiPoly rem = a;
  if (rem.vars() != b.vars() && rem.var_count() != b.var_count())
    throw std::invalid_argument("polynomials over mismatched variable lists");
  MultiPoly quot(rem.vars());
  while (!rem.is_zero()) {
    const auto& [ea, ca] = *rem.terms().rbegin();
    Expvec q(ea.size());
    for (size_t i = 0; i < ea.size(); ++i) {
      if (ea[i] < eb[i]) return std::nullopt;
      q[i] = ea[i] - eb[i];
    }
    MultiPoly t = MultiPoly::monomial(rem.vars(), std::move(q), ca / cb);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

}  // namespace multinil
