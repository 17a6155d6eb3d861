#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace multinil {

// Exact rational scalar. mpq_class keeps the canonical form we rely on
// everywhere: lowest terms, positive denominator, zero stored as 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "n" or "n/d" with an optional leading sign. No floats.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string num, den = "1";
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    num = std::string(text);
  } else {
    num = std::string(text.substr(0, slash));
    den = std::string(text.substr(slash + 1));
  }
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  // mpz accepts a leading '-' but not '+'.
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) return std::nullopt;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational exact_div(const Rational& a, const Rational& b) {
  if (b == 0) throw std::domain_error("division by zero rational");
  return a / b;
}

inline Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace multinil
