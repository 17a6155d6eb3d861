#include "multinil/theorems.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace multinil {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int64_t dim_i64(int d, int q) {
  Integer n = count_trees_formula(d, q);
  if (!n.fits_slong_p()) return -1;
  return n.get_si();
}

std::vector<int> filtered_window(int d, int p, int q) {
  std::vector<int> J;
  for (int j : generator_window(d, p))
    if (j <= q) J.push_back(j);
  return J;
}

}  // namespace

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int engel_exponent_bound(int d, int p) {
  if (d < 2 || p < 2) throw std::invalid_argument("need d >= 2 and p >= 2");
  return d * ((p - 2) / (d - 1)) + 1;
}

std::vector<int> generator_window(int d, int p) {
  if (d < 2 || p < 2) throw std::invalid_argument("need d >= 2 and p >= 2");
  std::vector<int> J;
  for (int j = p; j <= d * (p - 1) + 1; ++j)
    if ((j - 1) % (d - 1) == 0) J.push_back(j);
  return J;
}

TheoremReport verify_main_theorem(int d, int p, const SpanOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  TheoremReport R;
  R.check = "main-theorem";
  R.d = d;
  R.p = p;
  int n = engel_exponent_bound(d, p);
  R.n = n;
  int degree = n * (d - 1) + 1;
  R.degree = degree;
  R.J = generator_window(d, p);
  R.space_dim = dim_i64(d, degree);

  TreePool pool(d);
  try {
    IdealBasis B = ideal_span(pool, degree, filtered_window(d, p, degree), opts);
    R.ideal_rank = B.rank();
    MlElement e = engel_element(pool, n);
    ContainsResult res = contains(B, e);
    R.verdict = res.member ? "PASS" : "FAIL";
    if (res.certificate) R.certificate_digest = res.certificate->digest();
  } catch (const ResourceError&) {
    R.verdict = "NOT_ATTEMPTED";
    R.wall_time = seconds_since(t0);
    return R;
  }

  // Minimality probe: is the (n-1)-Engel element already a consequence?
  if (n >= 2) {
    int deg2 = (n - 1) * (d - 1) + 1;
    std::vector<int> J2 = filtered_window(d, p, deg2);
    try {
      IdealBasis B2 = ideal_span(pool, deg2, J2, opts);
      R.lower_engel_member = contains(B2, engel_element(pool, n - 1)).member;
    } catch (const ResourceError&) {
    }
  }
  R.wall_time = seconds_since(t0);
  return R;
}

TheoremReport verify_binary_claim(const SpanOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  TheoremReport R;
  R.check = "binary-claim";
  R.d = 2;
  R.p = 4;
  R.n = 5;
  R.J = {4, 5};
  R.degree = 7;
  R.space_dim = dim_i64(2, 7);

  TreePool pool(2);
  int attempted = 0, failed = 0;
  auto record = [&](const std::string& name, int deg, int64_t rank,
                    const ContainsResult& res) {
    TheoremReport::Sub s;
    s.name = name;
    s.degree = deg;
    s.rank = rank;
    s.member = res.member;
    if (res.certificate) s.digest = res.certificate->digest();
    R.subchecks.push_back(std::move(s));
    ++attempted;
    if (!res.member) ++failed;
  };

  bool resource_hit = false;
  try {
    IdealBasis B7 = ideal_span(pool, 7, {4, 5}, opts);
    R.ideal_rank = B7.rank();
    for (TreeId shape : pool.enumerate_shapes(7)) {
      MlElement e = symmetrized_shape(pool, shape, 7);
      record("shape " + pool.code(shape), 7, B7.rank(), contains(B7, e));
    }
  } catch (const ResourceError&) {
    resource_hit = true;
  }
  try {
    IdealBasis B6 = ideal_span(pool, 6, {4, 5}, opts);
    record("T6", 6, B6.rank(), contains(B6, polarize_T(pool, 6)));
    record("engel5", 6, B6.rank(), contains(B6, engel_element(pool, 5)));
  } catch (const ResourceError&) {
    resource_hit = true;
  }

  if (failed > 0)
    R.verdict = "FAIL";
  else if (resource_hit)
    R.verdict = "NOT_ATTEMPTED";
  else
    R.verdict = "PASS";

  std::ostringstream os;
  for (const auto& s : R.subchecks) os << s.digest << ";";
  R.certificate_digest = fnv1a(os.str());
  R.wall_time = seconds_since(t0);
  return R;
}

}  // namespace multinil
