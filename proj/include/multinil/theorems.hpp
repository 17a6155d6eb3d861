#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multinil/ideal.hpp"

namespace multinil {

// One ideal-membership verification with its bookkeeping.
struct TheoremReport {
  std::string check;            // main-theorem | binary-claim
  int d = 0;
  std::optional<int> p;         // main theorem input
  std::vector<int> J;           // generator degrees used
  std::optional<int> n;         // Engel exponent certified
  int degree = 0;               // multilinear component degree
  int64_t space_dim = 0;
  int64_t ideal_rank = -1;      // -1 when not attempted
  std::string verdict;          // PASS | FAIL | NOT_ATTEMPTED
  uint64_t certificate_digest = 0;
  double wall_time = 0.0;

  // Sub-results: binary claim runs three membership checks; the main
  // theorem adds an informational minimality probe.
  struct Sub {
    std::string name;
    int degree = 0;
    int64_t rank = -1;
    bool member = false;
    uint64_t digest = 0;
  };
  std::vector<Sub> subchecks;
  std::optional<bool> lower_engel_member;  // (n-1)-Engel probe, informational
};

TheoremReport verify_main_theorem(int d, int p, const SpanOptions& opts = {});
TheoremReport verify_binary_claim(const SpanOptions& opts = {});

// n = d*floor((p-2)/(d-1)) + 1 — the certified Engel exponent.
int engel_exponent_bound(int d, int p);
// Generator window {j in [p, d(p-1)+1] : j = 1 mod (d-1)}.
std::vector<int> generator_window(int d, int p);

uint64_t fnv1a(const std::string& s);

}  // namespace multinil
