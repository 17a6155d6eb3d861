#pragma once

#include <optional>
#include <string>

#include "multinil/io.hpp"

namespace multinil {

// Exit code contract: 0 completed/PASS, 1 check FAIL, 2 input error,
// 3 resource cap exceeded.
enum ExitCode : int {
  kOk = 0,
  kCheckFail = 1,
  kInputError = 2,
  kResourceCap = 3,
};

struct RunConfig {
  std::string command;  // check | invert | verify-theorem | jacobian
  std::string algebra_path;
  std::string map_path;
  int engel_max = 6;
  int yagzhev_max = 8;
  int gerst_max = 5;
  int degree_bound = 0;  // 0: derive from the Yagzhev window
  int d = 2;
  int p = 3;
  bool binary_claim = false;
  int64_t cap = 25000;
  bool prescreen = true;
  int workers = 1;
  std::string format = "text";  // text | structured
  std::string out_path;         // empty: stdout
};

struct RunResult {
  int exit_code = kOk;
  ordered_json report;
  std::string text;
};

RunResult cmd_check(const RunConfig& cfg);
RunResult cmd_invert(const RunConfig& cfg);
RunResult cmd_verify_theorem(const RunConfig& cfg);
RunResult cmd_jacobian(const RunConfig& cfg);

// Dispatch on cfg.command; catches input errors into exit code 2.
RunResult run(const RunConfig& cfg);

}  // namespace multinil
