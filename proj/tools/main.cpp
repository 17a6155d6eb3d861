#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "multinil/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"multinil: exact checks for symmetric multilinear nilalgebras"};
  app.require_subcommand(1);

  multinil::RunConfig cfg;
  if (const char* w = std::getenv("MULTINIL_WORKERS")) {
    int v = std::atoi(w);
    if (v >= 1) cfg.workers = v;
  }

  auto add_common = [&](CLI::App* c) {
    c->add_option("--cap", cfg.cap, "max basis trees per component");
    c->add_flag("--prescreen,!--no-prescreen", cfg.prescreen,
                "modular prescreen before exact elimination");
    c->add_option("--workers", cfg.workers, "worker threads");
    c->add_option("--format", cfg.format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    c->add_option("--out", cfg.out_path, "write the report to a file");
  };

  CLI::App* check = app.add_subcommand(
      "check", "nilpotence indices of a finite-dimensional algebra");
  check->add_option("--algebra", cfg.algebra_path, "algebra file")->required();
  check->add_option("--engel-max", cfg.engel_max, "Engel search bound");
  check->add_option("--yagzhev-max", cfg.yagzhev_max, "Yagzhev search bound");
  check->add_option("--gerst-max", cfg.gerst_max, "Gerstenhaber search bound");
  add_common(check);

  CLI::App* invert = app.add_subcommand(
      "invert", "truncated formal inverse of a map Id - H");
  invert->add_option("--map", cfg.map_path, "map file")->required();
  invert->add_option("-D,--degree", cfg.degree_bound,
                     "truncation degree (default: from the Yagzhev window)");
  invert->add_option("--yagzhev-max", cfg.yagzhev_max, "Yagzhev search bound");
  add_common(invert);

  CLI::App* verify = app.add_subcommand(
      "verify-theorem", "certify the Engel bound by ideal membership");
  verify->add_option("-d", cfg.d, "operation arity");
  verify->add_option("-p", cfg.p, "Yagzhev nilindex hypothesis");
  verify->add_flag("--binary-claim", cfg.binary_claim,
                   "verify the binary T4/T5 claim instead");
  add_common(verify);

  CLI::App* jac = app.add_subcommand(
      "jacobian",
      "Jacobian matrix and determinant; with --algebra, the nil-to-Engel "
      "cross-check");
  jac->add_option("--map", cfg.map_path, "map file");
  jac->add_option("--algebra", cfg.algebra_path, "algebra file");
  jac->add_option("--yagzhev-max", cfg.yagzhev_max, "Yagzhev search bound");
  add_common(jac);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : multinil::kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  multinil::RunResult res = multinil::run(cfg);
  std::string payload =
      cfg.format == "structured" ? res.report.dump(2) + "\n" : res.text;
  if (!cfg.out_path.empty()) {
    try {
      multinil::write_file(cfg.out_path, payload);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return multinil::kInputError;
    }
  } else {
    std::cout << payload;
  }
  return res.exit_code;
}
