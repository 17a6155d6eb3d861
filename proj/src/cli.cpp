#include "multinil/cli.hpp"

#include <sstream>

namespace multinil {

namespace {

SpanOptions span_options(const RunConfig& cfg) {
  SpanOptions o;
  o.max_basis_trees = cfg.cap;
  o.prescreen = cfg.prescreen;
  o.workers = cfg.workers;
  return o;
}

std::string nil_line(const NilReport& r) {
  std::ostringstream os;
  os << r.kind << ": ";
  if (r.index) {
    os << *r.index;
    if (r.window_hi > 0)
      os << " (window " << r.window_lo << ".." << r.window_hi << ")";
  } else if (r.bound > 0) {
    os << "not found within bound " << r.bound;
  } else {
    os << "not attempted";
  }
  if (r.witness) os << "; witness " << *r.witness;
  return os.str();
}

}  // namespace

RunResult cmd_check(const RunConfig& cfg) {
  MultilinearAlgebra A = load_algebra(cfg.algebra_path);
  NilReport engel = engel_index(A, cfg.engel_max);
  NilReport yag = yagzhev_index(A, cfg.yagzhev_max);
  NilReport gerst = gerstenhaber_index(A, cfg.gerst_max);

  RunResult R;
  R.report["command"] = "check";
  R.report["algebra"] = cfg.algebra_path;
  R.report["arity"] = A.d;
  R.report["dim"] = A.n;
  R.report["engel"] = nil_report_to_json(engel);
  R.report["yagzhev"] = nil_report_to_json(yag);
  R.report["gerstenhaber"] = nil_report_to_json(gerst);

  std::ostringstream os;
  os << "algebra " << cfg.algebra_path << " (arity " << A.d << ", dim " << A.n
     << ")\n"
     << nil_line(engel) << "\n"
     << nil_line(yag) << "\n"
     << nil_line(gerst) << "\n";
  R.text = os.str();
  R.exit_code = kOk;
  return R;
}

RunResult cmd_invert(const RunConfig& cfg) {
  PolyMap F = load_map(cfg.map_path);
  int D = cfg.degree_bound;
  if (D <= 0) {
    // Derive from the Yagzhev window of the polarized algebra.
    PolyMap id = PolyMap::identity(F.vars);
    PolyMap Hm;
    Hm.n = F.n;
    Hm.vars = F.vars;
    bool zero = true;
    for (int i = 0; i < F.n; ++i) {
      Hm.coords.push_back(id.coords[i] - F.coords[i]);
      zero = zero && Hm.coords.back().is_zero();
    }
    if (zero) {
      D = 1;
    } else {
      MultilinearAlgebra A = polarize(HomogeneousMap::checked(std::move(Hm)));
      NilReport yag = yagzhev_index(A, cfg.yagzhev_max);
      if (!yag.index)
        throw std::invalid_argument(
            "no Yagzhev index within bound " + std::to_string(cfg.yagzhev_max) +
            "; pass an explicit truncation degree");
      D = A.d * (*yag.index - 1) + 1;
    }
  }

  PolyMap G = formal_inverse(F, D);
  AutomorphismReport v = verify_automorphism(F, G, D);

  RunResult R;
  R.report["command"] = "invert";
  R.report["map"] = cfg.map_path;
  R.report["degree"] = D;
  R.report["inverse"] = map_to_json(G);
  R.report["verification"]["verdict"] = v.verdict;
  R.report["verification"]["D"] = v.D;
  R.report["verification"]["residual"] = v.residual;

  std::ostringstream os;
  os << "inverse truncated at degree " << D << ":\n";
  for (int i = 0; i < G.n; ++i)
    os << "  G" << i + 1 << " = " << G.coords[i].to_string() << "\n";
  os << "verification: " << v.verdict;
  if (!v.residual.empty()) os << "; residual " << v.residual;
  os << "\n";
  R.text = os.str();
  R.exit_code = v.verdict == "FAIL" ? kCheckFail : kOk;
  return R;
}

RunResult cmd_verify_theorem(const RunConfig& cfg) {
  TheoremReport rep = cfg.binary_claim
                          ? verify_binary_claim(span_options(cfg))
                          : verify_main_theorem(cfg.d, cfg.p, span_options(cfg));
  RunResult R;
  R.report = theorem_report_to_json(rep);

  std::ostringstream os;
  os << rep.check << ": " << rep.verdict;
  if (rep.n) os << " (n = " << *rep.n << ")";
  os << "\n  degree " << rep.degree << ", space dim " << rep.space_dim
     << ", ideal rank " << rep.ideal_rank << "\n";
  for (const auto& s : rep.subchecks)
    os << "  " << s.name << ": " << (s.member ? "PASS" : "FAIL") << " (degree "
       << s.degree << ", rank " << s.rank << ")\n";
  if (rep.lower_engel_member)
    os << "  (n-1)-Engel element already a consequence: "
       << (*rep.lower_engel_member ? "yes" : "no") << "\n";
  os << "  certificate digest " << rep.certificate_digest << ", wall time "
     << rep.wall_time << "s\n";
  R.text = os.str();

  if (rep.verdict == "PASS")
    R.exit_code = kOk;
  else if (rep.verdict == "FAIL")
    R.exit_code = kCheckFail;
  else
    R.exit_code = kResourceCap;
  return R;
}

RunResult cmd_jacobian(const RunConfig& cfg) {
  if (cfg.algebra_path.empty() && cfg.map_path.empty())
    throw std::invalid_argument("jacobian needs --map or --algebra");
  RunResult R;
  R.report["command"] = "jacobian";
  std::ostringstream os;
  if (!cfg.algebra_path.empty()) {
    MultilinearAlgebra A = load_algebra(cfg.algebra_path);
    JacobianCheckReport rep = jacobian_theorem_check(A, cfg.yagzhev_max);
    R.report["algebra"] = cfg.algebra_path;
    R.report["yagzhev"] = nil_report_to_json(rep.yagzhev);
    R.report["engel"] = nil_report_to_json(rep.engel);
    if (rep.engel_bound)
      R.report["engel_bound"] = *rep.engel_bound;
    else
      R.report["engel_bound"] = nullptr;
    R.report["pass"] = rep.pass;
    R.report["jacobian_determinant"] = rep.jacobian_determinant;
    os << nil_line(rep.yagzhev) << "\n" << nil_line(rep.engel) << "\n";
    if (rep.engel_bound) os << "engel bound from theorem: " << *rep.engel_bound << "\n";
    os << "det J_F = " << rep.jacobian_determinant << "\n"
       << (rep.pass ? "PASS" : "FAIL") << "\n";
    R.exit_code = rep.pass ? kOk : kCheckFail;
  } else {
    PolyMap F = load_map(cfg.map_path);
    DenseMatrix<MultiPoly> J = jacobian(F);
    MultiPoly dt = det(J);
    ordered_json rows = ordered_json::array();
    os << "J_F =\n";
    for (int i = 0; i < J.n; ++i) {
      ordered_json row = ordered_json::array();
      os << "  [";
      for (int j = 0; j < J.m; ++j) {
        std::string s = J.at(i, j).to_string();
        row.push_back(s);
        os << (j ? ", " : "") << s;
      }
      os << "]\n";
      rows.push_back(std::move(row));
    }
    R.report["map"] = cfg.map_path;
    R.report["matrix"] = std::move(rows);
    R.report["det"] = dt.to_string();
    os << "det J_F = " << dt.to_string() << "\n";
    R.exit_code = kOk;
  }
  R.text = os.str();
  return R;
}

RunResult run(const RunConfig& cfg) {
  try {
    if (cfg.command == "check") return cmd_check(cfg);
    if (cfg.command == "invert") return cmd_invert(cfg);
    if (cfg.command == "verify-theorem") return cmd_verify_theorem(cfg);
    if (cfg.command == "jacobian") return cmd_jacobian(cfg);
    throw std::invalid_argument("unknown command " + cfg.command);
  } catch (const ResourceError& e) {
    RunResult R;
    R.exit_code = kResourceCap;
    R.report["error"] = e.what();
    R.text = std::string("resource cap: ") + e.what() + "\n";
    return R;
  } catch (const ParseError& e) {
    RunResult R;
    R.exit_code = kInputError;
    R.report["error"] = e.what();
    R.text = std::string("input error: ") + e.what() + "\n";
    return R;
  } catch (const ValidationError& e) {
    RunResult R;
    R.exit_code = kInputError;
    R.report["error"] = e.what();
    R.text = std::string("validation error: ") + e.what() + "\n";
    return R;
  } catch (const std::invalid_argument& e) {
    RunResult R;
    R.exit_code = kInputError;
    R.report["error"] = e.what();
    R.text = std::string("input error: ") + e.what() + "\n";
    return R;
  }
}

}  // namespace multinil
