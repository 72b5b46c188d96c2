// Acceptance suite: runs the full construction at depth 2 under the default
// configuration and evaluates the twelve criterion families, one PASS/FAIL
// line each.  Exit status 0 iff every criterion in scope passes.
//
// Usage: acceptance [--criterion k] [--out dir]

#include <cstring>
#include <iostream>
#include <string>

#include "tubelog/json_io.hpp"
#include "tubelog/verify.hpp"

using namespace tubelog;

int main(int argc, char** argv) {
  int only = 0;
  std::string out_dir;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
      out_dir = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--criterion k] [--out dir]\n";
      return 2;
    }
  }

  RunConfig cfg = default_config();
  cfg.depth = 2;

  const ConstructResult res = run_construct(cfg);
  const VerificationReport rep = run_verify(cfg, res.ledger, res.atlas);

  if (!out_dir.empty())
    write_file(out_dir + "/acceptance_report.json",
               report_to_json(cfg, res.ledger, rep).dump(2) + "\n");

  bool ok = true;
  for (int k = 1; k <= 12; ++k) {
    if (only != 0 && k != only) continue;
    const bool pass = criterion_pass(rep, k);
    ok = ok && pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << criterion_names()[k - 1]
              << "\n";
    for (const CheckResult& c : rep.checks) {
      if (c.name.rfind("C" + std::to_string(k) + "/", 0) != 0) continue;
      std::cout << "       " << (c.pass ? "ok   " : "FAIL ") << c.name
                << "  worst=" << c.worst << "  tol=" << c.tolerance;
      if (!c.note.empty()) std::cout << "  [" << c.note << "]";
      std::cout << "\n";
    }
  }
  if (only == 0) {
    std::cout << "constants:";
    for (const auto& [k, v] : rep.constants) std::cout << "  " << k << "=" << v;
    std::cout << "\n";
  }
  return ok ? 0 : 1;
}
