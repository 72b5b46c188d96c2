#ifndef TUBELOG_VERIFY_HPP
#define TUBELOG_VERIFY_HPP

#include <map>
#include <string>
#include <vector>

#include "tubelog/comb.hpp"
#include "tubelog/config.hpp"
#include "tubelog/hedgehog.hpp"
#include "tubelog/ledger.hpp"

namespace tubelog {

struct CheckResult {
  std::string name;       // "C<k>/<slug>"
  std::string statement;  // the quantitative claim being checked
  std::string grid;       // documented sampling
  double worst = 0.0;     // worst deviation (or margin, statement-dependent)
  double tolerance = 0.0;
  bool pass = false;
  std::string note;       // analysis on failure
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::map<std::string, double> constants;  // empirical constants
  bool all_pass = false;
};

struct ConstructResult {
  ParameterLedger ledger;
  CombAtlas atlas;
  bool reached_depth = false;  // certified depth == requested depth
};

// Run the inductive parameter choice to the requested depth (or the
// reachable frontier) and sample the comb atlas.
ConstructResult run_construct(const RunConfig& cfg);

// The full check battery, one criterion family per C-number; prints nothing.
VerificationReport run_verify(const RunConfig& cfg, const ParameterLedger& L,
                              const CombAtlas& atlas);

// The twelve criterion families in order (used by the meta-completeness
// test and the acceptance runner).
const std::vector<std::string>& criterion_names();

// Pass/fail of one criterion family k (1-based) within a report.
bool criterion_pass(const VerificationReport& rep, int k);

}  // namespace tubelog

#endif
