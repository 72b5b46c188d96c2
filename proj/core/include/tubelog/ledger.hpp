#ifndef TUBELOG_LEDGER_HPP
#define TUBELOG_LEDGER_HPP

#include <string>
#include <vector>

#include "tubelog/exactq.hpp"
#include "tubelog/ladder.hpp"
#include "tubelog/uniformizer.hpp"

namespace tubelog {

// alpha_n increasing to 1; the exponent certified at stage n.
struct AlphaSchedule {
  std::string preset = "default";        // default: 1 - 1/(n+2)
  std::vector<double> explicit_values;   // used when non-empty

  double at(int n) const;
};

struct Rect {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  bool contains(const Complex& z) const {
    return z.real() > x0 && z.real() < x1 && z.imag() > y0 && z.imag() < y1;
  }
};

// One inductive stage: the chosen map plus the hypotheses prepared for the
// next stage.  Chart heights that collapse below double resolution keep
// their log-inner representation alongside.
struct Stage {
  NormalizedUniformizer U;
  double h_next = 0.0;
  double hp_next = 0.0;
  double tau_next = 0.0;      // 0 when unattainable at double precision
  double Y_next = 0.0;        // chart height (may underflow to 0)
  double logu_Y_next = 0.0;   // log inner value at Y_{next}
  Rect R;                     // rectangle around the stage curve segment
  bool hyp_ready = false;     // hypotheses 1-4 in hand for the next stage
};

struct PredicateRecord {
  std::string name;
  std::string statement;  // the sampled claim
  std::string grid;       // documented sampling grid
  double margin = 0.0;    // worst margin; positive passes
  bool pass = false;
};

struct StageConfig {
  int x_grid = 64;             // samples per unit period
  int segment_u_samples = 48;  // samples of the expansion segment (u-space)
  int tau_shrink_max = 200;    // halvings before giving up on tau
  double margin_factor = 1.05; // required slack on certified predicates
  double hyp1_margin = 0.02;   // clearance demanded by the height predicate
};

struct ParameterLedger {
  double h0 = 10.0;
  double M = 1.0;
  AlphaSchedule alpha;
  BigInt a_cap = BigInt(1) << 60;

  std::vector<Stage> stages;
  std::vector<PredicateRecord> records;

  bool frontier_hit = false;
  int frontier_stage = -1;  // stage at which the search stopped
  std::string frontier_predicate;
  std::string frontier_detail;

  // depth usable for curve/flow construction: stages with hyp_ready chains
  int certified_depth() const;
  std::vector<std::int64_t> a_values() const;
  ComposedMap maps(int upto) const;  // K_0..K_upto
};

ParameterLedger make_ledger(double h0, double M, const AlphaSchedule& alpha,
                            const BigInt& a_cap);

// Choose a_n by doubling search over the certified predicates, then prepare
// the hypotheses for stage n+1.  Returns true when the stage completed with
// hypotheses ready; false when the representability frontier was hit (the
// ledger records which predicate blocked and why).  Throws SearchExhausted
// when the a-cap is reached with a predicate still failing.
bool choose_stage(ParameterLedger& L, int n, const StageConfig& cfg);

// Re-evaluate the certification battery of an existing stage (used by the
// negative-control check).  Appends nothing to the ledger.
std::vector<PredicateRecord> evaluate_stage_predicates(
    const ParameterLedger& L, int n, const StageConfig& cfg);

// Test-oriented factory: declared (not certified) stages for exercising the
// flow and membership machinery at feasible scales.
ParameterLedger declared_ledger(const std::vector<std::int64_t>& a,
                                const std::vector<double>& h, double M = 1.0);

}  // namespace tubelog

#endif
