#ifndef TUBELOG_HEDGEHOG_HPP
#define TUBELOG_HEDGEHOG_HPP

#include <string>
#include <vector>

#include "tubelog/exactq.hpp"
#include "tubelog/ladder.hpp"
#include "tubelog/ledger.hpp"

namespace tubelog {

struct Membership {
  bool member = false;
  double margin = 0.0;  // signed deepest-level height (see ladder_invert)
};

// Membership in G_n(closed upper half-plane): invert level by level and
// require the deepest coordinate height >= -tol.
Membership hedgehog_contains(const ParameterLedger& L, const Complex& z,
                             int depth, double tol = 1e-10);

struct InvarianceRow {
  Complex z{0.0, 0.0};
  Complex image{0.0, 0.0};
  double margin_before = 0.0;
  double margin_after = 0.0;
  bool pass = false;
  std::string note;
};

struct InvarianceReport {
  std::vector<InvarianceRow> rows;
  bool all_pass = true;
};

// Apply the depth-(n+1) flow to sample points of G_n(H) and re-test
// membership.
InvarianceReport invariance_check(const ParameterLedger& L, int n,
                                  const std::vector<BigRat>& times,
                                  const std::vector<Complex>& points,
                                  double tol = 1e-8);

struct EvidenceRow {
  int n = 0;
  double min_height = 0.0;
  double required_height = 0.0;  // h_0 + n
  double log_disk_radius = 0.0;  // log |E(orbit point)| = -2 pi min_height
  double required_log_radius = 0.0;
  std::size_t orbit_points = 0;
  bool pass_height = false;
  bool pass_radius = false;
};

// Heights and disk radii of the periodic-orbit sets per stage, the
// accumulation-at-zero evidence table.
std::vector<EvidenceRow> nonlinearisability_evidence(const ParameterLedger& L,
                                                     int max_depth);

// E(z) = e^{2 pi i z}; exp_2pi_i underflows gracefully, the log form stays
// exact at every height.
Complex disk_transport(const Complex& z);
double disk_log_abs(const Complex& z);

// Sampled boundary curve of G_depth(H): the forward image of the real axis,
// refined logarithmically toward the trough needles (wall structure below
// double resolution renders as vertical needles to height 0).
std::vector<Complex> boundary_polyline(const ParameterLedger& L, int depth,
                                       int per_period = 512, int periods = 1);

}  // namespace tubelog

#endif
