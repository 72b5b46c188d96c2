#ifndef TUBELOG_UNIFORMIZER_HPP
#define TUBELOG_UNIFORMIZER_HPP

#include <cstdint>
#include <vector>

#include "tubelog/numerics.hpp"

namespace tubelog {

// Branch bookkeeping for the two nested logarithms.  inner == 0 iff the
// point is on the base sheet; inner == m on the level-m cylinders.  outer
// shifts the value by whole integers (the deck direction in the image).
struct BranchState {
  int inner = 0;
  int outer = 0;
  bool operator==(const BranchState&) const = default;
};

// One normalized map (1/a) K_delta, stored as (a, h, A) with A = log lambda,
// lambda = -log(1 - e^{-2 pi delta}).  delta itself is never materialized:
// in the valid regime (h > 2) it is below every representable scale, and the
// only place it matters at O(1) size is the normalization constant A/(2 pi).
struct NormalizedUniformizer {
  std::int64_t a = 1;
  double h = 0.0;
  double A = 0.0;      // log lambda
  double shift = 1.0;  // 1 - e^{-lambda}; exactly 1.0 once lambda > ~37

  // trough height of the un-normalized image curve, -A/(2 pi)
  double trough_height() const { return -A / kTwoPi; }
};

// Solve the amplitude equation lambda = e^{2 pi a h} log(2 - e^{-lambda})
// by fixed-point iteration (log-space closed form once e^{-lambda}
// underflows).  Throws NonConvergence on iteration-cap hit and DomainError
// for invalid (a, h).
NormalizedUniformizer solve_lambda(std::int64_t a, double h);

// Residual of the defining identity, measured in A: the fixed point holds
// when |A - (2 pi a h + log log(2 - e^{-lambda}))| is small.
double lambda_residual(const NormalizedUniformizer& U);

// q(w) = -Log(1-w)/w, holomorphic and zero-free on the unit disk, q(0) = 1.
Complex inner_q(const Complex& w);

// Inner log value u = -PLog(1-w) + 2 pi i m.
Complex inner_u(const Complex& w, int inner = 0);

// K on the base sheet, branch (0,0):  K(z) = z + (1/2 pi i) PLog(q(w)),
// w = e^{2 pi i z}.  This single expression realizes both normalizations
// K(z+1) = K(z) + 1 and K(z) - z -> 0.  For inner != 0 the sheet-indexed
// closed form (1/2 pi i)(PLog(u0 + 2 pi i m) + 2 pi i l) is returned; those
// branches are reached canonically only through continuation.
Complex base_K(const Complex& z, const BranchState& branch = {});

// Normalized map (1/a)(K(z + i delta) + i A / (2 pi)).  Exact closed form
// n/a at integer troughs (branch (0,0), Im z == 0, Re z integral).
Complex norm_K(const Complex& z, const NormalizedUniformizer& U,
               const BranchState& branch = {});

// The inner value used by norm_K at z (shift applied), branch-aware.
Complex norm_inner_u(const Complex& z, const NormalizedUniformizer& U,
                     int inner = 0);

// --- affine u-space coordinates -------------------------------------------
//
// Near trough n, writing L = Log u, the value P = norm_K(z) and L are an
// exact affine pair:
//   L = A + 2 pi i a P - 2 pi i n,
//   P = (n + Im L / (2 pi) + i (A - Re L) / (2 pi)) / a.
// Re L ranges over (-inf, A] on the closed base-sheet upper half-plane;
// these coordinates stay O(A) where chart coordinates underflow.
Complex value_from_L(const NormalizedUniformizer& U, std::int64_t n,
                     const Complex& L);
Complex L_from_value(const NormalizedUniformizer& U, std::int64_t n,
                     const Complex& value);

// --- derivative -------------------------------------------------------------

// d norm_K / dz as log-magnitude + unit phase.  Closed form
// a norm_K' = (e^u - 1)/u, evaluated in log space when e^u is not
// representable.
LogDeriv norm_K_derivative(const Complex& z, const NormalizedUniformizer& U,
                           const BranchState& branch = {});

// log |a norm_K'| (the Lemma-style expansion predicate quantity) straight
// from the inner value; never overflows for representable u.
double log_abs_aKprime(const Complex& u);

// Higher log-derivative ratios for curve jets:
//   r1 = K''/K' = d/dz log K',  r2 = d/dz r1  (so K'''/K' = r1^2 + r2).
// ratios_ok is false where e^u is not representable.
struct KPrimeRatios {
  Complex r1{0.0, 0.0};
  Complex r2{0.0, 0.0};
  bool ratios_ok = false;
};
KPrimeRatios norm_K_prime_ratios(const Complex& z,
                                 const NormalizedUniformizer& U,
                                 const BranchState& branch = {});

// --- asymptotics -------------------------------------------------------------

struct GapGrid {
  double y_min = 1.0;
  double y_max = 20.0;
  int nx = 96;
  int ny = 40;
};

// sup over the grid of a |norm_K(z) - (z/a + i h)|; the empirical constant
// of the uniform-asymptotics property.
double norm_K_asymptotic_gap(const NormalizedUniformizer& U,
                             const GapGrid& grid = {});

// per-row sup of the same quantity, ordered by increasing height.
std::vector<std::pair<double, double>> norm_K_gap_rows(
    const NormalizedUniformizer& U, const GapGrid& grid = {});

// --- expansion threshold ------------------------------------------------------

struct ThresholdSegment {
  double y0 = 0.0;         // chart height with Im norm_K(i y0) = v; may
                           // underflow to 0 for large a (h - v)
  double log_u_top = 0.0;  // log w0 = A - 2 pi a v, always representable
  LogMagnitude logbound;   // log((e^{w0} - 1)/w0); +inf log_abs if w0 itself
                           // exceeds the double range
  double o1_slack = 0.0;   // log w0 - 2 pi a (h - v), the measured O(1) term
};

// Solve Im norm_K(x0 + i y0) = v on trough verticals (independent of x0) and
// bound |a norm_K'| from below on the segment [x0, x0 + i y0].
ThresholdSegment threshold_segment(const NormalizedUniformizer& U, double v);

// --- inversion ---------------------------------------------------------------

// Initial guess from the uniform asymptotics: z ~ a (w - i h).
Complex invert_hint(const Complex& w, const NormalizedUniformizer& U);

// Base-sheet inverse.  The u-space closed form is exact; when a finite hint
// is supplied, damped Newton from the hint is used instead (max 50 steps,
// tolerance 1e-12) and NonConvergence is thrown on failure.
Complex invert_norm_K(const Complex& w, const NormalizedUniformizer& U);
Complex invert_norm_K(const Complex& w, const NormalizedUniformizer& U,
                      const Complex& hint);

// --- cylinder ends -------------------------------------------------------------

// Limit of norm_K through the upper end of a level-m cylinder:
// (1/a)((1/2 pi i) Log(2 pi i m) + i A/(2 pi)).  m != 0.
Complex cylinder_end(const NormalizedUniformizer& U, std::int64_t m);

}  // namespace tubelog

#endif
