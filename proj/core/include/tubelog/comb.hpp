#ifndef TUBELOG_COMB_HPP
#define TUBELOG_COMB_HPP

#include <string>
#include <vector>

#include "tubelog/exactq.hpp"
#include "tubelog/ladder.hpp"
#include "tubelog/ledger.hpp"

namespace tubelog {

using Prefix = std::vector<int>;  // digits in {-1, 0, 1}

// x(eps_0, ..., eps_{n-1}) = eps_0 a_2...a_{n-1} + ... + eps_{n-2}
//                            + eps_{n-1}/a_n, exact.  a_n * x is an integer.
BigRat x_of(const Prefix& p, const ParameterLedger& L);

// theta(eps) = sum_i eps_i / (a_0 ... a_{i+1}), exact.
BigRat theta_of(const Prefix& p, const ParameterLedger& L);

struct CurveSample {
  double t = 0.0;
  Complex sigma{0.0, 0.0};
  Complex d1{0.0, 1.0};
  Complex d2{0.0, 0.0};
  Complex d3{0.0, 0.0};
  bool jets_ok = true;  // d2/d3 representable
};

// The point of G(xi_x) with imaginary part t, solved hierarchically: exact
// level reduction while x stays integral, then bracketed bisection plus a
// guarded Newton polish on the deepest height.  Derivatives by implicit
// differentiation through the level maps.  Throws BracketFailure when the
// line's image does not cross the target height (the graph hypotheses do
// not hold there).
CurveSample sigma_point(const ComposedMap& M, const BigRat& x, double t,
                        double tol = 1e-12);

struct CombCurve {
  Prefix prefix;
  BigRat x_value;
  BigRat theta;
  std::vector<CurveSample> samples;
};

struct CombAtlas {
  int depth = 0;
  std::vector<double> t_grid;
  std::vector<CombCurve> curves;  // 3^depth curves, prefix-lexicographic
};

// Sample one curve / the full depth-N atlas on a t-grid in [1,2].
CombCurve build_curve(const ParameterLedger& L, const Prefix& p,
                      const std::vector<double>& t_grid);
CombAtlas build_atlas(const ParameterLedger& L, int depth, int n_t = 16);

struct PhiResult {
  Complex value{0.0, 0.0};
  double trunc_bound = 0.0;  // distance bound to the untruncated map
  int depth_used = 0;
  bool bound_at_available_depth = false;  // deeper divisor unknown; bound
                                          // uses the deepest known stage
};

// Evaluate the comb parametrization at transversal coordinate theta and
// height t, truncated at `depth` digits.  Throws UnrealizableTheta.
PhiResult phi(const ParameterLedger& L, const BigRat& theta, double t,
              int depth);

// max over the common grid of max_{k<=r} |sigma1^(k) - sigma2^(k)|.
double cr_distance(const CombCurve& c1, const CombCurve& c2, int r);

// --- transversal regularity ------------------------------------------------

struct PairCheckReport {
  std::string statement;
  std::size_t pairs = 0;
  double worst_ratio = 0.0;   // max of lhs/rhs over all pairs
  double bound_constant = 0.0;
  bool pass = false;
  bool certified = true;  // false when alpha exceeds the certified schedule
};

// |Phi(t',th') - Phi(t,th)| <= (3 * 3^alpha + M) |(th',t') - (th,t)|^alpha
// over all sample pairs of the atlas.  M is the base-curve C1 bound + 1
// unless overridden (pass M <= 0 to compute it from the atlas).
PairCheckReport verify_holder(const CombAtlas& atlas, double alpha,
                              double M_const = -1.0,
                              double alpha_certified = 1.0);

// |(th,t) - (th',t')| <= (13/3) |Phi(th,t) - Phi(th',t')| over all pairs.
PairCheckReport verify_lipschitz_inverse(const CombAtlas& atlas);

}  // namespace tubelog

#endif
