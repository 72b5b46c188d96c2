#ifndef TUBELOG_SEMIFLOW_HPP
#define TUBELOG_SEMIFLOW_HPP

#include <cstdint>
#include <vector>

#include "tubelog/exactq.hpp"
#include "tubelog/ladder.hpp"
#include "tubelog/surface.hpp"

namespace tubelog {

// Evaluate norm_K at a surface point, sheet-aware (deck-shifted to the
// 0-slit cylinder for cylinder sheets).
Complex norm_K_surface(const SurfacePoint& p, const NormalizedUniformizer& U);

struct FlowParams {
  double lower_margin = 1.0;  // flows restricted to Im > -margin per level
};

// The depth-n folded semi-flow F_{0,n,t} at z.  M lists the maps K_0..K_{n-1};
// a_seq lists a_0, ..., up to a_n as far as they are known (the deeper
// entries bound the time remainders; a remainder that vanishes early makes
// the missing bounds irrelevant).  Throws IllegalTime / OrbitHitsExclusion.
Complex semiflow_apply(const ComposedMap& M,
                       const std::vector<std::int64_t>& a_seq, const BigRat& t,
                       const Complex& z, const FlowParams& fp = {});

// Exact legality test for the same time set.
bool flow_time_legal(const std::vector<std::int64_t>& a_seq, int n_maps,
                     const BigRat& t);

// One period of the periodic-orbit set at stage n transported to the value
// plane: G_{n-1}(P_n cap one period), a_n points.  M must hold K_0..K_n.
std::vector<Complex> periodic_orbit_set(const ComposedMap& M, int n);

}  // namespace tubelog

#endif
