#ifndef TUBELOG_SURFACE_HPP
#define TUBELOG_SURFACE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tubelog/numerics.hpp"
#include "tubelog/uniformizer.hpp"

namespace tubelog {

// Which sheet of the pasted surface a point lives on.  slit = none means the
// base plane; otherwise the point is on the level-th cylinder of the stack
// attached along that slit.  level == 0 iff base.
struct SheetAddress {
  std::optional<std::int64_t> slit;
  std::int64_t level = 0;

  bool is_base() const { return !slit.has_value(); }
  bool operator==(const SheetAddress&) const = default;
};

// A surface point in the distinguished flat charts.  Cylinder coordinates
// are kept base-aligned (slit + representative of the mod-1 class in
// [slit - 1/2, slit + 1/2)).
struct SurfacePoint {
  SheetAddress address;
  Complex coord{0.0, 0.0};
};

// Removed neighbourhoods: flat disks of radius epsilon around every
// ramification point, plus an optional lower cut at Im = y_cut.
struct RemovedRegions {
  double epsilon = 0.0;
  std::optional<double> y_cut;
};

// Embed a base-plane coordinate.  Errors when z lies on a slit
// (integral real part, negative height).
SurfacePoint lift_base(const Complex& z);

// The deck automorphism T^k (z -> z + k in charts).
SurfacePoint deck(const SurfacePoint& p, std::int64_t k);

// Horizontal translation by t in steps of at most epsilon/4.  Slit
// crossings (passing an integral vertical below the ramification height)
// update the sheet address by one level per crossing; moving rightward
// through a slit descends one level, leftward ascends (the convention the
// branch behaviour of the explicit formula forces).  Throws
// PathHitsRamification / LeftDomain on illegal paths.
SurfacePoint translate(const SurfacePoint& p, double t,
                       const RemovedRegions& R);

struct ContinuationResult {
  Complex value;
  BranchState branch;
};

// Analytic continuation of norm_K along a polyline of surface points, with
// adaptive step halving so each substep moves both logarithm arguments by a
// small fraction of a turn.  The path must start on the base sheet at
// positive height.  The returned inner branch equals the cylinder level of
// the endpoint.
ContinuationResult continue_norm_K(const std::vector<SurfacePoint>& path,
                                   const NormalizedUniformizer& U);

}  // namespace tubelog

#endif
