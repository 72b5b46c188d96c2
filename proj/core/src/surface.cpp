#include "tubelog/surface.hpp"

#include <cmath>

#include "tubelog/errors.hpp"

namespace tubelog {

namespace {

// distance to the nearest ramification point in the flat chart (they sit at
// the integers, a vanishing height below the real axis)
double ramification_distance(const Complex& z) {
  const double dx = z.real() - std::nearbyint(z.real());
  return std::hypot(dx, z.imag());
}

double wrap_half(double x) {
  // representative in [-1/2, 1/2)
  double r = x - std::nearbyint(x);
  if (r == 0.5) r = -0.5;
  return r;
}

void rewrap_cylinder(SurfacePoint& p) {
  if (p.address.is_base()) return;
  const double s = static_cast<double>(*p.address.slit);
  p.coord = {s + wrap_half(p.coord.real() - s), p.coord.imag()};
}

}  // namespace

SurfacePoint lift_base(const Complex& z) {
  if (z.imag() < 0.0 && z.real() == std::nearbyint(z.real()))
    throw DomainError("lift_base: point lies on a slit");
  return {SheetAddress{}, z};
}

SurfacePoint deck(const SurfacePoint& p, std::int64_t k) {
  SurfacePoint q = p;
  q.coord += static_cast<double>(k);
  if (q.address.slit) q.address.slit = *q.address.slit + k;
  return q;
}

SurfacePoint translate(const SurfacePoint& p, double t,
                       const RemovedRegions& R) {
  if (R.epsilon <= 0.0) throw DomainError("translate: epsilon must be > 0");
  SurfacePoint cur = p;
  if (ramification_distance(cur.coord) < R.epsilon)
    throw PathHitsRamification("translate: start inside I(epsilon)");
  if (R.y_cut && cur.coord.imag() <= *R.y_cut)
    throw LeftDomain("translate: start below the lower cut");

  const double step = R.epsilon / 4.0;
  double remaining = t;
  const double dir = t >= 0.0 ? 1.0 : -1.0;
  const double y = cur.coord.imag();

  while (remaining != 0.0) {
    const double dt = dir * std::min(std::abs(remaining), step);
    const double x0 = cur.coord.real();
    const double x1 = x0 + dt;

    // at most one integral vertical inside a step of size <= eps/4 < 1
    const double c = dir > 0.0 ? std::ceil(x0) : std::floor(x0);
    const bool crosses =
        (dir > 0.0 ? (c > x0 && c <= x1) : (c < x0 && c >= x1)) && y < 0.0;
    if (crosses) {
      // moving rightward through a slit descends one level
      const std::int64_t dl = dir > 0.0 ? -1 : +1;
      if (cur.address.is_base()) {
        cur.address.slit = static_cast<std::int64_t>(std::llround(c));
        cur.address.level = dl;
      } else {
        cur.address.level += dl;
        if (cur.address.level == 0) cur.address.slit.reset();
      }
    }

    cur.coord = {x1, y};
    rewrap_cylinder(cur);
    if (ramification_distance(cur.coord) < R.epsilon)
      throw PathHitsRamification("translate: path entered I(epsilon)");
    if (R.y_cut && cur.coord.imag() <= *R.y_cut)
      throw LeftDomain("translate: path crossed the lower cut");
    remaining -= dt;
  }
  return cur;
}

ContinuationResult continue_norm_K(const std::vector<SurfacePoint>& path,
                                   const NormalizedUniformizer& U) {
  if (path.size() < 2)
    throw DomainError("continue_norm_K: need at least two path points");
  if (!path.front().address.is_base() || path.front().coord.imag() <= 0.0)
    throw DomainError(
        "continue_norm_K: path must start on the base sheet above the axis");

  const double inv_a = 1.0 / static_cast<double>(U.a);
  const Complex norm_c(0.0, U.A / kTwoPi);

  // state: inner index m (u = -PLog(1-w) + 2 pi i m continuous along the
  // path) and the continued outer log V of u
  Complex z = path.front().coord;
  Complex w = exp_2pi_i(z) * U.shift;
  int m = 0;
  Complex u = -log1p(-w);
  // outer value fixed by the normalized base form K = z + PLog(q)/(2 pi i):
  // V = 2 pi i z + log(shift) + PLog(q(w)), so that e^V = u exactly
  Complex V = Complex(0.0, kTwoPi) * z + std::log(U.shift) +
              std::log(inner_q(w));

  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const Complex a_pt = path[seg].coord;
    const Complex b_pt = path[seg + 1].coord;
    double pos = 0.0;
    double stepw = 1.0;
    while (pos < 1.0) {
      const double next = std::min(1.0, pos + stepw);
      const Complex zn = a_pt + (b_pt - a_pt) * next;
      const Complex wn = exp_2pi_i(zn) * U.shift;
      if (1.0 - wn == Complex(0.0, 0.0))
        throw StepUnderflow("continue_norm_K: hit a ramification projection");

      const Complex ur = -log1p(-wn);
      // re-seat the inner branch so u stays continuous
      const double k = std::nearbyint((u.imag() - ur.imag()) / kTwoPi);
      const Complex un = ur + Complex(0.0, kTwoPi * k);
      const double tol_u = std::max(0.75, 0.05 * std::abs(u));
      if (std::abs(un - u) > tol_u) {
        stepw *= 0.5;
        if (stepw < 1e-12)
          throw StepUnderflow("continue_norm_K: step underflow near branch cut");
        continue;
      }
      const Complex vr = std::log(un);
      const Complex vn =
          vr + Complex(0.0, kTwoPi * std::nearbyint((V.imag() - vr.imag()) / kTwoPi));
      if (std::abs(vn - V) > 0.75) {
        stepw *= 0.5;
        if (stepw < 1e-12)
          throw StepUnderflow("continue_norm_K: step underflow near branch cut");
        continue;
      }
      z = zn;
      w = wn;
      u = un;
      m = static_cast<int>(k);
      V = vn;
      pos = next;
      stepw = std::min(1.0, stepw * 2.0);
    }
  }

  ContinuationResult out;
  out.branch.inner = m;
  const Complex vp = std::log(u);
  out.branch.outer =
      static_cast<int>(std::nearbyint((V.imag() - vp.imag()) / kTwoPi));
  // value = (V/(2 pi i) + i A/(2 pi)) / a
  const Complex K(V.imag() / kTwoPi, -V.real() / kTwoPi);
  out.value = (K + norm_c) * inv_a;
  return out;
}

}  // namespace tubelog
