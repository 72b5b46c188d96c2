#include "tubelog/ladder.hpp"

#include <cmath>

#include "tubelog/errors.hpp"

namespace tubelog {

LadderPoint compose_G(const ComposedMap& M, const Complex& z) {
  LadderPoint p;
  const int n = M.depth();
  p.towers.assign(n + 2, Complex(0.0, 0.0));
  p.towers[n + 1] = z;
  Complex cur = z;
  for (int j = n; j >= 0; --j) {
    cur = norm_K(cur, M.levels[j]);
    p.towers[j] = cur;
  }
  return p;
}

LevelInverse level_invert(const NormalizedUniformizer& U,
                          const Complex& value) {
  LevelInverse inv;
  const double a = static_cast<double>(U.a);
  const double an = a * value.real();
  const double n = std::nearbyint(an);
  inv.trough = static_cast<std::int64_t>(std::llround(n));
  inv.L = Complex(U.A - kTwoPi * a * value.imag(), kTwoPi * (an - n));
  inv.u_margin = (U.A - inv.L.real()) / (kTwoPi * a);

  if (inv.L.real() > 700.0) {
    // |u| beyond the double range: the chart point hugs the trough at a
    // height below every representable scale
    inv.collapsed = true;
    inv.height_resolved = false;
    inv.base_sheet = std::abs(inv.L.imag()) < 1e-250;
    inv.chart = {n, 0.0};
    return inv;
  }
  if (inv.L.real() < -30.0) {
    // far above the oscillation zone the chart coordinate is L/(2 pi i) up
    // to a correction below e^{Re L}
    inv.chart = {n + inv.L.imag() / kTwoPi, -inv.L.real() / kTwoPi};
    return inv;
  }

  const Complex u = std::exp(inv.L);
  const std::int64_t m = std::llround(u.imag() / kTwoPi);
  if (m != 0) {
    inv.base_sheet = false;
    inv.cyl_level = m;
    if (std::abs(u - Complex(0.0, kTwoPi * m)) < 1e-7) {
      inv.at_end = true;
      inv.chart = {n, std::numeric_limits<double>::infinity()};
      return inv;
    }
  }
  const Complex wc = -expm1(-u) / U.shift;
  const Complex lw = std::log(wc);
  // once e^{-u} drops below one ulp the chart height quantizes to zero and
  // only the u-space height-equivalent keeps the sign
  if (lw.real() == 0.0 && inv.L.real() > 3.0) inv.height_resolved = false;
  inv.chart = {n + lw.imag() / kTwoPi, -lw.real() / kTwoPi};
  return inv;
}

InvertedLadder ladder_invert(const ComposedMap& M, const Complex& z) {
  InvertedLadder out;
  out.ok = true;
  Complex cur = z;
  const int n = M.depth();
  for (int j = 0; j <= n; ++j) {
    LevelInverse inv = level_invert(M.levels[j], cur);
    if (!inv.base_sheet || inv.at_end) out.ok = false;
    out.levels.push_back(inv);
    cur = inv.chart;
    if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag())) break;
  }
  if (!out.levels.empty()) {
    const LevelInverse& deep = out.levels.back();
    out.margin = deep.height_resolved ? deep.chart.imag() : deep.u_margin;
  }
  return out;
}

}  // namespace tubelog
