#include "tubelog/semiflow.hpp"

#include <cmath>

#include "tubelog/errors.hpp"

namespace tubelog {

namespace {

double ram_distance(const Complex& z) {
  const double dx = z.real() - std::nearbyint(z.real());
  return std::hypot(dx, z.imag());
}

struct Decomposition {
  std::vector<BigInt> k;  // one per map level
  std::vector<BigRat> s;  // s[0] = t; s[j+1] the remainder fed below level j
};

// a_j s_j = k_j + s_{j+1}, |s_{j+1}| <= 2/a_{j+1}.  A remainder that is
// exactly zero needs no bound, so missing deeper a's are fine for it.
Decomposition decompose(const std::vector<std::int64_t>& a_seq, int n_maps,
                        const BigRat& t) {
  Decomposition d;
  d.s.push_back(t);
  BigRat s = t;
  for (int j = 0; j < n_maps; ++j) {
    if (static_cast<std::size_t>(j) >= a_seq.size())
      throw IllegalTime("semiflow: a-sequence too short for the depth");
    const BigRat scaled = s * a_seq[j];
    const BigInt k = nearest_int(scaled);
    const BigRat rem = scaled - BigRat(k);
    if (rem != 0) {
      if (static_cast<std::size_t>(j + 1) >= a_seq.size())
        throw IllegalTime("semiflow: time remainder beyond the known stages");
      if ((rem < 0 ? -rem : rem) > BigRat(2, a_seq[j + 1]))
        throw IllegalTime("semiflow: time not in the recursive time set");
    }
    d.k.push_back(k);
    d.s.push_back(rem);
    s = rem;
  }
  return d;
}

struct FlowEvaluator {
  const ComposedMap& M;
  const std::vector<std::int64_t>& a_seq;
  const Decomposition& dec;
  const FlowParams& fp;

  Complex run(int j, const Complex& P) const {
    const NormalizedUniformizer& U = M.levels[j];
    const double a = static_cast<double>(U.a);
    const double kj = dec.k[j].convert_to<double>();

    if (dec.s[j + 1] == 0) {
      // the deeper flow is the identity; the whole level is the rigid
      // translation by k_j / a_j
      return P + Complex(kj / a, 0.0);
    }

    const LevelInverse inv = level_invert(U, P);
    const int n_maps = static_cast<int>(M.levels.size());

    if (inv.at_end) {
      // cylinder upper ends are fixed by every deeper flow element; only the
      // deck index moves
      const double q = static_cast<double>(inv.trough) + kj;
      return cylinder_end(U, inv.cyl_level) + Complex(q / a, 0.0);
    }

    if (j == n_maps - 1) {
      // deepest level: the lifted linear flow, slit crossings and all
      SurfacePoint sp;
      if (inv.base_sheet) {
        sp = SurfacePoint{SheetAddress{}, inv.chart};
      } else {
        sp = SurfacePoint{SheetAddress{inv.trough, inv.cyl_level}, inv.chart};
      }
      RemovedRegions R;
      R.epsilon = 3.0 / static_cast<double>(a_seq[j + 1]);
      R.y_cut = -fp.lower_margin;
      SurfacePoint moved;
      try {
        moved = translate(sp, to_double(dec.s[j + 1]), R);
      } catch (const PathHitsRamification& e) {
        throw OrbitHitsExclusion(e.what());
      } catch (const LeftDomain& e) {
        throw OrbitHitsExclusion(e.what());
      }
      moved = deck(moved, dec.k[j].convert_to<std::int64_t>());
      return norm_K_surface(moved, U);
    }

    // intermediate level: the deeper folded flow acts in the chart; its lift
    // is undefined inside I(3/a_{j+1}) and below the lower cut
    if (!inv.base_sheet)
      throw OrbitHitsExclusion(
          "semiflow: preimage on a cylinder sheet at an intermediate level");
    if (ram_distance(inv.chart) < 3.0 / static_cast<double>(a_seq[j + 1]))
      throw OrbitHitsExclusion("semiflow: preimage inside I(epsilon)");
    if (inv.chart.imag() <= -fp.lower_margin)
      throw OrbitHitsExclusion("semiflow: preimage below the lower cut");

    const Complex deeper = run(j + 1, inv.chart);
    return norm_K(deeper + Complex(kj, 0.0), U);
  }
};

}  // namespace

Complex norm_K_surface(const SurfacePoint& p, const NormalizedUniformizer& U) {
  if (p.address.is_base()) return norm_K(p.coord, U);
  const double q = static_cast<double>(*p.address.slit);
  const BranchState b{static_cast<int>(p.address.level), 0};
  return norm_K(p.coord - q, U, b) + Complex(q / static_cast<double>(U.a), 0.0);
}

bool flow_time_legal(const std::vector<std::int64_t>& a_seq, int n_maps,
                     const BigRat& t) {
  try {
    decompose(a_seq, n_maps, t);
    return true;
  } catch (const IllegalTime&) {
    return false;
  }
}

Complex semiflow_apply(const ComposedMap& M,
                       const std::vector<std::int64_t>& a_seq, const BigRat& t,
                       const Complex& z, const FlowParams& fp) {
  if (M.levels.empty()) throw DomainError("semiflow: no maps");
  const Decomposition dec =
      decompose(a_seq, static_cast<int>(M.levels.size()), t);
  const FlowEvaluator ev{M, a_seq, dec, fp};
  return ev.run(0, z);
}

std::vector<Complex> periodic_orbit_set(const ComposedMap& M, int n) {
  if (n < 0 || n > M.depth())
    throw DomainError("periodic_orbit_set: stage out of range");
  const NormalizedUniformizer& Un = M.levels[n];
  const Complex end = cylinder_end(Un, 1);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(Un.a));
  for (std::int64_t j = 0; j < Un.a; ++j) {
    Complex p = end + Complex(static_cast<double>(j) / Un.a, 0.0);
    for (int lvl = n - 1; lvl >= 0; --lvl) p = norm_K(p, M.levels[lvl]);
    out.push_back(p);
  }
  return out;
}

}  // namespace tubelog
