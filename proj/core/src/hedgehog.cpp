#include "tubelog/hedgehog.hpp"

#include <algorithm>
#include <cmath>

#include "tubelog/errors.hpp"
#include "tubelog/semiflow.hpp"

namespace tubelog {

Membership hedgehog_contains(const ParameterLedger& L, const Complex& z,
                             int depth, double tol) {
  const ComposedMap M = L.maps(depth);
  const InvertedLadder inv = ladder_invert(M, z);
  Membership m;
  m.margin = inv.margin;
  m.member = inv.ok && inv.margin >= -tol;
  return m;
}

InvarianceReport invariance_check(const ParameterLedger& L, int n,
                                  const std::vector<BigRat>& times,
                                  const std::vector<Complex>& points,
                                  double tol) {
  InvarianceReport rep;
  const ComposedMap M = L.maps(n);  // maps K_0..K_n, the depth-(n+1) flow
  const std::vector<std::int64_t> a = L.a_values();
  FlowParams fp;
  fp.lower_margin = L.M;
  for (const BigRat& t : times)
    for (const Complex& z : points) {
      InvarianceRow row;
      row.z = z;
      row.margin_before = hedgehog_contains(L, z, n, tol).margin;
      try {
        row.image = semiflow_apply(M, a, t, z, fp);
        const Membership after = hedgehog_contains(L, row.image, n, tol);
        row.margin_after = after.margin;
        row.pass = after.member;
        if (!row.pass) row.note = "image left the domain";
      } catch (const OrbitHitsExclusion& e) {
        row.pass = false;
        row.note = e.what();
      } catch (const IllegalTime& e) {
        row.pass = false;
        row.note = e.what();
      }
      rep.all_pass = rep.all_pass && row.pass;
      rep.rows.push_back(row);
    }
  return rep;
}

std::vector<EvidenceRow> nonlinearisability_evidence(const ParameterLedger& L,
                                                     int max_depth) {
  std::vector<EvidenceRow> rows;
  const int deepest =
      std::min<int>(max_depth, static_cast<int>(L.stages.size()) - 1);
  for (int n = 0; n <= deepest; ++n) {
    const ComposedMap M = L.maps(n);
    const std::vector<Complex> orbit = periodic_orbit_set(M, n);
    EvidenceRow row;
    row.n = n;
    row.orbit_points = orbit.size();
    row.min_height = std::numeric_limits<double>::infinity();
    for (const Complex& p : orbit)
      row.min_height = std::min(row.min_height, p.imag());
    row.required_height = L.h0 + n;
    row.log_disk_radius = -kTwoPi * row.min_height;
    row.required_log_radius = -kTwoPi * (L.h0 + n);
    row.pass_height = row.min_height >= row.required_height;
    row.pass_radius = row.log_disk_radius <= row.required_log_radius;
    rows.push_back(row);
  }
  return rows;
}

Complex disk_transport(const Complex& z) { return exp_2pi_i(z); }

double disk_log_abs(const Complex& z) { return -kTwoPi * z.imag(); }

std::vector<Complex> boundary_polyline(const ParameterLedger& L, int depth,
                                       int per_period, int periods) {
  const ComposedMap M = L.maps(depth);
  // abscissae: uniform across each period plus a logarithmic refinement into
  // the trough needles on both sides of every integer
  std::vector<double> xs;
  const int log_steps = 40;
  for (int p = 0; p < periods; ++p) {
    for (int i = 0; i < per_period; ++i)
      xs.push_back(p + static_cast<double>(i) / per_period);
    for (int k = 1; k <= log_steps; ++k) {
      const double off = std::pow(10.0, -0.5 * k - 1.0);
      xs.push_back(p + off);
      xs.push_back(p + 1.0 - off);
    }
  }
  xs.push_back(periods);
  std::sort(xs.begin(), xs.end());

  std::vector<Complex> out;
  out.reserve(xs.size() + 2 * periods + 2);
  double prev_x = -1.0;
  for (double x : xs) {
    const bool integral = x == std::nearbyint(x);
    if (integral) {
      // the wall below the resolved heights is thinner than any double:
      // render the needle as an exact vertical drop to the trough
      const Complex trough = compose_G(M, Complex(x, 0.0)).value();
      if (prev_x >= 0.0) {
        const Complex wall =
            compose_G(M, Complex(x - 1e-300, 0.0)).value();
        out.push_back(wall);
      }
      out.push_back(trough);
      out.push_back(compose_G(M, Complex(x + 1e-300, 0.0)).value());
    } else {
      out.push_back(compose_G(M, Complex(x, 0.0)).value());
    }
    prev_x = x;
  }
  return out;
}

}  // namespace tubelog
