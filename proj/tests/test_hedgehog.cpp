#include <doctest.h>

#include <cmath>

#include "tubelog/hedgehog.hpp"
#include "tubelog/semiflow.hpp"

using namespace tubelog;

TEST_SUITE_BEGIN("hedgehog");

namespace {
ParameterLedger toy3() { return declared_ledger({5, 7, 11}, {10.0, 7.0, 23.0}); }
}  // namespace

TEST_CASE("the closed axis belongs to every approximant") {
  const ParameterLedger L = toy3();
  for (int depth : {0, 1, 2})
    for (double y : {0.0, 0.5, 1.5, 4.0, 12.0}) {
      const Membership m = hedgehog_contains(L, Complex(0.0, y), depth);
      CHECK(m.member);
      CHECK(m.margin >= -1e-12);
    }
}

TEST_CASE("membership margins reproduce value-plane offsets at depth 1") {
  const ParameterLedger L = toy3();
  // slightly below a trough of the first map: outside, margin ~ -0.01
  const Membership below =
      hedgehog_contains(L, Complex(0.2, -0.01), 0);
  CHECK_FALSE(below.member);
  CHECK(below.margin == doctest::Approx(-0.01).epsilon(1e-6));
  // slightly above: inside with the mirrored margin
  const Membership above = hedgehog_contains(L, Complex(0.2, 0.01), 0);
  CHECK(above.member);
  CHECK(above.margin == doctest::Approx(0.01).epsilon(1e-6));
}

TEST_CASE("interior offsets at the deepest preimage are members") {
  const ParameterLedger L = toy3();
  const ComposedMap M = L.maps(1);
  SplitMix64 rng(0x0FF5);
  for (int i = 0; i < 25; ++i) {
    const Complex deep(rng.uniform(0.05, 0.95), 0.01);
    const Complex z = compose_G(M, deep).value();
    const Membership m = hedgehog_contains(L, z, 1);
    CHECK(m.member);
    CHECK(m.margin > 0.0);
    CHECK(m.margin == doctest::Approx(0.01).epsilon(1e-4));
  }
}

TEST_CASE("boundary points sit at vanishing margin") {
  const ParameterLedger L = toy3();
  for (int depth : {0, 1}) {
    const std::vector<Complex> poly = boundary_polyline(L, depth, 64, 1);
    int tested = 0;
    for (std::size_t i = 0; i < poly.size(); i += 7) {
      const Membership m = hedgehog_contains(L, poly[i], depth);
      CHECK(std::abs(m.margin) < 1e-6);
      ++tested;
    }
    CHECK(tested > 5);
  }
}

TEST_CASE("approximants are nested") {
  const ParameterLedger L = toy3();
  SplitMix64 rng(0x4E57);
  int members_deep = 0;
  for (int i = 0; i < 60; ++i) {
    const Complex z(rng.uniform(-0.5, 0.5), rng.uniform(0.0, 13.0));
    const Membership deep = hedgehog_contains(L, z, 2);
    const Membership mid = hedgehog_contains(L, z, 1);
    const Membership shallow = hedgehog_contains(L, z, 0);
    if (deep.member) {
      ++members_deep;
      CHECK(mid.member);
    }
    if (mid.member) CHECK(shallow.member);
  }
  CHECK(members_deep > 0);
}

TEST_CASE("flow images of interior points remain members") {
  const ParameterLedger L = toy3();
  std::vector<BigRat> times = {BigRat(1, 5), BigRat(1, 5) + BigRat(1, 385),
                               BigRat(-1, 35) + BigRat(1, 385)};
  std::vector<Complex> pts;
  SplitMix64 rng(0x1A57);
  while (pts.size() < 8) {
    const Complex z(rng.uniform(0.0, 1.0), rng.uniform(11.5, 12.5));
    if (hedgehog_contains(L, z, 1).member) pts.push_back(z);
  }
  const InvarianceReport rep = invariance_check(L, 1, times, pts);
  CHECK(rep.all_pass);
  CHECK(rep.rows.size() == times.size() * pts.size());
  for (const InvarianceRow& r : rep.rows) CHECK(r.margin_after >= -1e-8);
}

TEST_CASE("evidence rows: heights, radii, cardinalities") {
  const ParameterLedger L = toy3();
  const std::vector<EvidenceRow> rows = nonlinearisability_evidence(L, 2);
  REQUIRE(rows.size() == 3);
  // stage 0 orbits: the closed form puts them a hair below h_0
  CHECK(rows[0].min_height == doctest::Approx(10.0 - 0.35083956 / 5).epsilon(1e-6));
  CHECK_FALSE(rows[0].pass_height);
  CHECK(rows[0].orbit_points == 5);
  // transported stage-1 and stage-2 orbits clear their floors
  CHECK(rows[1].pass_height);
  CHECK(rows[1].min_height > 11.0);
  CHECK(rows[1].orbit_points == 7);
  CHECK(rows[2].pass_height);
  CHECK(rows[2].min_height > 12.0);
  // radii in log space match the heights exactly
  for (const EvidenceRow& r : rows)
    CHECK(r.log_disk_radius == -kTwoPi * r.min_height);
  // strictly decreasing radii down the table
  CHECK(rows[1].log_disk_radius < rows[0].log_disk_radius);
  CHECK(rows[2].log_disk_radius < rows[1].log_disk_radius);
}

TEST_CASE("disk transport") {
  CHECK(disk_transport(Complex(0.0, 0.0)) == Complex(1.0, 0.0));
  // periodicity is bit-exact
  const Complex z(0.37, 2.5);
  CHECK(std::abs(disk_transport(z + 1.0) - disk_transport(z)) < 1e-20);
  // heights map to log radii exactly
  CHECK(disk_log_abs(Complex(0.3, 10.0)) == doctest::Approx(-kTwoPi * 10.0));
  // e^{-20 pi} is tiny but representable
  CHECK(std::abs(disk_transport(Complex(0.0, 10.0))) ==
        doctest::Approx(5.116e-28).epsilon(1e-3));
  // far above the representable range the log form keeps working
  CHECK(disk_transport(Complex(0.0, 200.0)) == Complex(0.0, 0.0));
  CHECK(disk_log_abs(Complex(0.0, 200.0)) == doctest::Approx(-kTwoPi * 200.0));
}

TEST_CASE("conjugation compatibility through the covering") {
  // E(F_t(z + 1)) = E(F_t(z)): the flow commutes with the deck and E kills it
  const ParameterLedger L = toy3();
  const ComposedMap M = L.maps(0);
  const std::vector<std::int64_t> a = L.a_values();
  const BigRat t = BigRat(1, 5) + BigRat(1, 35);
  SplitMix64 rng(0xE0E0);
  for (int i = 0; i < 10; ++i) {
    const Complex z(rng.uniform(0.0, 1.0), rng.uniform(11.5, 13.0));
    const Complex f1 = semiflow_apply(M, a, t, z + 1.0);
    const Complex f0 = semiflow_apply(M, a, t, z);
    CHECK(std::abs(disk_transport(f1) - disk_transport(f0)) < 1e-10);
  }
}

TEST_CASE("boundary polylines are periodic with the expected period") {
  const ParameterLedger L = toy3();
  const std::vector<Complex> poly = boundary_polyline(L, 0, 128, 1);
  CHECK(poly.size() > 128);
  // the image of the axis shifts by exactly 1/a_0 per unit of x
  const ComposedMap M = L.maps(0);
  for (double x : {0.13, 0.41, 0.77}) {
    const Complex v0 = compose_G(M, Complex(x, 0.0)).value();
    const Complex v1 = compose_G(M, Complex(x + 1.0, 0.0)).value();
    CHECK(std::abs(v1 - v0 - Complex(0.2, 0.0)) < 1e-13);
  }
}

TEST_SUITE_END();
