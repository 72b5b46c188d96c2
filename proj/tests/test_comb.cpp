#include <doctest.h>

#include <cmath>
#include <set>

#include "tubelog/comb.hpp"
#include "tubelog/errors.hpp"

using namespace tubelog;

TEST_SUITE_BEGIN("comb");

namespace {
ParameterLedger toy3() { return declared_ledger({5, 7, 11}, {10.0, 7.0, 6.0}); }
ParameterLedger toy4() {
  return declared_ledger({5, 7, 11, 13}, {10.0, 7.0, 6.0, 5.0});
}
}  // namespace

TEST_CASE("x_of matches the hand-expanded forms") {
  const ParameterLedger L = toy4();
  CHECK(x_of({}, L) == 0);
  CHECK(x_of({1}, L) == BigRat(1, 7));
  CHECK(x_of({-1}, L) == BigRat(-1, 7));
  CHECK(x_of({1, -1}, L) == BigRat(1) - BigRat(1, 11));
  CHECK(x_of({1, 0}, L) == 1);
  CHECK(x_of({1, -1, 1}, L) == BigRat(11) - BigRat(1) + BigRat(1, 13));
  // a_n x is an integer
  for (const Prefix& p :
       std::vector<Prefix>{{1}, {0, 1}, {1, -1}, {1, 0, -1}, {-1, 1, 1}}) {
    const BigRat x = x_of(p, L);
    const std::int64_t an = L.stages[p.size()].U.a;
    CHECK(rat_den(x * an) == 1);
  }
}

TEST_CASE("theta_of is exact and separates digit sequences") {
  const ParameterLedger L = toy4();
  CHECK(theta_of({}, L) == 0);
  CHECK(theta_of({1}, L) == BigRat(1, 35));
  CHECK(theta_of({1, -1}, L) == BigRat(1, 35) - BigRat(1, 385));
  // full depth-3 enumeration is injective, exactly
  std::set<BigRat> seen;
  for (int d0 : {-1, 0, 1})
    for (int d1 : {-1, 0, 1})
      for (int d2 : {-1, 0, 1}) seen.insert(theta_of({d0, d1, d2}, L));
  CHECK(seen.size() == 27);
}

TEST_CASE("theta separation bound of adjacent families") {
  const ParameterLedger L = toy4();
  // families agreeing up to digit i_0 = 1 and increasing there stay at
  // least a third of delta = 1/(a_0 a_1 a_2) apart, exactly
  const BigRat delta(1, BigInt(5) * 7 * 11);
  const BigRat base = theta_of({1, -1}, L);
  for (int tail1 : {-1, 0, 1})
    for (int tail2 : {-1, 0, 1}) {
      const BigRat t1 = theta_of({1, -1, tail1}, L);
      const BigRat t2 = theta_of({1, 0, tail2}, L);
      CHECK(t1 <= base + delta / 3);
      CHECK(t2 >= base + 2 * delta / 3);
      CHECK(t2 - t1 >= delta / 3);
    }
}

TEST_CASE("sigma on the axis is exact at any depth") {
  const ParameterLedger L = toy3();
  for (const Prefix& p : std::vector<Prefix>{{}, {0}, {0, 0}}) {
    const ComposedMap M =
        p.empty() ? ComposedMap{} : L.maps(static_cast<int>(p.size()) - 1);
    const CurveSample s = sigma_point(M, x_of(p, L), 1.37);
    CHECK(s.sigma == Complex(0.0, 1.37));
    CHECK(s.d1 == Complex(0.0, 1.0));
  }
}

TEST_CASE("sigma solves one level and matches finite differences") {
  const ParameterLedger L = toy3();
  const ComposedMap M = L.maps(0);
  const BigRat x(3, 10);
  const double t = 10.4;
  const CurveSample s = sigma_point(M, x, t);
  CHECK(s.sigma.imag() == t);

  const double d = 1e-5;
  const CurveSample up = sigma_point(M, x, t + d);
  const CurveSample dn = sigma_point(M, x, t - d);
  const double fd1 = (up.sigma.real() - dn.sigma.real()) / (2 * d);
  CHECK(s.d1.real() == doctest::Approx(fd1).epsilon(1e-5));
  CHECK(s.d1.imag() == 1.0);

  const double dd = 1e-3;
  const CurveSample up2 = sigma_point(M, x, t + dd);
  const CurveSample dn2 = sigma_point(M, x, t - dd);
  const double fd2 =
      (up2.sigma.real() - 2 * s.sigma.real() + dn2.sigma.real()) / (dd * dd);
  REQUIRE(s.jets_ok);
  CHECK(s.d2.real() == doctest::Approx(fd2).epsilon(1e-2));
}

TEST_CASE("sigma solves a two-level tower") {
  const ParameterLedger L = toy3();
  const ComposedMap M = L.maps(1);
  const BigRat x(3, 10);
  const double t = 11.7;
  const CurveSample s = sigma_point(M, x, t);
  CHECK(s.sigma.imag() == t);
  CHECK(std::isfinite(s.d1.real()));
  const double d = 1e-5;
  const double fd1 = (sigma_point(M, x, t + d).sigma.real() -
                      sigma_point(M, x, t - d).sigma.real()) /
                     (2 * d);
  CHECK(s.d1.real() == doctest::Approx(fd1).epsilon(1e-5));
}

TEST_CASE("exact reduction: a trailing zero digit reproduces the parent") {
  const ParameterLedger L = toy3();
  const double t = 10.4;
  // prefix (1,0): x = 1, reduces through the deepest level to x = 1/7
  const CurveSample child = sigma_point(L.maps(1), x_of({1, 0}, L), t);
  const CurveSample parent = sigma_point(L.maps(0), x_of({1}, L), t);
  CHECK(std::abs(child.sigma - parent.sigma) < 1e-12);
  CHECK(std::abs(child.d1 - parent.d1) < 1e-10);
}

TEST_CASE("sigma reports honest bracket failures at unreachable heights") {
  const ParameterLedger L = toy3();
  // a non-integral line whose image never descends to the strip
  CHECK_THROWS_AS(sigma_point(L.maps(0), BigRat(1, 8), 1.5), BracketFailure);
}

TEST_CASE("build_curve and cr_distance") {
  const ParameterLedger L = toy3();
  std::vector<double> grid;
  for (int i = 0; i < 9; ++i) grid.push_back(10.3 + 0.05 * i);
  CombCurve a;
  a.prefix = {0};
  a.x_value = BigRat(3, 10);
  a.theta = 0;
  CombCurve b = a;
  for (double t : grid) {
    a.samples.push_back(sigma_point(L.maps(0), BigRat(3, 10), t));
    b.samples.push_back(sigma_point(L.maps(0), BigRat(30001, 100000), t));
  }
  CHECK(cr_distance(a, a, 3) == 0.0);
  const double d0 = cr_distance(a, b, 0);
  CHECK(d0 > 0.0);
  CHECK(d0 < 1e-3);
  CHECK(cr_distance(a, b, 1) >= d0);
}

TEST_CASE("atlas at depth 0 holds the single base curve") {
  const ParameterLedger L = toy3();
  const CombAtlas atlas = build_atlas(L, 0, 16);
  REQUIRE(atlas.curves.size() == 1);
  CHECK(atlas.curves[0].prefix.empty());
  for (const CurveSample& s : atlas.curves[0].samples) {
    CHECK(s.sigma.real() == 0.0);
    CHECK(s.sigma.imag() == s.t);
  }
  CHECK(atlas.t_grid.size() == 16);
  CHECK(atlas.t_grid.front() == 1.0);
  CHECK(atlas.t_grid.back() == 2.0);
}

TEST_CASE("phi extracts digits exactly and reports truncation bounds") {
  const ParameterLedger L = toy3();
  // theta = 0: the axis at every depth, bound still reported
  const PhiResult p0 = phi(L, BigRat(0), 1.5, 0);
  CHECK(p0.value == Complex(0.0, 1.5));
  CHECK(p0.trunc_bound == doctest::Approx(0.1 / 35.0));
  // theta of prefix (1) at a feasible height matches sigma directly
  const BigRat th = theta_of({1}, L);
  const PhiResult p1 = phi(L, th, 11.7, 1);
  const CurveSample s = sigma_point(L.maps(0), x_of({1}, L), 11.7);
  CHECK(std::abs(p1.value - s.sigma) < 1e-12);
  // deeper evaluation of the same finite theta is unchanged (trailing zeros)
  const PhiResult p2 = phi(L, th, 11.7, 2);
  CHECK(std::abs(p2.value - p1.value) < 1e-12);
  // a theta that is no digit expansion over these divisors
  CHECK_THROWS_AS(phi(L, BigRat(1, 2), 1.5, 2), UnrealizableTheta);
}

TEST_CASE("holder and lipschitz verifiers on a synthetic atlas") {
  // synthetic comb data at a gentle slope: passes both bounds
  CombAtlas atlas;
  atlas.depth = 1;
  for (int i = 0; i < 8; ++i) atlas.t_grid.push_back(1.0 + i / 7.0);
  for (int k = -1; k <= 1; ++k) {
    CombCurve c;
    c.prefix = {k};
    c.theta = BigRat(k, 1000);
    c.x_value = 0;
    for (double t : atlas.t_grid) {
      CurveSample s;
      s.t = t;
      s.sigma = {0.5 * k / 1000.0 + 0.01 * std::sin(t), t};
      s.d1 = {0.01 * std::cos(t), 1.0};
      c.samples.push_back(s);
    }
    atlas.curves.push_back(c);
  }
  const PairCheckReport h = verify_holder(atlas, 0.75);
  CHECK(h.pass);
  CHECK(h.pairs > 0);
  CHECK(h.worst_ratio <= 1.0);
  const PairCheckReport lp = verify_lipschitz_inverse(atlas);
  CHECK(lp.pass);

  // above the certified exponent the check is out of scope, not a failure
  const PairCheckReport scoped = verify_holder(atlas, 0.9, -1.0, 0.8);
  CHECK(scoped.pass);
  CHECK_FALSE(scoped.certified);

  // a deliberate violation is caught: huge transversal jump, tiny theta gap
  CombAtlas bad = atlas;
  for (CurveSample& s : bad.curves[2].samples) s.sigma += Complex(0.49, 0.0);
  const PairCheckReport hb = verify_holder(bad, 0.75);
  CHECK_FALSE(hb.pass);
}

TEST_CASE("lipschitz verifier catches collapsing combs") {
  // two distinct thetas mapped onto the same curve: the inverse bound fails
  CombAtlas atlas;
  atlas.depth = 1;
  for (int i = 0; i < 4; ++i) atlas.t_grid.push_back(1.0 + i / 3.0);
  for (int k = 0; k <= 1; ++k) {
    CombCurve c;
    c.prefix = {k};
    c.theta = BigRat(k, 10);
    for (double t : atlas.t_grid) {
      CurveSample s;
      s.t = t;
      s.sigma = {0.0, t};
      c.samples.push_back(s);
    }
    atlas.curves.push_back(c);
  }
  const PairCheckReport lp = verify_lipschitz_inverse(atlas);
  CHECK_FALSE(lp.pass);
}

TEST_SUITE_END();
