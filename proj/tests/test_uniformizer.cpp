#include <doctest.h>

#include <cmath>

#include "tubelog/errors.hpp"
#include "tubelog/uniformizer.hpp"

using namespace tubelog;

TEST_SUITE_BEGIN("uniformizer");

namespace {
// independent fixed-point oracle for the amplitude equation, run in A-space
double oracle_A(std::int64_t a, double h) {
  const double e2 = kTwoPi * a * h;
  // lambda = e^{2 pi a h} log(2 - e^{-lambda}); at every valid (a,h) the
  // first iterate already has e^{-lambda} = 0, so two iterations fix it
  double A = e2 + std::log(std::log(2.0));
  for (int it = 0; it < 2; ++it) {
    const double em = A < 6.6 ? std::exp(-std::exp(A)) : 0.0;
    A = e2 + std::log(std::log(2.0 - em));
  }
  return A;
}
}  // namespace

TEST_CASE("solve_lambda matches the fixed-point oracle") {
  const NormalizedUniformizer U = solve_lambda(1, 2.5);
  CHECK(U.A == doctest::Approx(oracle_A(1, 2.5)).epsilon(1e-14));
  CHECK(U.A == doctest::Approx(15.3414503473673019).epsilon(1e-13));
  CHECK(U.shift == 1.0);
  CHECK(U.trough_height() == doctest::Approx(-U.A / kTwoPi));
}

TEST_CASE("solve_lambda residual and monotonicity") {
  for (std::int64_t a : {1, 2, 5, 10})
    for (double h : {2.5, 3.0, 7.0, 10.0})
      CHECK(lambda_residual(solve_lambda(a, h)) < 1e-12);

  double prev = -1.0;
  for (std::int64_t a : {1, 2, 5, 10}) {
    const double A = solve_lambda(a, 3.0).A;
    CHECK(A > prev);
    prev = A;
  }
  prev = -1.0;
  for (double h : {2.5, 3.0, 7.0, 10.0}) {
    const double A = solve_lambda(3, h).A;
    CHECK(A > prev);
    prev = A;
  }
  CHECK_THROWS_AS(solve_lambda(0, 3.0), DomainError);
  CHECK_THROWS_AS(solve_lambda(1, 2.0), DomainError);
}

TEST_CASE("base_K tail matches the two-term series") {
  const Complex z(0.5, 4.0);
  const Complex w = exp_2pi_i(z);
  const Complex tail = base_K(z) - z;
  CHECK(std::abs(tail) <= 2e-12);
  // K(z) - z ~ w/(4 pi i)
  const Complex series = w / Complex(0.0, 4.0 * kPi);
  CHECK(std::abs(tail - series) < 1e-2 * std::abs(series) + 1e-18);
}

TEST_CASE("base_K is purely imaginary on the axis") {
  for (double y : {0.1, 0.5, 1.0, 3.0, 7.5}) {
    CHECK(std::abs(base_K(Complex(0.0, y)).real()) == 0.0);
  }
}

TEST_CASE("base_K period-1 functional equation") {
  const Complex z(0.3, 0.7);
  CHECK(std::abs(base_K(z + 1.0) - base_K(z) - 1.0) <= 1e-13);
  SplitMix64 rng(0xF00D);
  for (int i = 0; i < 200; ++i) {
    const Complex q(rng.uniform(-3.0, 3.0), rng.uniform(1e-3, 10.0));
    CHECK(std::abs(base_K(q + 1.0) - base_K(q) - 1.0) < 1e-12);
  }
}

TEST_CASE("base_K asymptotic bound |K - z| < 2|w| above height 2") {
  SplitMix64 rng(0xBEEF);
  for (int i = 0; i < 100; ++i) {
    const Complex z(rng.uniform(-2.0, 2.0), rng.uniform(2.0, 12.0));
    CHECK(std::abs(base_K(z) - z) < 2.0 * std::abs(exp_2pi_i(z)));
  }
}

TEST_CASE("norm_K troughs and peaks") {
  for (std::int64_t a : {1, 4}) {
    for (double h : {2.5, 3.0}) {
      const NormalizedUniformizer U = solve_lambda(a, h);
      for (int n = -3; n <= 3; ++n) {
        const Complex tr = norm_K(Complex(n, 0.0), U);
        CHECK(tr.imag() == 0.0);
        CHECK(std::abs(tr.real() - static_cast<double>(n) / a) < 1e-12);
        const Complex pk = norm_K(Complex(n + 0.5, 0.0), U);
        CHECK(std::abs(pk.imag() - h) < 1e-10);
      }
    }
  }
}

TEST_CASE("norm_K period functional equation and axis reality") {
  const NormalizedUniformizer U = solve_lambda(3, 3.0);
  SplitMix64 rng(0xABCD);
  for (int i = 0; i < 100; ++i) {
    const Complex z(rng.uniform(-2.0, 2.0), rng.uniform(1e-3, 10.0));
    CHECK(std::abs(norm_K(z + 1.0, U) - norm_K(z, U) - Complex(1.0 / 3, 0)) <
          1e-12);
  }
  for (int i = 1; i <= 20; ++i)
    CHECK(std::abs(norm_K(Complex(0.0, 0.5 * i), U).real()) == 0.0);
}

TEST_CASE("asymptotic gap: finite, a-independent, decaying upward") {
  double prev = -1.0;
  for (std::int64_t a : {3, 6, 12}) {
    const double C = norm_K_asymptotic_gap(solve_lambda(a, 3.0));
    CHECK(std::isfinite(C));
    CHECK(C > 0.0);
    CHECK(C < 0.5);
    if (prev > 0.0) CHECK(C <= prev * 1.05);
    prev = C;
  }
  const auto rows = norm_K_gap_rows(solve_lambda(3, 3.0), GapGrid{1.5, 20.0, 96, 8});
  // every pointwise gap in the top row is below the bottom row's sup
  CHECK(rows.back().second <= rows.front().second);
}

TEST_CASE("derivative matches finite differences") {
  const NormalizedUniformizer U = solve_lambda(2, 3.0);
  const double e = 1e-6;
  SplitMix64 rng(0xD1FF);
  int used = 0;
  while (used < 50) {
    const Complex z(rng.uniform(-2.0, 2.0), rng.uniform(0.3, 4.0));
    const LogDeriv d = norm_K_derivative(z, U);
    if (std::abs(d.mag.log_abs) >= 30.0) continue;
    const Complex fd =
        (norm_K(z + Complex(e, 0), U) - norm_K(z - Complex(e, 0), U)) /
        (2.0 * e);
    CHECK(std::abs(d.to_complex() - fd) < 1e-6 * std::abs(fd));
    ++used;
  }
  // specific point from the closed-form/oracle comparison
  const LogDeriv d = norm_K_derivative(Complex(0.3, 2.0), U);
  const Complex fd =
      (norm_K(Complex(0.3 + e, 2.0), U) - norm_K(Complex(0.3 - e, 2.0), U)) /
      (2.0 * e);
  CHECK(std::abs(d.to_complex() - fd) < 1e-6 * std::abs(fd));
}

TEST_CASE("derivative phase is positive real on the axis") {
  const NormalizedUniformizer U = solve_lambda(2, 3.0);
  for (double y : {0.5, 1.0, 2.0, 5.0}) {
    const LogDeriv d = norm_K_derivative(Complex(0.0, y), U);
    CHECK(d.phase.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(d.phase.imag()) < 1e-12);
  }
}

TEST_CASE("expansion bound along trough verticals") {
  // representable-scale case: the whole segment can be sampled in y
  const NormalizedUniformizer U = solve_lambda(1, 2.5);
  const ThresholdSegment seg = threshold_segment(U, 2.0);
  REQUIRE(seg.y0 > 0.0);
  for (int i = 1; i <= 12; ++i) {
    const double y = seg.y0 * i / 12.0;
    const Complex u = norm_inner_u(Complex(0.0, y), U);
    CHECK(log_abs_aKprime(u) >= seg.logbound.log_abs - 1e-9);
  }
  // u-space sampling covers the segment at construction scales too
  const NormalizedUniformizer U5 = solve_lambda(5, 10.0);
  const ThresholdSegment seg5 = threshold_segment(U5, 9.5);
  CHECK(seg5.y0 == 0.0);  // below every representable chart height
  for (int i = 0; i <= 12; ++i) {
    const double s = seg5.log_u_top + (350.0 - seg5.log_u_top) * i / 12.0;
    CHECK(log_abs_aKprime(Complex(std::exp(std::min(s, 700.0)), 0.0)) > 0.0);
  }
}

TEST_CASE("threshold segment closed form against axis bisection") {
  const NormalizedUniformizer U = solve_lambda(1, 2.5);
  const ThresholdSegment seg = threshold_segment(U, 2.0);
  // independent oracle: geometric bisection of Im norm_K(i y) = 2
  double lo = 1e-12, hi = 1e-4;
  REQUIRE(norm_K(Complex(0.0, lo), U).imag() < 2.0);
  REQUIRE(norm_K(Complex(0.0, hi), U).imag() > 2.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (norm_K(Complex(0.0, mid), U).imag() >= 2.0 ? hi : lo) = mid;
  }
  CHECK(seg.y0 == doctest::Approx(hi).epsilon(1e-9));
  // log w0 = pi + O(1); the O(1) slack is log log 2
  CHECK(std::abs(seg.log_u_top - kPi) < 1.0);
  CHECK(seg.o1_slack == doctest::Approx(kLogLog2).epsilon(1e-12));
  // monotone: y0 grows as v approaches h
  CHECK(threshold_segment(U, 2.4).y0 > threshold_segment(U, 2.0).y0);
}

TEST_CASE("inversion round trips") {
  const NormalizedUniformizer U = solve_lambda(3, 3.0);
  const Complex z(1.3, 2.0);
  CHECK(std::abs(invert_norm_K(norm_K(z, U), U) - z) < 1e-10);
  CHECK(std::abs(invert_norm_K(Complex(0.0, 0.0), U)) == 0.0);
}

TEST_CASE("inversion hint lands near the preimage") {
  const NormalizedUniformizer U = solve_lambda(4, 3.0);
  const Complex w(5.0 / 4.0, 3.01);
  const Complex root = invert_norm_K(w, U);
  CHECK(std::abs(norm_K(root, U) - w) < 1e-12);
  CHECK(std::abs(invert_hint(w, U) - root) < 0.1);
  // Newton from the hint converges to the same point
  CHECK(std::abs(invert_norm_K(w, U, invert_hint(w, U)) - root) < 1e-9);
}

TEST_CASE("cylinder end closed form and spacing") {
  const NormalizedUniformizer U = solve_lambda(1, 2.5);
  const Complex e1 = cylinder_end(U, 1);
  CHECK(e1.real() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(e1.imag() ==
        doctest::Approx((oracle_A(1, 2.5) - std::log(kTwoPi)) / kTwoPi)
            .epsilon(1e-13));
  CHECK(e1.imag() == doctest::Approx(2.1491604370681).epsilon(1e-10));
  CHECK_THROWS_AS(cylinder_end(U, 0), DomainError);

  // heights approach h with deficit C_1/a, C_1 stable across a
  double c1_prev = -1.0;
  for (std::int64_t a : {2, 4, 8, 16}) {
    const NormalizedUniformizer Ua = solve_lambda(a, 3.0);
    const double c1 = a * (3.0 - cylinder_end(Ua, 1).imag());
    CHECK(c1 > 0.0);
    CHECK(c1 == doctest::Approx(0.35083956293).epsilon(1e-9));
    if (c1_prev > 0.0) CHECK(std::abs(c1 - c1_prev) < 0.1 * c1_prev);
    c1_prev = c1;
  }
}

TEST_CASE("ramification projections raise domain errors") {
  const NormalizedUniformizer U = solve_lambda(2, 3.0);
  CHECK_THROWS_AS(base_K(Complex(1.0, 0.0)), DomainError);
  // the trough closed form handles the integer points for norm_K
  CHECK(norm_K(Complex(1.0, 0.0), U) == Complex(0.5, 0.0));
}

TEST_SUITE_END();
