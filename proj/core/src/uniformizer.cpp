#include "tubelog/uniformizer.hpp"

#include <cmath>

#include "tubelog/errors.hpp"

namespace tubelog {

namespace {

const Complex kI(0.0, 1.0);

// (1/2 pi i) * Log(v), principal branch
Complex log_over_2pii(const Complex& v) {
  const Complex lv = std::log(v);
  return {lv.imag() / kTwoPi, -lv.real() / kTwoPi};
}

}  // namespace

NormalizedUniformizer solve_lambda(std::int64_t a, double h) {
  if (a < 1) throw DomainError("solve_lambda: a must be a positive integer");
  if (!(h > 2.0)) throw DomainError("solve_lambda: h must exceed 2");

  const double e2 = kTwoPi * static_cast<double>(a) * h;  // log of e^{2 pi a h}
  NormalizedUniformizer U;
  U.a = a;
  U.h = h;

  if (e2 > 700.0) {
    // e^{-lambda} underflows before the first iterate; closed form in A.
    U.A = e2 + kLogLog2;
    U.shift = 1.0;
    return U;
  }

  const double scale = std::exp(e2);
  double lam = scale * std::log(2.0);
  double A_prev = std::log(lam);
  const int cap = 100;
  bool converged = false;
  for (int it = 0; it < cap; ++it) {
    const double next = scale * std::log(2.0 - std::exp(-lam));
    const double A_next = std::log(next);
    lam = next;
    if (std::abs(A_next - A_prev) < 1e-14) {
      converged = true;
      A_prev = A_next;
      break;
    }
    A_prev = A_next;
  }
  if (!converged) throw NonConvergence("solve_lambda: iteration cap reached");
  U.A = A_prev;
  U.shift = lam <= 745.0 ? -std::expm1(-lam) : 1.0;
  return U;
}

double lambda_residual(const NormalizedUniformizer& U) {
  const double e2 = kTwoPi * static_cast<double>(U.a) * U.h;
  double inner;
  if (U.A > 6.7) {
    // lambda > ~800: e^{-lambda} is exactly zero at working precision
    inner = kLogLog2;
  } else {
    const double lam = std::exp(U.A);
    inner = std::log(std::log(2.0 - std::exp(-lam)));
  }
  return std::abs(U.A - (e2 + inner));
}

Complex inner_q(const Complex& w) {
  if (inf_norm(w) < 0.25) {
    // q(w) = sum_{k>=0} w^k/(k+1); 48 terms cover |w| <= 0.25 to below 1e-30
    Complex acc(0.0, 0.0);
    for (int k = 48; k >= 0; --k) {
      acc = acc * w + Complex(1.0 / (k + 1.0), 0.0);
    }
    return acc;
  }
  const Complex one_minus = 1.0 - w;
  if (one_minus == Complex(0.0, 0.0))
    throw DomainError("inner_q: ramification point (w == 1)");
  return -log1p(-w) / w;
}

Complex inner_u(const Complex& w, int inner) {
  const Complex one_minus = 1.0 - w;
  if (one_minus == Complex(0.0, 0.0))
    throw DomainError("inner_u: ramification point (w == 1)");
  return -log1p(-w) + Complex(0.0, kTwoPi * inner);
}

Complex base_K(const Complex& z, const BranchState& branch) {
  const Complex w = exp_2pi_i(z);
  if (branch.inner == 0) {
    const Complex q = inner_q(w);
    return z + log_over_2pii(q) + Complex(branch.outer, 0.0);
  }
  const Complex u = inner_u(w, branch.inner);
  return log_over_2pii(u) + Complex(branch.outer, 0.0);
}

Complex norm_inner_u(const Complex& z, const NormalizedUniformizer& U,
                     int inner) {
  return inner_u(exp_2pi_i(z) * U.shift, inner);
}

Complex norm_K(const Complex& z, const NormalizedUniformizer& U,
               const BranchState& branch) {
  const double inv_a = 1.0 / static_cast<double>(U.a);
  if (branch.inner == 0 && branch.outer == 0 && z.imag() == 0.0 &&
      z.real() == std::nearbyint(z.real())) {
    // troughs sit exactly at n/a by the normalization
    return {z.real() * inv_a, 0.0};
  }
  const Complex norm_c(0.0, U.A / kTwoPi);
  const Complex w = exp_2pi_i(z) * U.shift;
  if (branch.inner == 0) {
    const double delta = U.shift == 1.0 ? 0.0 : -std::log(U.shift) / kTwoPi;
    const Complex K = z + Complex(0.0, delta) + log_over_2pii(inner_q(w));
    return (K + Complex(branch.outer, 0.0) + norm_c) * inv_a;
  }
  const Complex u = inner_u(w, branch.inner);
  const Complex K = log_over_2pii(u) + Complex(branch.outer, 0.0);
  return (K + norm_c) * inv_a;
}

Complex value_from_L(const NormalizedUniformizer& U, std::int64_t n,
                     const Complex& L) {
  const double inv_a = 1.0 / static_cast<double>(U.a);
  return {(static_cast<double>(n) + L.imag() / kTwoPi) * inv_a,
          (U.A - L.real()) / kTwoPi * inv_a};
}

Complex L_from_value(const NormalizedUniformizer& U, std::int64_t n,
                     const Complex& value) {
  const double a = static_cast<double>(U.a);
  return {U.A - kTwoPi * a * value.imag(),
          kTwoPi * (a * value.real() - static_cast<double>(n))};
}

double log_abs_aKprime(const Complex& u) {
  if (u == Complex(0.0, 0.0)) return 0.0;  // limit value 1
  if (std::isinf(u.real())) return u.real();
  if (u.real() <= 700.0) {
    const Complex e = expm1(u);
    return std::log(std::abs(e)) - std::log(std::abs(u));
  }
  double corr = 0.0;
  if (u.real() <= 745.0) corr = log1p(-std::exp(-u)).real();
  return u.real() + corr - std::log(std::abs(u));
}

LogDeriv norm_K_derivative(const Complex& z, const NormalizedUniformizer& U,
                           const BranchState& branch) {
  const Complex u = norm_inner_u(z, U, branch.inner);
  const double log_a = std::log(static_cast<double>(U.a));
  LogDeriv d;
  if (inf_norm(u) < 1e-12) {
    // (e^u-1)/u -> 1
    d.mag = LogMagnitude::from_log(-log_a);
    d.phase = {1.0, 0.0};
    return d;
  }
  if (u.real() <= 300.0) {
    const Complex c = expm1(u) / u;
    const double ab = std::abs(c);
    d.mag = LogMagnitude::from_log(std::log(ab) - log_a);
    d.phase = c / ab;
    return d;
  }
  // log K' = u + log(1 - e^{-u}) - Log u, assembled in log space
  Complex logc = u - std::log(u);
  if (u.real() <= 745.0) logc += log1p(-std::exp(-u));
  d.mag = LogMagnitude::from_log(logc.real() - log_a);
  d.phase = {std::cos(logc.imag()), std::sin(logc.imag())};
  return d;
}

KPrimeRatios norm_K_prime_ratios(const Complex& z,
                                 const NormalizedUniformizer& U,
                                 const BranchState& branch) {
  const Complex u = norm_inner_u(z, U, branch.inner);
  KPrimeRatios r;
  if (u.real() > 690.0) return r;  // e^u not representable
  const Complex tpi(0.0, kTwoPi);
  if (inf_norm(u) < 1e-8) {
    // g = u/2 + u^2/3 + ..., g' = 1/2 + 2u/3 + ...
    r.r1 = tpi * (0.5 * u + u * u / 3.0);
    r.r2 = tpi * (0.5 + 2.0 * u / 3.0) * (tpi * expm1(u));
    r.ratios_ok = true;
    return r;
  }
  const Complex eu = std::exp(u);
  const Complex em = expm1(u);
  const Complex g = eu - em / u;
  const Complex gp = eu + (em - u * eu) / (u * u);
  const Complex up = tpi * em;
  r.r1 = tpi * g;
  r.r2 = tpi * gp * up;
  r.ratios_ok = true;
  return r;
}

double norm_K_asymptotic_gap(const NormalizedUniformizer& U,
                             const GapGrid& grid) {
  double sup = 0.0;
  for (const auto& [y, row] : norm_K_gap_rows(U, grid)) {
    (void)y;
    sup = std::max(sup, row);
  }
  return sup;
}

std::vector<std::pair<double, double>> norm_K_gap_rows(
    const NormalizedUniformizer& U, const GapGrid& grid) {
  const double a = static_cast<double>(U.a);
  std::vector<std::pair<double, double>> rows;
  rows.reserve(grid.ny);
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double y =
        grid.y_min + (grid.y_max - grid.y_min) * iy / std::max(1, grid.ny - 1);
    double row = 0.0;
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = static_cast<double>(ix) / grid.nx;  // one full period
      const Complex z(x, y);
      const Complex gap = a * norm_K(z, U) - z - Complex(0.0, a * U.h);
      row = std::max(row, std::abs(gap));
    }
    rows.emplace_back(y, row);
  }
  return rows;
}

ThresholdSegment threshold_segment(const NormalizedUniformizer& U, double v) {
  if (!(v > 0.0) || !(v < U.h))
    throw DomainError("threshold_segment: need 0 < v < h");
  ThresholdSegment seg;
  const double a = static_cast<double>(U.a);
  seg.log_u_top = U.A - kTwoPi * a * v;
  seg.o1_slack = seg.log_u_top - kTwoPi * a * (U.h - v);

  const double w0 = seg.log_u_top <= 709.0
                        ? std::exp(seg.log_u_top)
                        : std::numeric_limits<double>::infinity();
  if (w0 <= 745.0) {
    seg.y0 = -std::log1p(-std::exp(-w0)) / kTwoPi;
  } else {
    seg.y0 = 0.0;  // below every representable chart height
  }
  if (std::isinf(w0)) {
    seg.logbound = LogMagnitude::from_log(w0);  // beyond double range
  } else if (w0 <= 700.0) {
    seg.logbound =
        LogMagnitude::from_log(std::log(std::expm1(w0)) - std::log(w0));
  } else {
    seg.logbound = LogMagnitude::from_log(w0 - std::log(w0));
  }
  return seg;
}

Complex invert_hint(const Complex& w, const NormalizedUniformizer& U) {
  return static_cast<double>(U.a) * (w - Complex(0.0, U.h));
}

namespace {

Complex invert_closed_form(const Complex& w, const NormalizedUniformizer& U) {
  const double a = static_cast<double>(U.a);
  const double an = a * w.real();
  const double n = std::nearbyint(an);
  const Complex L(U.A - kTwoPi * a * w.imag(), kTwoPi * (an - n));
  if (L.real() > 700.0) {
    // chart coordinate collapses: the preimage hugs the trough below every
    // representable height
    return {n, 0.0};
  }
  const Complex u = std::exp(L);
  if (std::abs(u.imag()) > kPi + 1e-9 && std::abs(u) > kPi)
    throw DomainError("invert_norm_K: preimage leaves the base sheet");
  const Complex wc = -expm1(-u) / U.shift;
  const Complex lw = std::log(wc);
  return {n + lw.imag() / kTwoPi, -lw.real() / kTwoPi};
}

}  // namespace

Complex invert_norm_K(const Complex& w, const NormalizedUniformizer& U) {
  Complex z = invert_closed_form(w, U);
  if (z.imag() == 0.0 && z.real() == std::nearbyint(z.real()))
    return z;  // exact trough, nothing to polish
  // one polish step when the derivative is representable
  const LogDeriv d = norm_K_derivative(z, U);
  if (std::abs(d.mag.log_abs) < 300.0) {
    const Complex r = norm_K(z, U) - w;
    if (std::abs(r) > 1e-14) z -= r / d.to_complex();
  }
  return z;
}

Complex invert_norm_K(const Complex& w, const NormalizedUniformizer& U,
                      const Complex& hint) {
  Complex z = hint;
  double res = std::abs(norm_K(z, U) - w);
  for (int it = 0; it < 50; ++it) {
    if (res < 1e-12) return z;
    const LogDeriv d = norm_K_derivative(z, U);
    if (std::abs(d.mag.log_abs) > 600.0)
      throw NonConvergence("invert_norm_K: derivative out of range at iterate");
    Complex step = -(norm_K(z, U) - w) / d.to_complex();
    for (int halvings = 0;; ++halvings) {
      const Complex zn = z + step;
      const double rn = std::abs(norm_K(zn, U) - w);
      if (rn < res || halvings >= 8) {
        z = zn;
        res = rn;
        break;
      }
      step *= 0.5;
    }
  }
  if (res < 1e-12) return z;
  throw NonConvergence("invert_norm_K: Newton cap reached");
}

Complex cylinder_end(const NormalizedUniformizer& U, std::int64_t m) {
  if (m == 0) throw DomainError("cylinder_end: m must be nonzero");
  const double inv_a = 1.0 / static_cast<double>(U.a);
  const Complex lim = log_over_2pii(Complex(0.0, kTwoPi * m));
  return (lim + Complex(0.0, U.A / kTwoPi)) * inv_a;
}

}  // namespace tubelog
