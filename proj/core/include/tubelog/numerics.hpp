#ifndef TUBELOG_NUMERICS_HPP
#define TUBELOG_NUMERICS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace tubelog {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// log(log 2): the additive constant relating A = log(lambda) to 2*pi*a*h
// once exp(-lambda) has underflowed.
inline const double kLogLog2 = std::log(std::log(2.0));

inline double inf_norm(const Complex& z) {
  return std::max(std::abs(z.real()), std::abs(z.imag()));
}

// exp(z)-1 without cancellation for small |z|.
inline Complex expm1(const Complex& z) {
  const double x = z.real(), y = z.imag();
  if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0) return std::exp(z) - 1.0;
  const double em = std::expm1(x);
  const double ex = 1.0 + em;
  const double s2 = std::sin(0.5 * y);
  return {em - 2.0 * ex * s2 * s2, ex * std::sin(y)};
}

// log(1+z) without cancellation for small |z|.
inline Complex log1p(const Complex& z) {
  const double x = z.real(), y = z.imag();
  if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0) return std::log(1.0 + z);
  const double xp1 = 1.0 + x;
  const double r = y / xp1;
  return {std::log1p(x) + 0.5 * std::log1p(r * r), std::atan2(y, xp1)};
}

// e^{2 pi i z} with the real part reduced mod 1 before the trig calls.
// frac(x+1) == frac(x) holds exactly in floating point for |x| < 2^52,
// which makes the period-1 functional equations bit-exact.
inline Complex exp_2pi_i(const Complex& z) {
  const double xr = z.real() - std::nearbyint(z.real());
  const double mag = std::exp(-kTwoPi * z.imag());
  if (xr == 0.0) return {mag, 0.0};
  const double t = kTwoPi * xr;
  return {mag * std::cos(t), mag * std::sin(t)};
}

// Sign plus natural log of |value|.  log_abs = -inf encodes zero.
struct LogMagnitude {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  static LogMagnitude zero() { return {}; }
  static LogMagnitude from_double(double v) {
    if (v == 0.0) return {};
    return {v > 0.0 ? 1 : -1, std::log(std::abs(v))};
  }
  static LogMagnitude from_log(double la, int s = 1) { return {s, la}; }

  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);  // may overflow to +-inf; callers compare in log space
  }
  LogMagnitude operator*(const LogMagnitude& o) const {
    if (sign == 0 || o.sign == 0) return {};
    return {sign * o.sign, log_abs + o.log_abs};
  }
  bool abs_less(const LogMagnitude& o) const { return log_abs < o.log_abs; }
  // compare against a representable positive real
  bool abs_greater(double v) const {
    if (sign == 0) return false;
    return log_abs > std::log(v);
  }
};

// Derivative value kept as magnitude in log space plus a unit phase.
struct LogDeriv {
  LogMagnitude mag;
  Complex phase{1.0, 0.0};

  Complex to_complex() const { return mag.to_double() * phase; }
  LogDeriv operator*(const LogDeriv& o) const {
    return {mag * o.mag, phase * o.phase};
  }
};

// Deterministic cross-platform generator for seeded sample grids.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0,1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace tubelog

#endif
