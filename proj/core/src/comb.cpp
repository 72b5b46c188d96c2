#include "tubelog/comb.hpp"

#include <algorithm>
#include <cmath>

#include "tubelog/errors.hpp"

namespace tubelog {

BigRat x_of(const Prefix& p, const ParameterLedger& L) {
  const int n = static_cast<int>(p.size());
  if (n == 0) return BigRat(0);
  if (static_cast<int>(L.stages.size()) <= n)
    throw UnrealizableTheta("x_of: prefix deeper than the available stages");
  for (int d : p)
    if (d < -1 || d > 1) throw DomainError("x_of: digits must be -1, 0 or 1");
  // eps_j multiplies a_{j+2} ... a_{n-1}; the last digit is divided by a_n
  BigRat x(0);
  for (int j = 0; j + 1 < n; ++j) {
    BigInt prod = 1;
    for (int k = j + 2; k <= n - 1; ++k) prod *= L.stages[k].U.a;
    x += BigRat(p[j]) * BigRat(prod);
  }
  x += BigRat(p[n - 1], BigInt(L.stages[n].U.a));
  return x;
}

BigRat theta_of(const Prefix& p, const ParameterLedger& L) {
  if (static_cast<int>(L.stages.size()) <= static_cast<int>(p.size()) &&
      !p.empty())
    throw UnrealizableTheta("theta_of: prefix deeper than the available stages");
  BigRat th(0);
  BigInt prod = L.stages.empty() ? BigInt(1) : BigInt(L.stages[0].U.a);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < -1 || p[i] > 1)
      throw DomainError("theta_of: digits must be -1, 0 or 1");
    prod *= L.stages[i + 1].U.a;
    if (p[i] != 0) th += BigRat(p[i], prod);
  }
  return th;
}

namespace {

// jets of F_j = K_j o ... o K_{n-1} at the deepest input z:
// value, F', F''/F', F'''/F'
struct ChainJets {
  Complex value;
  Complex d1{1.0, 0.0};
  Complex A{0.0, 0.0};  // F''/F'
  Complex B{0.0, 0.0};  // F'''/F'
  bool ok = true;
};

ChainJets chain_jets(const ComposedMap& M, const Complex& z) {
  ChainJets j;
  j.value = z;
  for (int lvl = M.depth(); lvl >= 0; --lvl) {
    const NormalizedUniformizer& U = M.levels[lvl];
    const Complex w = j.value;
    const LogDeriv kd = norm_K_derivative(w, U);
    const KPrimeRatios kr = norm_K_prime_ratios(w, U);
    const Complex kp = kd.to_complex();
    if (!kr.ratios_ok || !std::isfinite(kp.real()) ||
        !std::isfinite(kp.imag()))
      j.ok = false;
    const Complex gp = j.d1;      // previous F'
    const Complex gA = j.A;       // previous F''/F'
    const Complex gB = j.B;       // previous F'''/F'
    j.A = kr.r1 * gp + gA;
    j.B = (kr.r1 * kr.r1 + kr.r2) * gp * gp + 3.0 * kr.r1 * gp * gA + gB;
    j.d1 = kp * gp;
    j.value = norm_K(w, U);
  }
  return j;
}

CurveSample assemble_sample(const ComposedMap& M, double x, double y,
                            double t) {
  const ChainJets j = chain_jets(M, Complex(x, y));
  CurveSample s;
  s.t = t;
  s.sigma = {j.value.real(), t};  // Im is t exactly by construction

  // phi(y) = G(x + iy): phi1 = i G', phi2 = -G'', phi3 = -i G'''
  const Complex G1 = j.d1;
  const Complex G2 = j.A * j.d1;
  const Complex G3 = j.B * j.d1;
  const Complex phi1 = Complex(0.0, 1.0) * G1;
  const Complex phi2 = -G2;
  const Complex phi3 = Complex(0.0, -1.0) * G3;
  const double uy = phi1.real(), vy = phi1.imag();
  const double uyy = phi2.real(), vyy = phi2.imag();
  const double uyyy = phi3.real(), vyyy = phi3.imag();

  // first derivative needs only the phase of G'
  const double th = std::arg(G1);
  s.d1 = {-std::tan(th), 1.0};

  s.jets_ok = j.ok && vy > 0.0;
  if (s.jets_ok) {
    s.d2 = {(uyy * vy - uy * vyy) / (vy * vy * vy), 0.0};
    s.d3 = {(uyyy * vy * vy - uy * vyyy * vy - 3.0 * uyy * vyy * vy +
             3.0 * uy * vyy * vyy) /
                std::pow(vy, 5),
            0.0};
  }
  return s;
}

}  // namespace

CurveSample sigma_point(const ComposedMap& M, const BigRat& x_in, double t,
                        double tol) {
  BigRat x = x_in;
  ComposedMap maps = M;
  // exact level reduction: K_j(xi_m) = xi_{m/a_j} for integral m
  while (!maps.levels.empty() && rat_den(x) == 1) {
    if (x == 0) break;
    x /= maps.levels.back().a;
    maps.levels.pop_back();
  }
  if (x == 0) {
    // the axis is fixed by every level
    CurveSample s;
    s.t = t;
    s.sigma = {0.0, t};
    s.d1 = {0.0, 1.0};
    return s;
  }
  const double xd = to_double(x);
  if (maps.levels.empty()) {
    CurveSample s;
    s.t = t;
    s.sigma = {xd, t};
    s.d1 = {0.0, 1.0};
    return s;
  }

  auto v_at = [&](double y) {
    return compose_G(maps, Complex(xd, y)).value().imag();
  };

  const double v0 = v_at(0.0);
  if (v0 >= t)
    throw BracketFailure(
        "sigma_point: the line's image starts above the target height "
        "(graph hypotheses not certified here)");
  double y_hi = 1.0;
  int guard = 0;
  while (v_at(y_hi) <= t) {
    y_hi *= 2.0;
    if (++guard > 60)
      throw BracketFailure("sigma_point: no upper bracket for the height");
  }
  double lo = 0.0, hi = y_hi;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (v_at(mid) >= t ? hi : lo) = mid;
  }
  double y = 0.5 * (lo + hi);

  // Newton polish where the composed derivative is representable
  for (int it = 0; it < 20; ++it) {
    const ChainJets j = chain_jets(maps, Complex(xd, y));
    const double vy = (Complex(0.0, 1.0) * j.d1).imag();
    if (!std::isfinite(vy) || vy <= 0.0) break;
    const double res = j.value.imag() - t;
    if (std::abs(res) < tol) break;
    const double step = res / vy;
    if (!std::isfinite(step)) break;
    y -= step;
    if (y < lo || y > hi) {  // keep the bracket
      y = std::clamp(y, lo, hi);
      break;
    }
  }
  return assemble_sample(maps, xd, y, t);
}

CombCurve build_curve(const ParameterLedger& L, const Prefix& p,
                      const std::vector<double>& t_grid) {
  CombCurve c;
  c.prefix = p;
  c.x_value = x_of(p, L);
  c.theta = theta_of(p, L);
  const ComposedMap M =
      p.empty() ? ComposedMap{} : L.maps(static_cast<int>(p.size()) - 1);
  for (double t : t_grid) c.samples.push_back(sigma_point(M, c.x_value, t));
  return c;
}

CombAtlas build_atlas(const ParameterLedger& L, int depth, int n_t) {
  if (depth < 0) throw DomainError("build_atlas: depth must be >= 0");
  CombAtlas atlas;
  atlas.depth = depth;
  for (int i = 0; i < n_t; ++i)
    atlas.t_grid.push_back(1.0 + static_cast<double>(i) / (n_t - 1));

  std::vector<Prefix> prefixes{Prefix{}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Prefix> next;
    for (const Prefix& p : prefixes)
      for (int digit : {-1, 0, 1}) {
        Prefix q = p;
        q.push_back(digit);
        next.push_back(q);
      }
    prefixes = std::move(next);
  }
  for (const Prefix& p : prefixes)
    atlas.curves.push_back(build_curve(L, p, atlas.t_grid));
  return atlas;
}

PhiResult phi(const ParameterLedger& L, const BigRat& theta, double t,
              int depth) {
  if (depth < 0) throw DomainError("phi: depth must be >= 0");
  // exact digit extraction at base 1/(a_0 ... a_{i+1})
  Prefix p;
  BigRat r = theta;
  BigInt prod = L.stages.empty() ? BigInt(1) : BigInt(L.stages[0].U.a);
  for (int i = 0; i < depth; ++i) {
    if (static_cast<int>(L.stages.size()) <= i + 1) {
      if (r != 0)
        throw UnrealizableTheta("phi: theta needs stages beyond the frontier");
      p.push_back(0);
      continue;
    }
    prod *= L.stages[i + 1].U.a;
    const BigRat base(BigInt(1), prod);
    const BigRat scaled = r / base;
    BigInt d = nearest_int(scaled);
    if (d > 1) d = 1;
    if (d < -1) d = -1;
    p.push_back(static_cast<int>(d));
    r -= BigRat(d) * base;
    // remaining tail must fit below this digit: |r| <= base/3 for a >= 4
    if (3 * (r < 0 ? -r : r) > base)
      throw UnrealizableTheta("phi: theta is not a digit expansion over the "
                              "chosen divisors");
  }

  PhiResult out;
  out.depth_used = depth;
  const BigRat x = x_of(p, L);
  const ComposedMap M =
      p.empty() ? ComposedMap{} : L.maps(static_cast<int>(p.size()) - 1);
  out.value = sigma_point(M, x, t).sigma;

  // truncation bound (1/10) / (a_0 ... a_{depth+1})
  BigInt bprod = 1;
  const int want = depth + 1;
  int have = 0;
  for (int i = 0; i <= want && i < static_cast<int>(L.stages.size()); ++i) {
    bprod *= L.stages[i].U.a;
    have = i;
  }
  out.bound_at_available_depth = have < want;
  out.trunc_bound = 0.1 / bprod.convert_to<double>();
  return out;
}

double cr_distance(const CombCurve& c1, const CombCurve& c2, int r) {
  if (r < 0 || r > 3) throw DomainError("cr_distance: order must be 0..3");
  if (c1.samples.size() != c2.samples.size())
    throw DomainError("cr_distance: curves sampled on different grids");
  double worst = 0.0;
  for (std::size_t i = 0; i < c1.samples.size(); ++i) {
    const CurveSample& a = c1.samples[i];
    const CurveSample& b = c2.samples[i];
    if (a.t != b.t) throw DomainError("cr_distance: grid mismatch");
    worst = std::max(worst, std::abs(a.sigma - b.sigma));
    if (r >= 1) worst = std::max(worst, std::abs(a.d1 - b.d1));
    if (r >= 2) worst = std::max(worst, std::abs(a.d2 - b.d2));
    if (r >= 3) worst = std::max(worst, std::abs(a.d3 - b.d3));
  }
  return worst;
}

PairCheckReport verify_holder(const CombAtlas& atlas, double alpha,
                              double M_const, double alpha_certified) {
  PairCheckReport rep;
  rep.statement =
      "|Phi(th',t') - Phi(th,t)| <= (3*3^alpha + M) |(th',t')-(th,t)|^alpha";
  if (alpha > alpha_certified) {
    rep.certified = false;  // not certified at this depth: scope rule
    rep.pass = true;
    return rep;
  }
  if (M_const <= 0.0) {
    // base-curve C1 bound + 1
    double c1 = 0.0;
    for (const CombCurve& c : atlas.curves) {
      bool base = true;
      for (int d : c.prefix) base = base && d == 0;
      if (!base) continue;
      for (const CurveSample& s : c.samples)
        c1 = std::max({c1, std::abs(s.sigma), std::abs(s.d1)});
    }
    M_const = c1 + 1.0;
  }
  rep.bound_constant = 3.0 * std::pow(3.0, alpha) + M_const;
  rep.worst_ratio = 0.0;
  for (const CombCurve& ca : atlas.curves)
    for (const CombCurve& cb : atlas.curves) {
      const double dth = to_double(ca.theta - cb.theta);
      for (const CurveSample& sa : ca.samples)
        for (const CurveSample& sb : cb.samples) {
          const double dist = std::hypot(dth, sa.t - sb.t);
          if (dist == 0.0) continue;
          const double lhs = std::abs(sa.sigma - sb.sigma);
          const double rhs = rep.bound_constant * std::pow(dist, alpha);
          rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
          ++rep.pairs;
        }
    }
  rep.pass = rep.worst_ratio <= 1.0;
  return rep;
}

PairCheckReport verify_lipschitz_inverse(const CombAtlas& atlas) {
  PairCheckReport rep;
  rep.statement = "|(th,t) - (th',t')| <= (13/3) |Phi(th,t) - Phi(th',t')|";
  rep.bound_constant = 13.0 / 3.0;
  for (const CombCurve& ca : atlas.curves)
    for (const CombCurve& cb : atlas.curves) {
      const double dth = to_double(ca.theta - cb.theta);
      for (const CurveSample& sa : ca.samples)
        for (const CurveSample& sb : cb.samples) {
          const double lhs = std::hypot(dth, sa.t - sb.t);
          if (lhs == 0.0) continue;
          const double rhs =
              rep.bound_constant * std::abs(sa.sigma - sb.sigma);
          if (rhs == 0.0) {
            rep.worst_ratio = std::numeric_limits<double>::infinity();
            ++rep.pairs;
            continue;
          }
          rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
          ++rep.pairs;
        }
    }
  rep.pass = rep.worst_ratio <= 1.0;
  return rep;
}

}  // namespace tubelog
