#include "tubelog/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tubelog/errors.hpp"
#include "tubelog/semiflow.hpp"

namespace tubelog {

double AlphaSchedule::at(int n) const {
  if (!explicit_values.empty()) {
    const int i = std::min<int>(n, static_cast<int>(explicit_values.size()) - 1);
    return explicit_values[i];
  }
  return 1.0 - 1.0 / (n + 2.0);
}

int ParameterLedger::certified_depth() const {
  if (stages.empty()) return -1;
  int N = 0;
  while (N < static_cast<int>(stages.size()) - 1 && stages[N].hyp_ready) ++N;
  return N;
}

std::vector<std::int64_t> ParameterLedger::a_values() const {
  std::vector<std::int64_t> a;
  a.reserve(stages.size());
  for (const Stage& s : stages) a.push_back(s.U.a);
  return a;
}

ComposedMap ParameterLedger::maps(int upto) const {
  if (upto < 0 || upto >= static_cast<int>(stages.size()))
    throw DomainError("ledger: stage index out of range");
  ComposedMap M;
  for (int j = 0; j <= upto; ++j) M.levels.push_back(stages[j].U);
  return M;
}

ParameterLedger make_ledger(double h0, double M, const AlphaSchedule& alpha,
                            const BigInt& a_cap) {
  ParameterLedger L;
  L.h0 = h0;
  L.M = M;
  L.alpha = alpha;
  L.a_cap = a_cap;
  return L;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double im_G(const ComposedMap& M, const Complex& z) {
  return compose_G(M, z).value().imag();
}

// Re of the composed derivative phase along the tower; positive iff
// dv/dy > 0 at z.
double dv_dy_phase(const ComposedMap& M, const Complex& z) {
  Complex cur = z;
  Complex phase(1.0, 0.0);
  for (int j = M.depth(); j >= 0; --j) {
    const LogDeriv d = norm_K_derivative(cur, M.levels[j]);
    phase *= d.phase;
    cur = norm_K(cur, M.levels[j]);
  }
  return phase.real();
}

PredicateRecord pred_a_floor(std::int64_t a, int n) {
  PredicateRecord r;
  r.name = "stage" + std::to_string(n) + "/a_floor";
  r.statement = "a_n >= 5 (keeps the transversal sets Cantor)";
  r.grid = "exact integer comparison";
  r.margin = static_cast<double>(a - 5);
  r.pass = a >= 5;
  return r;
}

PredicateRecord pred_segment(const NormalizedUniformizer& U, int n,
                             const StageConfig& cfg) {
  PredicateRecord r;
  r.name = "stage" + std::to_string(n) + "/expansion_segment";
  r.statement = "|a K'| > 1 on trough verticals up to the v = h - 1/2 height";
  const ThresholdSegment seg = threshold_segment(U, U.h - 0.5);
  const double s_lo = seg.log_u_top;
  const double s_hi = std::min(U.A, 700.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.segment_u_samples; ++i) {
    const double s =
        s_lo + (s_hi - s_lo) * i / std::max(1, cfg.segment_u_samples - 1);
    const Complex u(std::exp(std::min(s, 700.0)), 0.0);
    worst = std::min(worst, log_abs_aKprime(u));
  }
  r.grid = std::to_string(cfg.segment_u_samples) +
           " log-spaced inner values in [" + fmt(s_lo) + ", " + fmt(s_hi) +
           "] (log scale)";
  r.margin = worst - std::log(cfg.margin_factor);
  r.pass = r.margin > 0.0;
  return r;
}

PredicateRecord pred_orbit_floor(const NormalizedUniformizer& U, int n) {
  PredicateRecord r;
  r.name = "stage" + std::to_string(n) + "/orbit_floor";
  r.statement = "periodic points sit at height >= h_n - 1";
  r.grid = "closed form";
  r.margin = cylinder_end(U, 1).imag() - (U.h - 1.0);
  r.pass = r.margin > 0.0;
  return r;
}

PredicateRecord pred_tau_bound(const ParameterLedger& L, std::int64_t a,
                               int n) {
  PredicateRecord r;
  r.name = "stage" + std::to_string(n) + "/width_bound";
  r.statement = "1/a_n < tau_n";
  r.grid = "exact comparison";
  const double tau = L.stages[n - 1].tau_next;
  r.margin = tau - 1.0 / static_cast<double>(a);
  r.pass = tau > 0.0 && 1.0 / static_cast<double>(a) < tau;
  return r;
}

}  // namespace

std::vector<PredicateRecord> evaluate_stage_predicates(
    const ParameterLedger& L, int n, const StageConfig& cfg) {
  std::vector<PredicateRecord> recs;
  const std::int64_t a = L.stages[n].U.a;
  recs.push_back(pred_a_floor(a, n));
  // rebuild the map from (a, h) so tampered values are honestly re-solved
  const NormalizedUniformizer U =
      a >= 1 ? solve_lambda(a, L.stages[n].U.h) : L.stages[n].U;
  recs.push_back(pred_segment(U, n, cfg));
  recs.push_back(pred_orbit_floor(U, n));
  if (n >= 1) recs.push_back(pred_tau_bound(L, a, n));

  if (L.stages[n].h_next > 0.0) {
    // hypothesis 1 prepared by this stage: heights of the next orbit set
    PredicateRecord r;
    r.name = "stage" + std::to_string(n) + "/next_height";
    r.statement = "Im G_n(x + i (h_{n+1} - 1)) > h_0 + n + 1";
    r.grid = std::to_string(cfg.x_grid) + " x-samples over one period";
    const ComposedMap M = L.maps(n);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.x_grid; ++i) {
      const double x = static_cast<double>(i) / cfg.x_grid;
      worst = std::min(
          worst, im_G(M, Complex(x, L.stages[n].h_next - 1.0)));
    }
    r.margin = worst - (L.h0 + n + 1);
    r.pass = r.margin > 0.0;
    recs.push_back(r);
  }
  return recs;
}

namespace {

// hypothesis 1: smallest h with min_x Im G_n(x + i(h-1)) >= h0 + n + 1 + eps
bool choose_h_next(const ParameterLedger& L, int n, const StageConfig& cfg,
                   double& h_next, PredicateRecord& rec) {
  const ComposedMap M = L.maps(n);
  const double target = L.h0 + n + 1 + cfg.hyp1_margin;
  auto min_v = [&](double h) {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.x_grid; ++i) {
      const double x = static_cast<double>(i) / cfg.x_grid;
      worst = std::min(worst, im_G(M, Complex(x, h - 1.0)));
    }
    return worst;
  };
  double hi = 4.0;
  int guard = 0;
  while (min_v(hi) < target) {
    hi *= 2.0;
    if (++guard > 40) return false;
  }
  double lo = 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (min_v(mid) >= target ? hi : lo) = mid;
  }
  h_next = hi;
  rec.name = "stage" + std::to_string(n) + "/next_height";
  rec.statement = "Im G_n(x + i (h_{n+1} - 1)) > h_0 + n + 1";
  rec.grid = std::to_string(cfg.x_grid) + " x-samples over one period";
  rec.margin = min_v(h_next) - (L.h0 + n + 1);
  rec.pass = rec.margin > 0.0;
  return rec.pass;
}

// hypothesis 2, height part: h'_{n+1} with Im K_n(i h') matching the chain
bool choose_hp_next(const ParameterLedger& L, int n, double& hp_next,
                    PredicateRecord& rec) {
  const NormalizedUniformizer& U = L.stages[n].U;
  rec.name = "stage" + std::to_string(n) + "/next_top";
  rec.grid = "vertical axis evaluation";
  if (n == 0) {
    // only an inequality is required at the base stage
    rec.statement = "Im K_0(i h'_1) > 2";
    hp_next = 1.0;
    rec.margin = norm_K(Complex(0.0, hp_next), U).imag() - 2.0;
    rec.pass = rec.margin > 0.0;
    return rec.pass;
  }
  // chain equation Im K_n(i h'_{n+1}) = h'_n
  const double target = L.stages[n - 1].hp_next;
  rec.statement = "Im K_n(i h'_{n+1}) = h'_n";
  // the attainable minimum over representable heights
  const double y_floor = 1e-300;
  const double v_min = norm_K(Complex(0.0, y_floor), U).imag();
  if (target < v_min) {
    rec.margin = target - v_min;  // negative: unattainable
    rec.pass = false;
    return false;
  }
  double lo = y_floor, hi = 8.0;
  while (norm_K(Complex(0.0, hi), U).imag() < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);  // geometric bisection
    (norm_K(Complex(0.0, mid), U).imag() >= target ? hi : lo) = mid;
  }
  hp_next = hi;
  rec.margin = std::abs(norm_K(Complex(0.0, hp_next), U).imag() - target);
  rec.pass = true;
  return true;
}

// hypothesis 2, width part: shrink tau until the strip predicates hold
bool choose_tau_next(const ParameterLedger& L, int n, const StageConfig& cfg,
                     double hp_next, double& tau_next, PredicateRecord& rec) {
  const ComposedMap M = L.maps(n);
  rec.name = "stage" + std::to_string(n) + "/graph_window";
  rec.statement =
      "Im G_n < 1 at the axis, > 2 at height h'_{n+1}, dv/dy > 0, for "
      "|x - center| <= tau";
  rec.grid = "offsets {+-tau, +-tau/2, +-tau/4, +-tau/16} around integer "
             "centers (equivalent by periodicity); " +
             std::to_string(cfg.tau_shrink_max) + " halvings from 1/4";
  double tau = 0.25;
  double best_low = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.tau_shrink_max; ++it, tau *= 0.5) {
    bool ok = true;
    double low_margin = std::numeric_limits<double>::infinity();
    for (const double f : {1.0, 0.5, 0.25, 0.0625}) {
      for (const double sgn : {1.0, -1.0}) {
        const double x = sgn * f * tau;
        const double v0 = im_G(M, Complex(x, 0.0));
        low_margin = std::min(low_margin, 1.0 - v0);
        if (v0 >= 1.0) ok = false;
        if (im_G(M, Complex(x, hp_next)) <= 2.0) ok = false;
        for (const double y : {hp_next * 0.25, hp_next * 0.5, hp_next})
          if (dv_dy_phase(M, Complex(x, y)) <= 0.0) ok = false;
      }
    }
    best_low = std::max(best_low, low_margin);
    if (ok) {
      tau_next = tau;
      rec.margin = low_margin;
      rec.pass = true;
      return true;
    }
  }
  tau_next = 0.0;
  rec.margin = best_low;  // 1 - Im G_n(x + i0) at the closest approach
  rec.pass = false;
  return false;
}

}  // namespace

bool choose_stage(ParameterLedger& L, int n, const StageConfig& cfg) {
  if (n != static_cast<int>(L.stages.size()))
    throw DomainError("choose_stage: stages must be chosen in order");
  if (n >= 1 && !L.stages[n - 1].hyp_ready) {
    throw SearchExhausted(
        L.frontier_predicate.empty() ? "missing hypotheses"
                                     : L.frontier_predicate,
        "choose_stage: hypotheses for stage " + std::to_string(n) +
            " were not certified (" + L.frontier_detail + ")");
  }

  const double h = n == 0 ? L.h0 : L.stages[n - 1].h_next;
  const std::int64_t start = n == 0 ? 5 : std::max<std::int64_t>(5, L.stages[n - 1].U.a);
  const BigInt cap = std::min(L.a_cap, BigInt(1) << 62);

  std::int64_t chosen = 0;
  std::vector<PredicateRecord> chosen_recs;
  std::string first_fail;
  for (BigInt cand = start; cand <= cap; cand *= 2) {
    const std::int64_t a = cand.convert_to<std::int64_t>();
    const NormalizedUniformizer U = solve_lambda(a, h);
    std::vector<PredicateRecord> recs;
    recs.push_back(pred_a_floor(a, n));
    recs.push_back(pred_segment(U, n, cfg));
    recs.push_back(pred_orbit_floor(U, n));
    if (n >= 1) recs.push_back(pred_tau_bound(L, a, n));
    const bool all = std::all_of(recs.begin(), recs.end(),
                                 [](const PredicateRecord& r) { return r.pass; });
    if (all) {
      chosen = a;
      chosen_recs = std::move(recs);
      break;
    }
    for (const PredicateRecord& r : recs)
      if (!r.pass && first_fail.empty()) first_fail = r.name;
  }
  if (chosen == 0) {
    L.frontier_hit = true;
    L.frontier_predicate = first_fail;
    L.frontier_detail = "doubling search exhausted the a-cap";
    throw SearchExhausted(first_fail,
                          "choose_stage: a-search exhausted at the cap");
  }

  Stage st;
  st.U = solve_lambda(chosen, h);
  L.stages.push_back(st);
  for (PredicateRecord& r : chosen_recs) L.records.push_back(std::move(r));

  // close out: prepare hypotheses for stage n+1
  Stage& cur = L.stages.back();
  PredicateRecord rec;
  if (!choose_h_next(L, n, cfg, cur.h_next, rec)) {
    L.records.push_back(rec);
    L.frontier_hit = true;
    L.frontier_stage = n - 1;
    L.frontier_predicate = rec.name;
    L.frontier_detail = "height predicate unattainable";
    return false;
  }
  L.records.push_back(rec);

  if (!choose_hp_next(L, n, cur.hp_next, rec)) {
    L.records.push_back(rec);
    L.frontier_hit = true;
    L.frontier_stage = n - 1;
    L.frontier_predicate = rec.name;
    L.frontier_detail = "top-of-window height unattainable at double precision";
    return false;
  }
  L.records.push_back(rec);

  const ThresholdSegment seg = threshold_segment(cur.U, cur.U.h - 0.5);
  cur.Y_next = seg.y0;
  cur.logu_Y_next = seg.log_u_top;

  if (!choose_tau_next(L, n, cfg, cur.hp_next, cur.tau_next, rec)) {
    L.records.push_back(rec);
    L.frontier_hit = true;
    L.frontier_stage = n;
    L.frontier_predicate = rec.name;
    L.frontier_detail =
        "Im G_n(x + i0) = " + fmt(1.0 - rec.margin) +
        " >= 1 for every representable offset x: the trough walls are "
        "doubly-exponentially thin, so no further stage is representable";
    return false;
  }
  L.records.push_back(rec);

  // hypothesis 4: a rectangle around the stage curve segment inside the
  // image of the certified window
  const ComposedMap M = L.maps(n);
  const double w_lo = im_G(M, Complex(cur.tau_next * 0.25, 0.0));
  if (w_lo >= 1.0) {
    L.frontier_hit = true;
    L.frontier_stage = n;
    L.frontier_predicate = "stage" + std::to_string(n) + "/nesting_rect";
    L.frontier_detail = "certified window image collapses at double precision";
    return false;
  }
  cur.R = Rect{-cur.tau_next, cur.tau_next, 0.9, 2.1};
  cur.hyp_ready = true;
  L.frontier_stage = n;
  return true;
}

ParameterLedger declared_ledger(const std::vector<std::int64_t>& a,
                                const std::vector<double>& h, double M) {
  if (a.empty() || a.size() != h.size())
    throw DomainError("declared_ledger: need matching a/h lists");
  ParameterLedger L = make_ledger(h[0], M, AlphaSchedule{}, BigInt(1) << 60);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Stage st;
    st.U = solve_lambda(a[i], h[i]);
    if (i + 1 < h.size()) st.h_next = h[i + 1];
    st.hp_next = 1.0;
    const ThresholdSegment seg = threshold_segment(st.U, st.U.h - 0.5);
    st.Y_next = seg.y0;
    st.logu_Y_next = seg.log_u_top;
    L.stages.push_back(st);
  }
  return L;
}

}  // namespace tubelog
