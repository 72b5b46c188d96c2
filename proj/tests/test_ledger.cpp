#include <doctest.h>

#include <cmath>

#include "tubelog/errors.hpp"
#include "tubelog/verify.hpp"

using namespace tubelog;

TEST_SUITE_BEGIN("ledger");

TEST_CASE("alpha schedules") {
  AlphaSchedule def;
  CHECK(def.at(0) == doctest::Approx(0.5));
  CHECK(def.at(1) == doctest::Approx(2.0 / 3.0));
  CHECK(def.at(2) == doctest::Approx(0.75));
  CHECK(def.at(10) < 1.0);
  AlphaSchedule ex;
  ex.explicit_values = {0.4, 0.6};
  CHECK(ex.at(0) == 0.4);
  CHECK(ex.at(5) == 0.6);
}

TEST_CASE("stage 0 certifies and the window search reports the frontier") {
  ParameterLedger L = make_ledger(10.0, 1.0, AlphaSchedule{}, BigInt(1) << 60);
  const StageConfig cfg;
  const bool ready = choose_stage(L, 0, cfg);
  CHECK_FALSE(ready);
  REQUIRE(L.stages.size() == 1);
  CHECK(L.stages[0].U.a == 5);
  CHECK(L.stages[0].U.h == 10.0);
  // the prepared next-height clears h_0 + 1 near a_0 + 1
  CHECK(L.stages[0].h_next > 6.0);
  CHECK(L.stages[0].h_next < 7.0);
  CHECK(L.stages[0].hp_next == 1.0);
  // the expansion height collapses below double resolution; its log-inner
  // form stays exact
  CHECK(L.stages[0].Y_next == 0.0);
  CHECK(L.stages[0].logu_Y_next ==
        doctest::Approx(L.stages[0].U.A - kTwoPi * 5 * 9.5).epsilon(1e-14));
  CHECK_FALSE(L.stages[0].hyp_ready);
  CHECK(L.frontier_hit);
  CHECK(L.frontier_predicate == "stage0/graph_window");
  CHECK(L.certified_depth() == 0);

  // the recorded margin documents the wall: the axis-adjacent image height
  // stays near h_0 for every representable offset
  bool found = false;
  for (const PredicateRecord& r : L.records)
    if (r.name == "stage0/graph_window") {
      found = true;
      CHECK_FALSE(r.pass);
      CHECK(r.margin < -8.0);  // 1 - Im G_0(x + i0) with Im around 9.8
    }
  CHECK(found);
}

TEST_CASE("stage 1 cannot start without the window hypotheses") {
  ParameterLedger L = make_ledger(10.0, 1.0, AlphaSchedule{}, BigInt(1) << 60);
  const StageConfig cfg;
  choose_stage(L, 0, cfg);
  CHECK_THROWS_AS(choose_stage(L, 1, cfg), SearchExhausted);
  try {
    choose_stage(L, 1, cfg);
  } catch (const SearchExhausted& e) {
    CHECK(e.predicate == "stage0/graph_window");
  }
}

TEST_CASE("stage predicates re-evaluate and catch tampering") {
  ParameterLedger L = make_ledger(10.0, 1.0, AlphaSchedule{}, BigInt(1) << 60);
  const StageConfig cfg;
  choose_stage(L, 0, cfg);
  // untampered: the battery passes
  bool all = true;
  for (const PredicateRecord& r : evaluate_stage_predicates(L, 0, cfg))
    all = all && r.pass;
  CHECK(all);
  // decrement the chosen a: at least one predicate fails
  ParameterLedger bad = L;
  bad.stages[0].U.a -= 1;
  bool any_fail = false;
  for (const PredicateRecord& r : evaluate_stage_predicates(bad, 0, cfg))
    any_fail = any_fail || !r.pass;
  CHECK(any_fail);
}

TEST_CASE("run_construct reaches the frontier and samples the base atlas") {
  RunConfig cfg = default_config();
  cfg.depth = 2;
  const ConstructResult res = run_construct(cfg);
  CHECK_FALSE(res.reached_depth);
  CHECK(res.ledger.frontier_hit);
  CHECK(res.ledger.certified_depth() == 0);
  REQUIRE(res.atlas.curves.size() == 1);
  CHECK(res.atlas.curves[0].prefix.empty());
  CHECK(res.atlas.t_grid.size() == 16);
}

TEST_CASE("declared ledgers expose maps and a-values") {
  const ParameterLedger L = declared_ledger({5, 7}, {10.0, 7.0});
  CHECK(L.a_values() == std::vector<std::int64_t>{5, 7});
  CHECK(L.maps(1).depth() == 1);
  CHECK_THROWS_AS(L.maps(2), DomainError);
  CHECK_THROWS_AS(declared_ledger({5}, {10.0, 7.0}), DomainError);
}

TEST_SUITE_END();
