#include "doctest.h"

#include <cmath>
#include <map>
#include <numeric>

#include "devdiet/schedules.hpp"

using namespace devdiet;

namespace {

// Independent prefix-sum oracle for epoch -> stage lookup.
int stage_by_prefix_sum(const std::vector<int>& durations, int epoch) {
  int acc = 0;
  for (size_t i = 0; i < durations.size(); ++i) {
    acc += durations[i];
    if (epoch < acc) return int(i);
  }
  return -1;
}

std::vector<int> durations_of(const DietSchedule& s) {
  std::vector<int> d;
  for (const auto& st : s.stages) d.push_back(st.duration_epochs);
  return d;
}

}  // namespace

TEST_CASE("cdiet 30-epoch build matches the published constants") {
  auto s = build_cdiet(30);
  CHECK(durations_of(s) == std::vector<int>{10, 7, 6, 5, 2});
  CHECK(s.stages[0].sat_lo == doctest::Approx(0.20));
  CHECK(s.stages[0].sat_hi == doctest::Approx(0.36));
  CHECK(s.stages[4].sat_lo == doctest::Approx(0.84));
  CHECK(s.stages[4].sat_hi == doctest::Approx(1.00));
  const double taus[5] = {0.5, 0.4, 0.3, 0.2, 0.1};
  for (int i = 0; i < 5; ++i) {
    CHECK(s.stages[i].temperature == doctest::Approx(taus[i]));
    CHECK(s.stages[i].blur_sigma == 0.0);
    CHECK(s.stages[i].kernel_size == 1);
  }
  // epoch 29 -> stage 5 (prefix-sum oracle over [10,7,6,5,2])
  CHECK(stage_index_at(s, 29) == stage_by_prefix_sum({10, 7, 6, 5, 2}, 29));
  CHECK(stage_at(s, 29).sat_lo == doctest::Approx(0.84));
}

TEST_CASE("cdiet minimum-duration floor and construction error") {
  auto s = build_cdiet(5);
  CHECK(durations_of(s) == std::vector<int>{1, 1, 1, 1, 1});
  CHECK_THROWS_AS(build_cdiet(4), ScheduleError);
}

TEST_CASE("adiet 30-epoch sigma/kernel ladder") {
  auto s = build_adiet(30);
  CHECK(durations_of(s) == std::vector<int>{10, 6, 6, 3, 5});
  const double sigmas[5] = {4, 3, 2, 1, 0};
  const int kernels[5] = {25, 19, 13, 7, 1};
  for (int i = 0; i < 5; ++i) {
    CHECK(s.stages[i].blur_sigma == doctest::Approx(sigmas[i]));
    CHECK(s.stages[i].kernel_size == kernels[i]);
  }
  CHECK(stage_at(s, 0).blur_sigma == doctest::Approx(4));
  CHECK(stage_at(s, 0).kernel_size == 25);
  // boundaries 10,16,22,25,30
  CHECK(stage_at(s, 22).blur_sigma == doctest::Approx(1));
  CHECK(stage_at(s, 22).kernel_size == 7);
  CHECK(stage_at(s, 25).blur_sigma == doctest::Approx(0));
  CHECK(stage_at(s, 25).kernel_size == 1);
}

TEST_CASE("catdiet 30-epoch interleaving") {
  auto s = build_catdiet(30);
  CHECK(durations_of(s) == std::vector<int>{10, 6, 1, 5, 1, 2, 3, 2});
  const double sigmas[8] = {4, 3, 2, 2, 1, 1, 0, 0};
  const double lo[8] = {0.20, 0.36, 0.36, 0.52, 0.52, 0.68, 0.68, 0.84};
  const double taus[8] = {0.5, 0.45, 0.4, 0.35, 0.3, 0.2, 0.15, 0.1};
  for (int i = 0; i < 8; ++i) {
    CHECK(s.stages[i].blur_sigma == doctest::Approx(sigmas[i]));
    CHECK(s.stages[i].sat_lo == doctest::Approx(lo[i]));
    CHECK(s.stages[i].temperature == doctest::Approx(taus[i]));
  }
  CHECK(stage_at(s, 0).blur_sigma == doctest::Approx(4));
  CHECK(stage_at(s, 0).temperature == doctest::Approx(0.5));
  // boundaries 10,16,17,22,23,25,28,30: epoch 17 is stage index 3
  CHECK(stage_index_at(s, 17) == 3);
  CHECK(stage_at(s, 17).blur_sigma == doctest::Approx(2));
  CHECK(stage_at(s, 17).sat_lo == doctest::Approx(0.52));
  auto d = durations_of(s);
  CHECK(std::accumulate(d.begin(), d.end(), 0) == 30);
  CHECK_THROWS_AS(build_catdiet(7), ScheduleError);
}

TEST_CASE("stage_at is total on [0,total) and errors outside") {
  auto s = build_cdiet(30);
  CHECK(stage_index_at(s, 0) == 0);
  CHECK(stage_index_at(s, 10) == 1);  // prefix-sum oracle
  CHECK_THROWS_AS(stage_at(s, 30), ScheduleError);
  CHECK_THROWS_AS(stage_at(s, -1), ScheduleError);
  // piecewise constant with exactly |stages| pieces
  int pieces = 1;
  for (int e = 1; e < 30; ++e)
    if (stage_index_at(s, e) != stage_index_at(s, e - 1)) ++pieces;
  CHECK(pieces == int(s.stages.size()));
}

TEST_CASE("builders keep duration and kernel invariants across totals") {
  for (int total : {5, 8, 9, 13, 30, 31, 57, 100, 301}) {
    for (const auto& name : builder_names()) {
      if (name == "catdiet" && total < 8) continue;
      auto s = build_schedule_by_name(name, total);
      auto d = durations_of(s);
      CHECK(std::accumulate(d.begin(), d.end(), 0) == total);
      for (int v : d) CHECK(v >= 1);
      for (const auto& st : s.stages)
        CHECK(st.kernel_size == int(std::lround(6 * st.blur_sigma + 1)));
    }
  }
}

TEST_CASE("sample_stage_params draws from (lo, hi], deterministically") {
  StageSpec st;
  st.sat_lo = 0.84;
  st.sat_hi = 1.0;
  for (std::uint64_t seed : {1ull, 77ull, 991ull}) {
    auto p = sample_stage_params(st, seed);
    CHECK(p.s > 0.84);
    CHECK(p.s <= 1.0);
    auto p2 = sample_stage_params(st, seed);
    CHECK(p.s == p2.s);
  }
  // uniform-mean oracle: 1e4 draws from (0.20, 0.36) -> mean 0.28 +/- 0.01
  StageSpec lo;
  lo.sat_lo = 0.20;
  lo.sat_hi = 0.36;
  double sum = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) sum += sample_stage_params(lo, derive_seed(5, "m", i)).s;
  CHECK(std::fabs(sum / n - 0.28) < 0.01);
}

TEST_CASE("REV reverses the full stage list and is an involution") {
  auto s = build_cdiet(30);
  auto rev = derive_baseline(s, BaselineKind::REV);
  CHECK(rev.effective_schedule().stages.front().sat_lo == doctest::Approx(0.84));
  CHECK(rev.stage_for_epoch(0).sat_lo == doctest::Approx(0.84));
  CHECK(rev.effective_schedule().stages.front().duration_epochs == 2);
  auto back = derive_baseline(rev.effective_schedule(), BaselineKind::REV);
  CHECK(back.effective_schedule().stages == s.stages);
  CHECK(back.effective_schedule().total_epochs == s.total_epochs);
}

TEST_CASE("FO pins stage-1 parameters for the whole run") {
  auto s = build_adiet(30);
  auto fo = derive_baseline(s, BaselineKind::FO);
  for (int e : {0, 15, 29}) {
    CHECK(fo.stage_for_epoch(e).blur_sigma == doctest::Approx(4));
    CHECK(fo.stage_for_epoch(e).kernel_size == 25);
  }
  CHECK(fo.effective_schedule().total_epochs == 30);
}

TEST_CASE("LO is identity transforms for the whole run") {
  auto s = build_adiet(30);
  auto lo = derive_baseline(s, BaselineKind::LO);
  for (int e : {0, 12, 29}) {
    auto p = lo.sample(e, derive_seed(3, "lo", e));
    CHECK(p.sigma == 0.0);
    CHECK(p.kernel == 1);
    CHECK(p.s == 1.0);
  }
}

TEST_CASE("SHF draws stages uniformly, ignoring durations") {
  auto s = build_cdiet(30);
  auto shf = derive_baseline(s, BaselineKind::SHF);
  // multinomial oracle: classify each draw by its saturation interval
  std::map<int, int> counts;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    auto p = shf.sample(0, derive_seed(11, "shf", i));
    int stage = -1;
    for (int k = 0; k < 5; ++k)
      if (p.s > s.stages[k].sat_lo && p.s <= s.stages[k].sat_hi) stage = k;
    REQUIRE(stage >= 0);
    counts[stage]++;
  }
  for (int k = 0; k < 5; ++k)
    CHECK(std::fabs(counts[k] / double(n) - 0.2) < 0.02);
}

TEST_CASE("unknown baseline kind rejected at parse") {
  CHECK_THROWS_AS(baseline_from_string("bogus"), ScheduleError);
}

TEST_CASE("combdiet plan splits 30/70 with mature phase-2 temperature") {
  auto plan = build_combdiet_plan(100, LearnerKind::Contrastive);
  REQUIRE(plan.phase1.has_value());
  CHECK(plan.phase1->total_epochs == 30);
  CHECK(plan.phase2_epochs == 70);
  CHECK(plan.phase2_temperature == doctest::Approx(0.1));
  CHECK(plan.tdiet_enabled);
  CHECK(!plan.in_phase2(29));
  CHECK(plan.in_phase2(30));

  auto small = build_combdiet_plan(10, LearnerKind::Contrastive);
  CHECK(small.phase1->total_epochs == 3);
  CHECK(small.phase2_epochs == 7);

  for (int total : {10, 11, 25, 33, 100, 217}) {
    auto p = build_combdiet_plan(total, LearnerKind::Distillation);
    CHECK(p.phase1->total_epochs == int(std::lround(0.30 * total)));
    CHECK(p.phase1->total_epochs + p.phase2_epochs == total);
  }
}

TEST_CASE("schedule JSON round trip") {
  auto s = build_catdiet(30);
  auto j = schedule_to_json(s);
  CHECK(j["name"] == "catdiet");
  CHECK(j["stages"].size() == 8);
  auto s2 = schedule_from_json(j);
  CHECK(s2.stages == s.stages);
  CHECK(s2.total_epochs == s.total_epochs);
}

TEST_CASE("tdiet is a single identity stage at the mature temperature") {
  auto s = build_tdiet(30);
  CHECK(s.stages.size() == 1);
  CHECK(s.stages[0].blur_sigma == 0.0);
  CHECK(s.stages[0].temperature == doctest::Approx(0.1));
  CHECK(s.stages[0].duration_epochs == 30);
}
