// Copyright 2026 The Aerofed Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "aerofed/error.hpp"
#include "aerofed/optimizer.hpp"
#include "aerofed/popularity.hpp"
#include "aerofed/sim.hpp"
#include "aerofed/wire.hpp"
#include "error_helpers.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace aerofed {
namespace {

using testing::CodeOf;
using testing::kGB;

ScenarioSpec PaperAt(std::uint64_t cache_bytes, double duration_s = 100.0) {
  ScenarioSpec scenario = PaperScenario();
  scenario.cache_budget_bytes = cache_bytes;
  scenario.duration_s = duration_s;
  return scenario;
}

TEST(PaperScenarioTest, Parameters) {
  const ScenarioSpec scenario = PaperScenario();
  ASSERT_EQ(scenario.slices.size(), 30u);
  EXPECT_EQ(scenario.slices.front().slice_id, "slice-01");
  EXPECT_EQ(scenario.slices.back().slice_id, "slice-30");
  for (const auto& slice : scenario.slices) {
    NetworkSlice expected = testing::PaperSlice(1);
    expected.slice_id = slice.slice_id;
    EXPECT_EQ(slice, expected);
  }
  EXPECT_EQ(scenario.satellite, (SatelliteProfile{0.25, 112e6}));
  EXPECT_EQ(scenario.cache_budget_bytes, 32 * kGB);
  EXPECT_EQ(scenario.arrival_process, ArrivalProcess::kDeterministic);
  EXPECT_EQ(scenario.duration_s, 100.0);
}

TEST(RunTest, ThirtyTwoGigabytes) {
  const SimMetrics metrics = aerofed::Run(PaperAt(32 * kGB));
  EXPECT_EQ(metrics.analytical_objective, 18);
  EXPECT_EQ(metrics.served_slice_count, 18);
  EXPECT_EQ(metrics.rng_algorithm, kRngAlgorithm);
  const AdmissionPlan plan = Solve(ProblemOf(PaperAt(32 * kGB), 32 * kGB));
  int fully_cached = 0;
  for (const auto& slice : metrics.slices) {
    EXPECT_EQ(slice.hits + slice.misses, slice.offered_requests);
    if (!slice.admitted) {
      EXPECT_EQ(slice.offered_requests, 0u);
      continue;
    }
    EXPECT_EQ(slice.offered_requests, 15u * 2u * 100u);
    if (plan.cache_alloc.at(slice.slice_id) == 2 * kGB) {
      ++fully_cached;
      EXPECT_EQ(slice.hits, slice.offered_requests) << slice.slice_id;
      EXPECT_EQ(slice.mean_delay_s, 0.0);
    }
  }
  EXPECT_GT(fully_cached, 0);
  EXPECT_LE(metrics.satellite_utilization, 1.0);
  EXPECT_LE(metrics.peak_satellite_rate_bps, plan.total_rate_bps() * (1 + 1e-12));
  EXPECT_LE(plan.total_rate_bps(), 112e6 * (1 + 1e-9));
}

TEST(RunTest, BaselineDelayMatchesModel) {
  const SimMetrics metrics = aerofed::Run(PaperAt(0));
  EXPECT_EQ(metrics.served_slice_count, 2);
  const double analytical = 0.25 + 1.6e6 / 48e6;
  for (const auto& slice : metrics.slices) {
    if (!slice.admitted) continue;
    EXPECT_EQ(slice.misses, slice.offered_requests);
    EXPECT_NEAR(slice.mean_delay_s, analytical, 0.01 * analytical);
    EXPECT_EQ(slice.peak_satellite_rate_bps, 48e6);
  }
  EXPECT_NEAR(metrics.mean_delay_s, 0.28333, 0.01 * 0.28333);
  // Two 48 Mbps slices keep the pipe busy almost all the time.
  EXPECT_NEAR(metrics.satellite_utilization, 96.0 / 112.0, 0.01);
  EXPECT_EQ(metrics.peak_satellite_rate_bps, 96e6);
}

TEST(RunTest, SimulatedDelayMatchesAnalyticalPerSlice) {
  // Partially cached slices: hit ratio and mean delay follow the model.
  for (std::uint64_t gb : {4, 8, 16, 32}) {
    const ScenarioSpec scenario = PaperAt(gb * kGB, 200.0);
    const AdmissionPlan plan = Solve(ProblemOf(scenario, gb * kGB));
    const SimMetrics metrics = Simulate(scenario, plan);
    for (const auto& slice : metrics.slices) {
      if (!slice.admitted) continue;
      const double cache = static_cast<double>(plan.cache_alloc.at(slice.slice_id));
      const RequestDelay expected = PerRequestDelay(
          testing::PaperSlice(1), cache, plan.rate_alloc.at(slice.slice_id),
          scenario.satellite);
      EXPECT_NEAR(slice.mean_delay_s, expected.mean_s, 0.01 * expected.mean_s + 1e-12)
          << gb << " GB " << slice.slice_id;
    }
  }
}

TEST(RunTest, ZeroRequestRate) {
  ScenarioSpec scenario = PaperAt(4 * kGB);
  for (auto& slice : scenario.slices) slice.per_ue_request_rate = 0.0;
  const SimMetrics metrics = aerofed::Run(scenario);
  for (const auto& slice : metrics.slices) {
    EXPECT_EQ(slice.offered_requests, 0u);
    EXPECT_EQ(slice.mean_delay_s, 0.0);
  }
  EXPECT_EQ(metrics.mean_delay_s, 0.0);
  EXPECT_EQ(metrics.satellite_utilization, 0.0);
}

TEST(RunTest, SeedDeterminism) {
  ScenarioSpec scenario = PaperAt(16 * kGB, 20.0);
  scenario.arrival_process = ArrivalProcess::kPoisson;
  scenario.seed = 1234;
  EXPECT_EQ(Emit(aerofed::Run(scenario)), Emit(aerofed::Run(scenario)));
  ScenarioSpec other = scenario;
  other.seed = 1235;
  EXPECT_NE(Emit(aerofed::Run(scenario)), Emit(aerofed::Run(other)));
}

TEST(RunTest, PoissonArrivalsConserveRequests) {
  ScenarioSpec scenario = PaperAt(16 * kGB, 50.0);
  scenario.arrival_process = ArrivalProcess::kPoisson;
  for (auto& slice : scenario.slices) slice.zipf_exponent = 0.8;
  const SimMetrics metrics = aerofed::Run(scenario);
  std::uint64_t offered = 0;
  for (const auto& slice : metrics.slices) {
    EXPECT_EQ(slice.hits + slice.misses, slice.offered_requests);
    offered += slice.offered_requests;
  }
  // Roughly 30 requests/s per admitted slice over 50 s.
  const double expected = 30.0 * 50.0 * metrics.analytical_objective;
  EXPECT_NEAR(static_cast<double>(offered), expected, 5.0 * std::sqrt(expected));
}

TEST(RunTest, InvalidScenario) {
  ScenarioSpec scenario = PaperScenario();
  scenario.duration_s = -1;
  EXPECT_EQ(CodeOf([&] { aerofed::Run(scenario); }), ErrorCode::kInvalidScenario);
  scenario = PaperScenario();
  scenario.slices[3].file_size_bytes = 0;
  EXPECT_EQ(testing::DetailOf([&] { aerofed::Run(scenario); }), "file_size_bytes");
  scenario = PaperScenario();
  scenario.slices[3].slice_id = "slice-01";
  EXPECT_EQ(testing::DetailOf([&] { aerofed::Run(scenario); }), "slice_id");
  scenario = PaperScenario();
  scenario.cached_hit_delay_s = 0.3;
  EXPECT_EQ(testing::DetailOf([&] { aerofed::Run(scenario); }), "cached_hit_delay_s");
}

TEST(SweepTest, ValidationCurve) {
  ScenarioSpec scenario = PaperAt(0, 10.0);
  for (std::uint64_t gb : {0, 4, 8, 16, 32, 60}) {
    scenario.sweep_cache_budget_bytes.push_back(gb * kGB);
  }
  const std::vector<SweepRow> rows = Sweep(scenario);
  ASSERT_EQ(rows.size(), 12u);
  const int expected[] = {2, 4, 6, 10, 18, 30};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(rows[2 * i].approach, "aec");
    EXPECT_EQ(rows[2 * i].analytical_objective, expected[i]);
    EXPECT_EQ(rows[2 * i].simulated_served, expected[i]);
    EXPECT_EQ(rows[2 * i + 1].approach, "baseline");
    EXPECT_EQ(rows[2 * i + 1].analytical_objective, 2);
    EXPECT_EQ(rows[2 * i + 1].cache_budget_bytes, rows[2 * i].cache_budget_bytes);
  }
}

TEST(SweepTest, ZeroCacheEqualsBaseline) {
  ScenarioSpec scenario = PaperAt(0, 10.0);
  scenario.sweep_cache_budget_bytes = {0};
  const std::vector<SweepRow> rows = Sweep(scenario);
  ASSERT_EQ(rows.size(), 2u);
  SweepRow aec = rows[0];
  aec.approach = "baseline";
  EXPECT_EQ(aec, rows[1]);
}

TEST(SweepTest, DoubledBandwidth) {
  ScenarioSpec scenario = PaperAt(0, 10.0);
  scenario.satellite.bandwidth_bps = 224e6;
  scenario.sweep_cache_budget_bytes = {0};
  EXPECT_EQ(Sweep(scenario)[0].analytical_objective, 4);
}

TEST(SweepTest, EmptySweep) {
  EXPECT_EQ(CodeOf([] { Sweep(PaperScenario()); }), ErrorCode::kInvalidScenario);
}

TEST(SweepTest, Csv) {
  const std::vector<SweepRow> rows = {{4 * kGB, "aec", 4, 4, 0.1416666, 0.857},
                                      {4 * kGB, "baseline", 2, 2, 0.25, 0.0}};
  EXPECT_EQ(SweepCsv(rows),
            "cache_budget_bytes,approach,served_slices,mean_delay_s,satellite_utilization\n"
            "4000000000,aec,4,0.1416666,0.857\n"
            "4000000000,baseline,2,0.25,0\n");
}

// Empirical rank frequencies of inverse-CDF draws against p_i, within three
// standard errors.
TEST(ZipfSamplingTest, FrequenciesMatchPopularity) {
  constexpr int kDraws = 200'000;
  for (double alpha : {0.0, 0.8, 1.2}) {
    ZipfPopularity zipf(20, alpha);
    std::mt19937_64 rng(2718);
    std::vector<int> counts(20, 0);
    for (int i = 0; i < kDraws; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      ++counts[zipf.Sample(u)];
    }
    for (std::uint64_t rank = 1; rank <= 20; ++rank) {
      const double p = zipf.Probability(rank);
      const double se = std::sqrt(p * (1 - p) / kDraws);
      EXPECT_NEAR(counts[rank - 1] / static_cast<double>(kDraws), p, 3 * se)
          << "alpha " << alpha << " rank " << rank;
    }
  }
}

}  // namespace
}  // namespace aerofed
