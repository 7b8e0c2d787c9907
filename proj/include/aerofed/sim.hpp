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

// Discrete-event replay of per-UE file requests through an admission plan.
// There is no queueing or link contention: every miss takes RTT plus the
// transfer time at the slice's allocated rate, exactly as in the analytical
// model, so deterministic runs reproduce the analytical delays.

#ifndef AEROFED_SIM_HPP_
#define AEROFED_SIM_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aerofed/domain.hpp"
#include "aerofed/optimizer.hpp"

namespace aerofed {

enum class ArrivalProcess { kDeterministic, kPoisson };

std::string_view ToString(ArrivalProcess process);

struct ScenarioSpec {
  std::uint64_t seed = 1;
  double duration_s = 100.0;
  SatelliteProfile satellite;
  std::uint64_t cache_budget_bytes = 0;
  double cached_hit_delay_s = 0.0;
  std::vector<NetworkSlice> slices;
  ArrivalProcess arrival_process = ArrivalProcess::kDeterministic;
  std::vector<std::uint64_t> sweep_cache_budget_bytes;

  bool operator==(const ScenarioSpec&) const = default;
};

// Throws Error(kInvalidScenario) naming the offending field.
void Validate(const ScenarioSpec& scenario);

// The aircraft experiment: 30 slices of 15 UEs requesting 0.2 MB files at
// 2 files/s from private 10000-file uniform catalogs with a 1 s delay bound,
// behind a GEO link with 250 ms RTT and 112 Mbps. Cache budget 32 GB.
ScenarioSpec PaperScenario();

AdmissionProblem ProblemOf(const ScenarioSpec& scenario,
                           std::uint64_t cache_budget_bytes);

struct SliceMetrics {
  std::string slice_id;
  bool admitted = false;
  std::uint64_t offered_requests = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  double mean_delay_s = 0.0;
  double peak_satellite_rate_bps = 0.0;

  bool operator==(const SliceMetrics&) const = default;
};

struct SimMetrics {
  std::string rng_algorithm;
  std::vector<SliceMetrics> slices;  // scenario order
  int analytical_objective = 0;
  int served_slice_count = 0;
  double mean_delay_s = 0.0;  // request-weighted over admitted slices
  double satellite_utilization = 0.0;
  double peak_satellite_rate_bps = 0.0;

  bool operator==(const SimMetrics&) const = default;
};

inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64-streams";

// Replays the scenario's traffic through `plan`. Slices outside the plan are
// blocked at admission and generate no traffic.
SimMetrics Simulate(const ScenarioSpec& scenario, const AdmissionPlan& plan);

// Solves the scenario at its own cache budget, then simulates the plan.
SimMetrics Run(const ScenarioSpec& scenario);

struct SweepRow {
  std::uint64_t cache_budget_bytes = 0;
  std::string approach;  // "aec" or "baseline"
  int analytical_objective = 0;
  int simulated_served = 0;
  double mean_delay_s = 0.0;
  double satellite_utilization = 0.0;

  bool operator==(const SweepRow&) const = default;
};

// For each sweep value, an "aec" row and a "baseline" row (cache forced to 0),
// in sweep order. Throws kInvalidScenario if the sweep list is empty.
std::vector<SweepRow> Sweep(const ScenarioSpec& scenario);

// Header: cache_budget_bytes,approach,served_slices,mean_delay_s,satellite_utilization
std::string SweepCsv(const std::vector<SweepRow>& rows);

}  // namespace aerofed

#endif  // AEROFED_SIM_HPP_
