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

#include "aerofed/sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <queue>
#include <random>
#include <set>
#include <utility>

#include "aerofed/error.hpp"
#include "aerofed/popularity.hpp"

namespace aerofed {
namespace {

void Require(bool condition, const char* field) {
  if (!condition) throw Error(ErrorCode::kInvalidScenario, field);
}

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Independent stream per (slice, UE) so adding a slice never perturbs the
// draws of another.
std::mt19937_64 StreamFor(std::uint64_t seed, std::size_t slice, std::uint64_t ue) {
  std::uint64_t state = seed;
  state ^= SplitMix64(state) + static_cast<std::uint64_t>(slice) * 0xD1B54A32D192ED03ull;
  state ^= SplitMix64(state) + ue * 0x8CB92BA72F3D8DD7ull;
  return std::mt19937_64(SplitMix64(state));
}

double Uniform(std::mt19937_64& generator) {
  return static_cast<double>(generator() >> 11) * 0x1.0p-53;
}

std::string FormatDouble(double value) {
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

struct Arrival {
  double time;
  std::uint32_t slice;
  std::uint64_t ue;
  std::uint64_t index;  // request number of this UE

  bool operator>(const Arrival& other) const {
    if (time != other.time) return time > other.time;
    if (slice != other.slice) return slice > other.slice;
    return ue > other.ue;
  }
};

struct Interval {
  double start;
  double end;
};

struct SliceRun {
  const NetworkSlice* slice = nullptr;
  std::shared_ptr<const ZipfPopularity> popularity;
  bool admitted = false;
  std::uint64_t cached_files = 0;
  double rate_bps = 0.0;
  double miss_delay_s = 0.0;
  std::uint64_t offered = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  long double delay_sum = 0.0L;
  std::vector<Interval> busy;  // disjoint, ascending
};

// Adds [start, end) to a slice's busy set; arrivals are processed in time
// order, so starts never decrease.
void MarkBusy(std::vector<Interval>& busy, double start, double end) {
  if (!(end > start)) return;
  if (!busy.empty() && start <= busy.back().end) {
    busy.back().end = std::max(busy.back().end, end);
  } else {
    busy.push_back({start, end});
  }
}

}  // namespace

std::string_view ToString(ArrivalProcess process) {
  return process == ArrivalProcess::kDeterministic ? "deterministic" : "poisson";
}

void Validate(const ScenarioSpec& scenario) {
  Require(std::isfinite(scenario.duration_s) && scenario.duration_s > 0.0, "duration_s");
  Require(std::isfinite(scenario.satellite.round_trip_delay_s) &&
              scenario.satellite.round_trip_delay_s >= 0.0,
          "round_trip_delay_s");
  Require(std::isfinite(scenario.satellite.bandwidth_bps) &&
              scenario.satellite.bandwidth_bps >= 0.0,
          "bandwidth_bps");
  Require(std::isfinite(scenario.cached_hit_delay_s) && scenario.cached_hit_delay_s >= 0.0 &&
              scenario.cached_hit_delay_s <= scenario.satellite.round_trip_delay_s,
          "cached_hit_delay_s");
  std::set<std::string> ids;
  for (const auto& slice : scenario.slices) {
    try {
      Validate(slice);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidScenario, e.detail());
    }
    Require(ids.insert(slice.slice_id).second, "slice_id");
  }
}

ScenarioSpec PaperScenario() {
  ScenarioSpec scenario;
  scenario.seed = 1;
  scenario.duration_s = 100.0;
  scenario.satellite = {0.250, 112 * kMegabitPerSecond};
  scenario.cache_budget_bytes = 32'000'000'000ull;
  scenario.arrival_process = ArrivalProcess::kDeterministic;
  for (int i = 1; i <= 30; ++i) {
    NetworkSlice slice;
    char id[16];
    std::snprintf(id, sizeof(id), "slice-%02d", i);
    slice.slice_id = id;
    slice.ue_count = 15;
    slice.per_ue_request_rate = 2.0;
    slice.file_size_bytes = 200'000;
    slice.catalog_size_files = 10'000;
    slice.zipf_exponent = 0.0;
    slice.delay_requirement_s = 1.0;
    scenario.slices.push_back(slice);
  }
  return scenario;
}

AdmissionProblem ProblemOf(const ScenarioSpec& scenario, std::uint64_t cache_budget_bytes) {
  AdmissionProblem problem;
  problem.slices = scenario.slices;
  problem.satellite = scenario.satellite;
  problem.cache_budget_bytes = static_cast<double>(cache_budget_bytes);
  problem.cached_hit_delay_s = scenario.cached_hit_delay_s;
  return problem;
}

SimMetrics Simulate(const ScenarioSpec& scenario, const AdmissionPlan& plan) {
  Validate(scenario);
  const double duration = scenario.duration_s;
  const double rtt = scenario.satellite.round_trip_delay_s;

  std::map<std::pair<std::uint64_t, double>, std::shared_ptr<const ZipfPopularity>> tables;
  std::vector<SliceRun> runs(scenario.slices.size());
  for (std::size_t i = 0; i < scenario.slices.size(); ++i) {
    const auto& slice = scenario.slices[i];
    auto& run = runs[i];
    run.slice = &slice;
    auto& table = tables[{slice.catalog_size_files, slice.zipf_exponent}];
    if (!table) {
      table = std::make_shared<ZipfPopularity>(slice.catalog_size_files, slice.zipf_exponent);
    }
    run.popularity = table;
    run.admitted = std::binary_search(plan.served.begin(), plan.served.end(), slice.slice_id);
    if (!run.admitted) continue;
    const auto cache = plan.cache_alloc.find(slice.slice_id);
    const auto rate = plan.rate_alloc.find(slice.slice_id);
    const std::uint64_t cache_bytes = cache == plan.cache_alloc.end() ? 0 : cache->second;
    run.cached_files = std::min(cache_bytes / slice.file_size_bytes, slice.catalog_size_files);
    run.rate_bps = rate == plan.rate_alloc.end() ? 0.0 : rate->second;
    run.miss_delay_s = run.rate_bps > 0.0
                           ? rtt + static_cast<double>(slice.file_size_bytes) * 8.0 / run.rate_bps
                           : std::numeric_limits<double>::infinity();
  }

  std::vector<std::vector<std::mt19937_64>> streams(runs.size());
  std::priority_queue<Arrival, std::vector<Arrival>, std::greater<>> queue;
  const bool poisson = scenario.arrival_process == ArrivalProcess::kPoisson;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& slice = *runs[i].slice;
    const double lambda = slice.per_ue_request_rate;
    if (!runs[i].admitted || !(lambda > 0.0)) continue;
    for (std::uint64_t ue = 0; ue < slice.ue_count; ++ue) {
      streams[i].push_back(StreamFor(scenario.seed, i, ue));
      // Deterministic UEs are staggered evenly across one request period.
      const double first =
          poisson ? -std::log1p(-Uniform(streams[i].back())) / lambda
                  : static_cast<double>(ue) / (static_cast<double>(slice.ue_count) * lambda);
      queue.push({first, static_cast<std::uint32_t>(i), ue, 0});
    }
  }

  while (!queue.empty()) {
    const Arrival arrival = queue.top();
    queue.pop();
    if (arrival.time >= duration) continue;
    auto& run = runs[arrival.slice];
    auto& generator = streams[arrival.slice][arrival.ue];
    ++run.offered;
    const std::uint64_t rank = run.popularity->Sample(Uniform(generator));
    if (rank < run.cached_files) {
      ++run.hits;
      run.delay_sum += scenario.cached_hit_delay_s;
    } else {
      ++run.misses;
      run.delay_sum += run.miss_delay_s;
      const double start = std::min(arrival.time + rtt, duration);
      const double end = std::min(arrival.time + run.miss_delay_s, duration);
      MarkBusy(run.busy, start, end);
    }
    const double lambda = run.slice->per_ue_request_rate;
    Arrival next = arrival;
    next.index = arrival.index + 1;
    if (poisson) {
      next.time = arrival.time - std::log1p(-Uniform(generator)) / lambda;
    } else {
      next.time = static_cast<double>(arrival.ue) /
                      (static_cast<double>(run.slice->ue_count) * lambda) +
                  static_cast<double>(next.index) / lambda;
    }
    queue.push(next);
  }

  SimMetrics metrics;
  metrics.rng_algorithm = std::string(kRngAlgorithm);
  metrics.analytical_objective = plan.objective();
  long double total_delay = 0.0L;
  std::uint64_t total_requests = 0;
  double occupied = 0.0;  // sum of rate * busy seconds
  std::vector<std::pair<double, double>> edges;  // time, rate delta
  for (const auto& run : runs) {
    SliceMetrics slice;
    slice.slice_id = run.slice->slice_id;
    slice.admitted = run.admitted;
    slice.offered_requests = run.offered;
    slice.hits = run.hits;
    slice.misses = run.misses;
    if (run.offered > 0) {
      slice.mean_delay_s = static_cast<double>(run.delay_sum / run.offered);
    }
    if (!run.busy.empty()) slice.peak_satellite_rate_bps = run.rate_bps;
    for (const auto& interval : run.busy) {
      occupied += run.rate_bps * (interval.end - interval.start);
      edges.emplace_back(interval.start, run.rate_bps);
      edges.emplace_back(interval.end, -run.rate_bps);
    }
    if (run.admitted) {
      total_delay += run.delay_sum;
      total_requests += run.offered;
      const bool delay_met =
          run.offered == 0 ||
          slice.mean_delay_s <= run.slice->delay_requirement_s * (1.0 + kServingTolerance);
      if (delay_met) ++metrics.served_slice_count;
    }
    metrics.slices.push_back(std::move(slice));
  }
  if (total_requests > 0) {
    metrics.mean_delay_s = static_cast<double>(total_delay / total_requests);
  }
  const double bandwidth = scenario.satellite.bandwidth_bps;
  if (bandwidth > 0.0) metrics.satellite_utilization = occupied / (bandwidth * duration);

  // Intervals ending at t are closed before those starting at t.
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  double level = 0.0;
  for (const auto& [time, delta] : edges) {
    level += delta;
    metrics.peak_satellite_rate_bps = std::max(metrics.peak_satellite_rate_bps, level);
  }
  return metrics;
}

SimMetrics Run(const ScenarioSpec& scenario) {
  Validate(scenario);
  return Simulate(scenario, Solve(ProblemOf(scenario, scenario.cache_budget_bytes)));
}

std::vector<SweepRow> Sweep(const ScenarioSpec& scenario) {
  Validate(scenario);
  if (scenario.sweep_cache_budget_bytes.empty()) {
    throw Error(ErrorCode::kInvalidScenario, "sweep_cache_budget_bytes");
  }
  const AdmissionPlan baseline_plan = Solve(ProblemOf(scenario, 0));
  const SimMetrics baseline = Simulate(scenario, baseline_plan);
  std::vector<SweepRow> rows;
  for (std::uint64_t cache : scenario.sweep_cache_budget_bytes) {
    const AdmissionPlan plan = Solve(ProblemOf(scenario, cache));
    const SimMetrics aec = Simulate(scenario, plan);
    rows.push_back({cache, "aec", plan.objective(), aec.served_slice_count,
                    aec.mean_delay_s, aec.satellite_utilization});
    rows.push_back({cache, "baseline", baseline_plan.objective(),
                    baseline.served_slice_count, baseline.mean_delay_s,
                    baseline.satellite_utilization});
  }
  return rows;
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string out = "cache_budget_bytes,approach,served_slices,mean_delay_s,satellite_utilization\n";
  for (const auto& row : rows) {
    out += std::to_string(row.cache_budget_bytes);
    out += ',';
    out += row.approach;
    out += ',';
    out += std::to_string(row.analytical_objective);
    out += ',';
    out += FormatDouble(row.mean_delay_s);
    out += ',';
    out += FormatDouble(row.satellite_utilization);
    out += '\n';
  }
  return out;
}

}  // namespace aerofed
