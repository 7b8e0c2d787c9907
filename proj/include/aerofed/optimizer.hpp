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

// Slice admission for an aircraft with an onboard cache and a shared
// satellite backhaul. The model is fluid and deterministic:
//
//   * a slice with m cached files (most popular first) hits with
//     probability h = TopMass(m) and is served locally after `cached_hit_delay_s`;
//   * every miss costs RTT + S*8/rate on the slice's satellite share `rate`;
//   * a slice is served iff rate >= (1-h)*d (stability) and the mean request
//     delay h*eps + (1-h)*(RTT + S*8/rate) stays within its requirement.
//
// Solve() maximizes the number of served slices. Ties go to the plan with
// the least total satellite rate, then to the lexicographically smallest
// set of slice ids.

#ifndef AEROFED_OPTIMIZER_HPP_
#define AEROFED_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aerofed/domain.hpp"

namespace aerofed {

struct AdmissionProblem {
  std::vector<NetworkSlice> slices;
  SatelliteProfile satellite;
  double cache_budget_bytes = 0.0;
  // Must satisfy 0 <= cached_hit_delay_s <= satellite.round_trip_delay_s.
  double cached_hit_delay_s = 0.0;
};

// Throws Error(kInvariantViolation) naming the field.
void Validate(const AdmissionProblem& problem);

// Relative slack applied to the stability and delay comparisons so that
// allocations computed in floating point certify themselves.
inline constexpr double kServingTolerance = 1e-9;

inline constexpr std::size_t kBruteForceMaxSlices = 12;

// Fraction of requests hitting a cache of `cache_bytes` holding whole files,
// most popular first.
double HitRatio(double cache_bytes, const NetworkSlice& slice);

struct RequestDelay {
  double hit_s = 0.0;
  double miss_s = 0.0;
  double mean_s = 0.0;
};

// Throws Error(kUndefinedDelay) when some requests miss and rate_bps == 0.
RequestDelay PerRequestDelay(const NetworkSlice& slice, double cache_bytes,
                             double rate_bps, const SatelliteProfile& satellite,
                             double cached_hit_delay_s = 0.0);

bool IsServed(const NetworkSlice& slice, double cache_bytes, double rate_bps,
              const SatelliteProfile& satellite,
              double cached_hit_delay_s = 0.0);

// Least satellite rate that serves `slice` with `cached_files` cached, or
// +infinity when no rate does.
double MinimumServingRate(const NetworkSlice& slice, std::uint64_t cached_files,
                          const SatelliteProfile& satellite,
                          double cached_hit_delay_s = 0.0);

// Cache and rate allocation serving every slice in `subset` (indices into
// problem.slices) with the least total satellite rate the allocator finds, or
// nullopt when the subset does not fit. With equal file sizes cache goes one
// file at a time to the slice with the largest rate saving per byte, which is
// exact. Unequal sizes make the split a knapsack: it is solved exactly by
// dynamic programming when the table stays under 2e7 cells, otherwise by the
// greedy fill followed by improving single-file exchanges.
std::optional<AdmissionPlan> SubsetFeasible(
    std::span<const std::size_t> subset, const AdmissionProblem& problem);

// Exact search over slice counts per class of identical slices.
AdmissionPlan Solve(const AdmissionProblem& problem);

// Enumerates every subset, largest first. Throws Error(kProblemTooLarge)
// above kBruteForceMaxSlices.
AdmissionPlan SolveBruteForce(const AdmissionProblem& problem);

}  // namespace aerofed

#endif  // AEROFED_OPTIMIZER_HPP_
