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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aerofed/optimizer.hpp"
#include "aerofed/sim.hpp"
#include "aerofed/wire.hpp"
#include "doc_generators.hpp"
#include "flow_support.hpp"
#include "test_support.hpp"

namespace aerofed::testing {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// 1. Served-slice objectives of the built-in scenario.
Outcome ValidationReproduction() {
  const auto start = Clock::now();
  const ScenarioSpec scenario = PaperScenario();
  const int baseline = Solve(ProblemOf(scenario, 0)).objective();
  const int aec4 = Solve(ProblemOf(scenario, 4 * kGB)).objective();
  const int aec32 = Solve(ProblemOf(scenario, 32 * kGB)).objective();
  const double elapsed = Seconds(start);

  ScenarioSpec swept = scenario;
  swept.duration_s = 1.0;
  swept.sweep_cache_budget_bytes = {0, 4 * kGB, 8 * kGB, 16 * kGB, 32 * kGB, 60 * kGB};
  bool baseline_flat = true;
  for (const SweepRow& row : Sweep(swept)) {
    if (row.approach == "baseline" && row.analytical_objective != 2) baseline_flat = false;
  }

  std::ostringstream detail;
  detail << "baseline " << baseline << " (every cache size: " << (baseline_flat ? "2" : "varies")
         << "), AEC " << aec4 << " @ 4 GB, " << aec32 << " @ 32 GB, solve time " << elapsed
         << " s";
  return {baseline == 2 && baseline_flat && aec4 == 4 && aec32 == 18 && elapsed < 1.0,
          detail.str()};
}

// 2. Objectives over the cache sweep against the homogeneous closed form.
Outcome ClosedFormSweep() {
  const std::uint64_t sizes[] = {0, 4, 8, 16, 32, 60};
  const int frozen[] = {2, 4, 6, 10, 18, 30};
  Outcome outcome;
  std::ostringstream detail;
  for (std::size_t i = 0; i < 6; ++i) {
    const double cache = static_cast<double>(sizes[i] * kGB);
    const int objective = Solve(PaperProblem(30, cache)).objective();
    const int oracle = ClosedFormServed(30, kPaperBandwidth, cache, kPaperDemand,
                                        kPaperCatalogBytes);
    if (objective != oracle || objective != frozen[i]) outcome.pass = false;
    detail << (i ? ", " : "") << sizes[i] << " GB -> " << objective;
  }
  outcome.detail = detail.str();
  return outcome;
}

// 3. Count search against exhaustive subset enumeration.
Outcome OracleEquivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  int agree = 0;
  int invalid = 0;
  constexpr int kProblems = 200;
  for (int i = 0; i < kProblems; ++i) {
    const AdmissionProblem problem = RandomProblem(rng);
    const AdmissionPlan fast = Solve(problem);
    const AdmissionPlan slow = SolveBruteForce(problem);
    if (fast.objective() == slow.objective()) ++agree;
    if (!CheckPlan(fast, problem).empty()) ++invalid;
  }
  const double elapsed = Seconds(start);
  std::ostringstream detail;
  detail << agree << "/" << kProblems << " objectives equal, " << invalid
         << " invalid plans, " << elapsed << " s";
  return {agree == kProblems && invalid == 0 && elapsed < 30.0, detail.str()};
}

// 4. Simulated delay of satellite-only slices against RTT + S*8/rate.
Outcome DelayCrossCheck() {
  const double expected = kPaperRtt + 200'000 * 8.0 / kPaperDemand;
  Outcome outcome;
  int checked = 0;
  double worst = 0.0;
  for (std::uint64_t cache : {std::uint64_t{0}, 32 * kGB}) {
    ScenarioSpec scenario = PaperScenario();
    scenario.cache_budget_bytes = cache;
    const AdmissionPlan plan = Solve(ProblemOf(scenario, cache));
    const SimMetrics metrics = Simulate(scenario, plan);
    for (const SliceMetrics& slice : metrics.slices) {
      if (!slice.admitted || plan.cache_alloc.at(slice.slice_id) != 0) continue;
      ++checked;
      const double error = std::abs(slice.mean_delay_s - expected) / expected;
      worst = std::max(worst, error);
      if (error > 0.01 || slice.offered_requests == 0) outcome.pass = false;
    }
  }
  if (checked == 0) outcome.pass = false;
  std::ostringstream detail;
  detail << checked << " satellite-only slices, expected " << expected
         << " s, worst relative error " << worst;
  outcome.detail = detail.str();
  return outcome;
}

// 5. Block order, conservation and clean rejections over random sequences.
Outcome FlowConformance() {
  int requests = 0;
  int rejected = 0;
  int failures = 0;
  std::string first;
  constexpr int kSequences = 1000;
  for (int seed = 0; seed < kSequences; ++seed) {
    const FlowReport report = RunRandomFlow(static_cast<std::uint64_t>(seed) + 5000);
    requests += report.requests;
    rejected += report.rejected;
    if (!report.violation.empty()) {
      ++failures;
      if (first.empty()) first = report.violation;
    }
  }
  std::ostringstream detail;
  detail << kSequences - failures << "/" << kSequences << " sequences clean, " << requests
         << " requests (" << rejected << " rejected)";
  if (!first.empty()) detail << "; first violation: " << first;
  return {failures == 0 && rejected > 0 && requests > rejected, detail.str()};
}

// 6. parse(emit(v)) == v over generated documents, and byte-stable emission.
std::string EmitGenerated(std::uint64_t seed, int count, int& round_trips) {
  DocGenerator gen(seed);
  std::string bytes;
  round_trips = 0;
  for (int i = 0; i < count; ++i) {
    bool same = false;
    std::string text;
    switch (i % 5) {
      case 0: {
        const auto v = gen.Request();
        text = Emit(v);
        same = ParseRequest(text) == v;
        break;
      }
      case 1: {
        const auto v = gen.Offer();
        text = Emit(v);
        same = ParseOffer(text) == v;
        break;
      }
      case 2: {
        const auto v = gen.Decision();
        text = Emit(v);
        same = ParseDecision(text) == v;
        break;
      }
      case 3: {
        const auto v = gen.Ack();
        text = Emit(v);
        same = ParseOfferAck(text) == v;
        break;
      }
      default: {
        const auto v = gen.Scenario();
        text = Emit(v);
        same = ParseScenario(text) == v && Emit(ParseScenario(text)) == text;
        break;
      }
    }
    if (same) ++round_trips;
    bytes += text;
    bytes += '\n';
  }
  return bytes;
}

Outcome WireRoundTrip() {
  constexpr int kDocuments = 1000;
  int first_pass = 0;
  int second_pass = 0;
  const std::string a = EmitGenerated(77, kDocuments, first_pass);
  const std::string b = EmitGenerated(77, kDocuments, second_pass);
  std::ostringstream detail;
  detail << first_pass << "/" << kDocuments << " round trips, emission "
         << (a == b ? "byte-identical" : "differs") << " across runs (" << a.size()
         << " bytes)";
  return {first_pass == kDocuments && second_pass == kDocuments && a == b, detail.str()};
}

// 7. Objective never drops as cache or bandwidth grows.
Outcome Monotonicity() {
  std::mt19937_64 rng(4242);
  int counterexamples = 0;
  constexpr int kTrials = 100;
  for (int trial = 0; trial < kTrials; ++trial) {
    AdmissionProblem problem = RandomProblem(rng, {.max_slices = 8});
    double catalog = 0.0;
    double demand = 0.0;
    for (const auto& s : problem.slices) {
      catalog += s.catalog_bytes();
      demand += AggregateDemand(s);
    }
    const AdmissionProblem base = problem;
    int previous = -1;
    for (int step = 0; step <= 10; ++step) {
      problem.cache_budget_bytes = std::floor(catalog * step / 10.0);
      const int objective = Solve(problem).objective();
      if (objective < previous) ++counterexamples;
      previous = objective;
    }
    problem = base;
    previous = -1;
    for (int step = 0; step <= 10; ++step) {
      problem.satellite.bandwidth_bps = demand * step / 10.0;
      const int objective = Solve(problem).objective();
      if (objective < previous) ++counterexamples;
      previous = objective;
    }
  }
  std::ostringstream detail;
  detail << counterexamples << " counterexamples in " << kTrials
         << " trials (11-point cache and bandwidth sweeps)";
  return {counterexamples == 0, detail.str()};
}

}  // namespace
}  // namespace aerofed::testing

int main() {
  using namespace aerofed::testing;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"validation reproduction", ValidationReproduction},
      {"closed-form sweep", ClosedFormSweep},
      {"oracle equivalence", OracleEquivalence},
      {"delay cross-check", DelayCrossCheck},
      {"federation flow conformance", FlowConformance},
      {"wire round-trip", WireRoundTrip},
      {"monotonicity", Monotonicity},
  };
  int failed = 0;
  int index = 0;
  for (const auto& criterion : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::printf("%s [%d] %s: %s\n", outcome.pass ? "PASS" : "FAIL", index, criterion.name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
