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

#include "aerofed/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "aerofed/error.hpp"
#include "aerofed/popularity.hpp"

namespace aerofed {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Savings and rates that differ only by rounding compare equal, so identical
// slices are filled in slice-id order instead of alternating on noise.
bool NearlyEqual(double a, double b) {
  return std::abs(a - b) <=
         kServingTolerance * std::max(std::abs(a), std::abs(b));
}

double FileBits(const NetworkSlice& slice) {
  return static_cast<double>(slice.file_size_bytes) * 8.0;
}

std::uint64_t CachedFiles(double cache_bytes, const NetworkSlice& slice) {
  if (!(cache_bytes > 0.0)) return 0;
  if (cache_bytes >= slice.catalog_bytes()) return slice.catalog_size_files;
  auto files = static_cast<std::uint64_t>(
      std::floor(cache_bytes / static_cast<double>(slice.file_size_bytes)));
  return std::min(files, slice.catalog_size_files);
}

double MinimumRateAtHit(const NetworkSlice& slice, double hit,
                        const SatelliteProfile& satellite, double hit_delay) {
  if (hit >= 1.0) return hit_delay <= slice.delay_requirement_s ? 0.0 : kInfinity;
  const double miss = 1.0 - hit;
  const double slack = slice.delay_requirement_s - hit * hit_delay -
                       miss * satellite.round_trip_delay_s;
  if (slack <= 0.0) return kInfinity;
  return std::max(miss * AggregateDemand(slice), miss * FileBits(slice) / slack);
}

bool ServedAtHit(const NetworkSlice& slice, double hit, double rate_bps,
                 const SatelliteProfile& satellite, double hit_delay) {
  const double limit = slice.delay_requirement_s * (1.0 + kServingTolerance);
  if (hit >= 1.0) return hit_delay <= limit;
  if (!(rate_bps > 0.0)) return false;
  const double miss = 1.0 - hit;
  const double residual = miss * AggregateDemand(slice);
  if (rate_bps < residual * (1.0 - kServingTolerance)) return false;
  const double mean = hit * hit_delay +
                      miss * (satellite.round_trip_delay_s + FileBits(slice) / rate_bps);
  return mean <= limit;
}

struct SliceModel {
  const NetworkSlice* slice = nullptr;
  std::shared_ptr<const ZipfPopularity> popularity;
};

// Per-problem precomputation shared by the solvers: popularity tables are
// built once per distinct (catalog, exponent) pair.
class AdmissionModel {
 public:
  explicit AdmissionModel(const AdmissionProblem& problem) : problem_(problem) {
    Validate(problem);
    std::map<std::pair<std::uint64_t, double>,
             std::shared_ptr<const ZipfPopularity>> tables;
    for (const auto& slice : problem.slices) {
      auto key = std::make_pair(slice.catalog_size_files, slice.zipf_exponent);
      auto& table = tables[key];
      if (!table) {
        table = std::make_shared<ZipfPopularity>(slice.catalog_size_files,
                                                 slice.zipf_exponent);
      }
      models_.push_back({&slice, table});
    }
    budget_bytes_ = static_cast<std::uint64_t>(std::floor(problem.cache_budget_bytes));
  }

  const AdmissionProblem& problem() const { return problem_; }
  std::size_t size() const { return models_.size(); }
  const NetworkSlice& slice(std::size_t i) const { return *models_[i].slice; }

  double Rate(std::size_t i, std::uint64_t files) const {
    return MinimumRateAtHit(*models_[i].slice, models_[i].popularity->TopMass(files),
                            problem_.satellite, problem_.cached_hit_delay_s);
  }

  // Rate needed if slice i had the entire cache to itself.
  double LowerBound(std::size_t i) const {
    const auto& s = *models_[i].slice;
    const std::uint64_t files =
        std::min<std::uint64_t>(s.catalog_size_files, budget_bytes_ / s.file_size_bytes);
    return Rate(i, files);
  }

  std::optional<AdmissionPlan> Feasible(std::span<const std::size_t> subset) const;

 private:
  struct Working {
    std::size_t index;
    std::uint64_t files;
    std::uint64_t min_files;
    std::uint64_t catalog;
    std::uint64_t size;
  };

  void Fill(std::vector<Working>& work, std::uint64_t& budget) const;
  bool Exchange(std::vector<Working>& work, std::uint64_t& budget) const;
  bool ExactSplit(std::vector<Working>& work, std::uint64_t budget) const;

  const AdmissionProblem& problem_;
  std::vector<SliceModel> models_;
  std::uint64_t budget_bytes_ = 0;
};

// Water-filling at file granularity. Each round picks the slice whose next
// file saves the most rate per byte and keeps granting it files while it
// stays ahead of the runner-up.
void AdmissionModel::Fill(std::vector<Working>& work, std::uint64_t& budget) const {
  auto saving = [&](const Working& w) {
    if (w.files >= w.catalog || w.size > budget) return -1.0;
    return (Rate(w.index, w.files) - Rate(w.index, w.files + 1)) /
           static_cast<double>(w.size);
  };
  auto ahead = [](double a, std::size_t pa, double b, std::size_t pb) {
    if (!NearlyEqual(a, b)) return a > b;
    return pa < pb;
  };
  while (true) {
    std::ptrdiff_t best = -1, second = -1;
    double best_key = 0.0, second_key = 0.0;
    for (std::size_t p = 0; p < work.size(); ++p) {
      const double key = saving(work[p]);
      if (key <= 0.0) continue;
      if (best < 0 || ahead(key, p, best_key, best)) {
        second = best;
        second_key = best_key;
        best = static_cast<std::ptrdiff_t>(p);
        best_key = key;
      } else if (second < 0 || ahead(key, p, second_key, second)) {
        second = static_cast<std::ptrdiff_t>(p);
        second_key = key;
      }
    }
    if (best < 0) return;
    auto& w = work[best];
    double key = best_key;
    do {
      ++w.files;
      budget -= w.size;
      key = saving(w);
    } while (key > 0.0 &&
             (second < 0 || ahead(key, best, second_key, second)));
  }
}

// One improving single-file exchange (drop a's last file, add b's next one).
// Only useful when file sizes differ; with equal sizes Fill is already exact.
bool AdmissionModel::Exchange(std::vector<Working>& work, std::uint64_t& budget) const {
  double best_net = 0.0;
  std::ptrdiff_t from = -1, to = -1;
  for (std::size_t a = 0; a < work.size(); ++a) {
    const auto& wa = work[a];
    if (wa.files <= wa.min_files) continue;
    const double loss = Rate(wa.index, wa.files - 1) - Rate(wa.index, wa.files);
    for (std::size_t b = 0; b < work.size(); ++b) {
      const auto& wb = work[b];
      if (a == b || wb.files >= wb.catalog || wb.size > budget + wa.size) continue;
      const double gain = Rate(wb.index, wb.files) - Rate(wb.index, wb.files + 1);
      const double net = gain - loss;
      if (net > best_net && !NearlyEqual(gain, loss)) {
        best_net = net;
        from = static_cast<std::ptrdiff_t>(a);
        to = static_cast<std::ptrdiff_t>(b);
      }
    }
  }
  if (from < 0) return false;
  budget += work[from].size;
  --work[from].files;
  budget -= work[to].size;
  ++work[to].files;
  return true;
}

// Multiple-choice knapsack over cache units of gcd(file sizes) bytes: the
// least total rate over every whole-file split of `budget`. Returns false
// without touching `work` when the table would be too large.
bool AdmissionModel::ExactSplit(std::vector<Working>& work, std::uint64_t budget) const {
  constexpr std::uint64_t kMaxCells = 20'000'000;
  if (work.empty()) return true;
  std::uint64_t unit = 0;
  for (const auto& w : work) unit = std::gcd(unit, w.size);
  const std::uint64_t capacity = budget / unit;
  std::uint64_t cells = 0;
  for (const auto& w : work) {
    const std::uint64_t choices = std::min(w.catalog - w.min_files, capacity * unit / w.size) + 1;
    cells += choices * (capacity + 1);
    if (cells > kMaxCells) return false;
  }

  std::vector<double> best(capacity + 1, 0.0);
  std::vector<std::vector<std::uint64_t>> choice(work.size());
  for (std::size_t p = 0; p < work.size(); ++p) {
    const auto& w = work[p];
    const std::uint64_t step = w.size / unit;
    const std::uint64_t extra_max = std::min(w.catalog - w.min_files, capacity / step);
    std::vector<double> rates(extra_max + 1);
    for (std::uint64_t e = 0; e <= extra_max; ++e) rates[e] = Rate(w.index, w.min_files + e);
    std::vector<double> next(capacity + 1, kInfinity);
    choice[p].assign(capacity + 1, 0);
    for (std::uint64_t c = 0; c <= capacity; ++c) {
      for (std::uint64_t e = 0; e <= extra_max && e * step <= c; ++e) {
        const double total = best[c - e * step] + rates[e];
        if (total < next[c]) {
          next[c] = total;
          choice[p][c] = e;
        }
      }
    }
    best = std::move(next);
  }
  std::uint64_t c = capacity;
  for (std::size_t p = work.size(); p-- > 0;) {
    const std::uint64_t e = choice[p][c];
    work[p].files = work[p].min_files + e;
    c -= e * (work[p].size / unit);
  }
  return true;
}

std::optional<AdmissionPlan> AdmissionModel::Feasible(
    std::span<const std::size_t> subset) const {
  std::vector<std::size_t> order(subset.begin(), subset.end());
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return slice(a).slice_id < slice(b).slice_id;
  });

  const double bandwidth = problem_.satellite.bandwidth_bps;
  std::vector<Working> work;
  work.reserve(order.size());
  std::uint64_t mandatory = 0;
  double bound = 0.0;
  for (std::size_t i : order) {
    const auto& s = slice(i);
    if (Rate(i, s.catalog_size_files) == kInfinity) return std::nullopt;
    // Smallest cache that makes the delay requirement reachable at all.
    std::uint64_t lo = 0, hi = s.catalog_size_files;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (Rate(i, mid) < kInfinity) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    mandatory += lo * s.file_size_bytes;
    if (mandatory > budget_bytes_) return std::nullopt;
    bound += LowerBound(i);
    if (bound > bandwidth) return std::nullopt;
    work.push_back({i, lo, lo, s.catalog_size_files, s.file_size_bytes});
  }

  std::uint64_t budget = budget_bytes_ - mandatory;
  const bool uniform_sizes = std::all_of(work.begin(), work.end(), [&](const Working& w) {
    return w.size == work.front().size;
  });
  if (uniform_sizes) {
    Fill(work, budget);
  } else if (!ExactSplit(work, budget)) {
    Fill(work, budget);
    constexpr int kMaxExchanges = 10000;
    for (int round = 0; round < kMaxExchanges && Exchange(work, budget); ++round) {
      Fill(work, budget);
    }
  }

  AdmissionPlan plan;
  double total = 0.0;
  for (const auto& w : work) {
    const auto& s = slice(w.index);
    const double rate = Rate(w.index, w.files);
    total += rate;
    if (total > bandwidth) return std::nullopt;
    const double hit = models_[w.index].popularity->TopMass(w.files);
    if (!ServedAtHit(s, hit, rate, problem_.satellite, problem_.cached_hit_delay_s)) {
      return std::nullopt;
    }
    plan.served.push_back(s.slice_id);
    plan.cache_alloc[s.slice_id] = w.files * w.size;
    plan.rate_alloc[s.slice_id] = rate;
  }
  return plan;
}

// Among equally large candidates: least total rate (up to rounding), then
// the lexicographically smallest sorted id list.
AdmissionPlan SelectBest(std::vector<AdmissionPlan> candidates) {
  if (candidates.empty()) return {};
  double least = kInfinity;
  for (const auto& plan : candidates) least = std::min(least, plan.total_rate_bps());
  const double cutoff = least + kServingTolerance * std::max(least, 1.0);
  const AdmissionPlan* chosen = nullptr;
  for (const auto& plan : candidates) {
    if (plan.total_rate_bps() > cutoff) continue;
    if (chosen == nullptr || plan.served < chosen->served) chosen = &plan;
  }
  return *chosen;
}

// Interchangeable slices: every field but the id matches.
using SliceKey = std::tuple<std::uint64_t, double, std::uint64_t, std::uint64_t,
                            double, double>;

SliceKey KeyOf(const NetworkSlice& s) {
  return {s.ue_count, s.per_ue_request_rate, s.file_size_bytes,
          s.catalog_size_files, s.zipf_exponent, s.delay_requirement_s};
}

class CountSearch {
 public:
  explicit CountSearch(const AdmissionModel& model) : model_(model) {
    std::map<SliceKey, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < model.size(); ++i) {
      groups[KeyOf(model.slice(i))].push_back(i);
    }
    for (auto& [key, members] : groups) {
      std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        return model.slice(a).slice_id < model.slice(b).slice_id;
      });
      classes_.push_back({members, model.LowerBound(members.front()),
                          AggregateDemand(model.slice(members.front()))});
    }
    std::sort(classes_.begin(), classes_.end(), [&](const Class& a, const Class& b) {
      if (a.demand != b.demand) return a.demand < b.demand;
      return model.slice(a.members.front()).slice_id <
             model.slice(b.members.front()).slice_id;
    });
    suffix_.assign(classes_.size() + 1, 0);
    for (std::size_t c = classes_.size(); c-- > 0;) {
      suffix_[c] = suffix_[c + 1] + classes_[c].members.size();
    }
  }

  AdmissionPlan Run() {
    std::vector<std::size_t> chosen;
    Visit(0, chosen, 0.0);
    return SelectBest(std::move(candidates_));
  }

 private:
  struct Class {
    std::vector<std::size_t> members;
    double lower_bound;
    double demand;
  };

  void Visit(std::size_t c, std::vector<std::size_t>& chosen, double bound) {
    if (chosen.size() + suffix_[c] < best_size_) return;
    if (c == classes_.size()) {
      auto plan = model_.Feasible(chosen);
      if (!plan) return;
      if (chosen.size() > best_size_) {
        best_size_ = chosen.size();
        candidates_.clear();
      }
      candidates_.push_back(std::move(*plan));
      return;
    }
    const auto& cls = classes_[c];
    const double bandwidth = model_.problem().satellite.bandwidth_bps;
    for (std::size_t k = cls.members.size() + 1; k-- > 0;) {
      if (chosen.size() + k + suffix_[c + 1] < best_size_) break;
      const double extended = k == 0 ? bound : bound + static_cast<double>(k) * cls.lower_bound;
      if (extended > bandwidth) continue;
      chosen.insert(chosen.end(), cls.members.begin(), cls.members.begin() + k);
      Visit(c + 1, chosen, extended);
      chosen.resize(chosen.size() - k);
    }
  }

  const AdmissionModel& model_;
  std::vector<Class> classes_;
  std::vector<std::size_t> suffix_;
  std::size_t best_size_ = 0;
  std::vector<AdmissionPlan> candidates_;
};

}  // namespace

void Validate(const AdmissionProblem& problem) {
  std::set<std::string> ids;
  for (const auto& slice : problem.slices) {
    Validate(slice);
    if (!ids.insert(slice.slice_id).second) {
      throw Error(ErrorCode::kInvariantViolation, "slice_id");
    }
  }
  Validate(problem.satellite);
  if (!std::isfinite(problem.cache_budget_bytes) || problem.cache_budget_bytes < 0.0) {
    throw Error(ErrorCode::kInvariantViolation, "cache_budget_bytes");
  }
  if (!std::isfinite(problem.cached_hit_delay_s) || problem.cached_hit_delay_s < 0.0 ||
      problem.cached_hit_delay_s > problem.satellite.round_trip_delay_s) {
    throw Error(ErrorCode::kInvariantViolation, "cached_hit_delay_s");
  }
}

double HitRatio(double cache_bytes, const NetworkSlice& slice) {
  const std::uint64_t files = CachedFiles(cache_bytes, slice);
  if (files == 0) return 0.0;
  if (files >= slice.catalog_size_files) return 1.0;
  return ZipfPopularity(slice.catalog_size_files, slice.zipf_exponent).TopMass(files);
}

RequestDelay PerRequestDelay(const NetworkSlice& slice, double cache_bytes,
                             double rate_bps, const SatelliteProfile& satellite,
                             double cached_hit_delay_s) {
  const double hit = HitRatio(cache_bytes, slice);
  RequestDelay delay;
  delay.hit_s = cached_hit_delay_s;
  if (hit >= 1.0) {
    delay.miss_s = rate_bps > 0.0
                       ? satellite.round_trip_delay_s + FileBits(slice) / rate_bps
                       : kInfinity;
    delay.mean_s = cached_hit_delay_s;
    return delay;
  }
  if (!(rate_bps > 0.0)) {
    throw Error(ErrorCode::kUndefinedDelay, slice.slice_id);
  }
  delay.miss_s = satellite.round_trip_delay_s + FileBits(slice) / rate_bps;
  delay.mean_s = hit * cached_hit_delay_s + (1.0 - hit) * delay.miss_s;
  return delay;
}

bool IsServed(const NetworkSlice& slice, double cache_bytes, double rate_bps,
              const SatelliteProfile& satellite, double cached_hit_delay_s) {
  return ServedAtHit(slice, HitRatio(cache_bytes, slice), rate_bps, satellite,
                     cached_hit_delay_s);
}

double MinimumServingRate(const NetworkSlice& slice, std::uint64_t cached_files,
                          const SatelliteProfile& satellite,
                          double cached_hit_delay_s) {
  const double hit =
      ZipfPopularity(slice.catalog_size_files, slice.zipf_exponent).TopMass(cached_files);
  return MinimumRateAtHit(slice, hit, satellite, cached_hit_delay_s);
}

std::optional<AdmissionPlan> SubsetFeasible(std::span<const std::size_t> subset,
                                            const AdmissionProblem& problem) {
  AdmissionModel model(problem);
  std::set<std::size_t> seen;
  for (std::size_t i : subset) {
    if (i >= problem.slices.size() || !seen.insert(i).second) {
      throw Error(ErrorCode::kInvalidArgument, "subset index");
    }
  }
  return model.Feasible(subset);
}

AdmissionPlan Solve(const AdmissionProblem& problem) {
  AdmissionModel model(problem);
  return CountSearch(model).Run();
}

AdmissionPlan SolveBruteForce(const AdmissionProblem& problem) {
  const std::size_t n = problem.slices.size();
  if (n > kBruteForceMaxSlices) {
    throw Error(ErrorCode::kProblemTooLarge, std::to_string(n) + " slices");
  }
  AdmissionModel model(problem);
  const std::uint32_t limit = 1u << n;
  for (std::size_t size = n; size > 0; --size) {
    std::vector<AdmissionPlan> feasible;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) subset.push_back(i);
      }
      if (auto plan = model.Feasible(subset)) feasible.push_back(std::move(*plan));
    }
    if (!feasible.empty()) return SelectBest(std::move(feasible));
  }
  return {};
}

}  // namespace aerofed
