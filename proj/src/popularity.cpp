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

#include "aerofed/popularity.hpp"

#include <algorithm>
#include <cmath>

#include "aerofed/error.hpp"

namespace aerofed {

ZipfPopularity::ZipfPopularity(std::uint64_t catalog_size, double exponent)
    : catalog_size_(catalog_size), exponent_(exponent) {
  if (catalog_size == 0 || !std::isfinite(exponent) || exponent < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "zipf catalog/exponent");
  }
  if (exponent == 0.0) return;
  std::vector<long double> partial(catalog_size + 1, 0.0L);
  for (std::uint64_t i = 1; i <= catalog_size; ++i) {
    partial[i] = partial[i - 1] +
                 std::pow(static_cast<long double>(i),
                          -static_cast<long double>(exponent));
  }
  const long double norm = partial[catalog_size];
  cumulative_.resize(catalog_size + 1);
  for (std::uint64_t i = 0; i <= catalog_size; ++i) {
    cumulative_[i] = static_cast<double>(partial[i] / norm);
  }
  cumulative_[catalog_size] = 1.0;
}

double ZipfPopularity::Probability(std::uint64_t rank) const {
  if (rank == 0 || rank > catalog_size_) return 0.0;
  if (cumulative_.empty()) return 1.0 / static_cast<double>(catalog_size_);
  return cumulative_[rank] - cumulative_[rank - 1];
}

double ZipfPopularity::TopMass(std::uint64_t files) const {
  if (files >= catalog_size_) return 1.0;
  if (cumulative_.empty()) {
    return static_cast<double>(files) / static_cast<double>(catalog_size_);
  }
  return cumulative_[files];
}

std::uint64_t ZipfPopularity::Sample(double u) const {
  if (cumulative_.empty()) {
    auto rank = static_cast<std::uint64_t>(u * static_cast<double>(catalog_size_));
    return std::min(rank, catalog_size_ - 1);
  }
  // First m with cumulative_[m] > u; the drawn rank is m - 1.
  auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), u);
  if (it == cumulative_.end()) return catalog_size_ - 1;
  return static_cast<std::uint64_t>(it - cumulative_.begin()) - 1;
}

}  // namespace aerofed
