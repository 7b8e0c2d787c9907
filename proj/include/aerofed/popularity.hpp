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

#ifndef AEROFED_POPULARITY_HPP_
#define AEROFED_POPULARITY_HPP_

#include <cstdint>
#include <vector>

namespace aerofed {

// Zipf content popularity over a catalog of `catalog_size` files ranked by
// popularity: file i (1-based) is requested with probability
// i^-alpha / sum_j j^-alpha. alpha == 0 is the uniform catalog and keeps no
// table.
class ZipfPopularity {
 public:
  ZipfPopularity(std::uint64_t catalog_size, double exponent);

  std::uint64_t catalog_size() const { return catalog_size_; }
  double exponent() const { return exponent_; }

  // Probability of the file with 1-based rank `rank`.
  double Probability(std::uint64_t rank) const;

  // Total probability of the `files` most popular files. Exactly 0 for 0
  // files and exactly 1 for the whole catalog.
  double TopMass(std::uint64_t files) const;

  // Inverse-CDF draw: maps u in [0, 1) to a 0-based file rank.
  std::uint64_t Sample(double u) const;

 private:
  std::uint64_t catalog_size_;
  double exponent_;
  std::vector<double> cumulative_;  // cumulative_[m] = TopMass(m); empty if uniform
};

}  // namespace aerofed

#endif  // AEROFED_POPULARITY_HPP_
