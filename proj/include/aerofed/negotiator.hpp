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

#ifndef AEROFED_NEGOTIATOR_HPP_
#define AEROFED_NEGOTIATOR_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aerofed/catalog.hpp"
#include "aerofed/domain.hpp"

namespace aerofed {

// Cross-kind valuation used to rank mixed offers: value = sum of
// capacity * weight over the offer's resources.
struct ValueWeights {
  double processing = 1.0;     // per compute unit
  double storage = 1.0;        // per byte
  double communication = 1.0;  // per bit/s

  double Value(const ProviderOffer& offer) const;
};

// Decides which offers to acquire. Must be deterministic in its inputs.
class AcquisitionStrategy {
 public:
  virtual ~AcquisitionStrategy() = default;
  virtual std::string_view name() const = 0;
  // Indices into `offers`, in acceptance order.
  virtual std::vector<std::size_t> Select(std::span<const ProviderOffer> offers,
                                          const ResourceCatalog& catalog) const = 0;
};

class AcceptAll final : public AcquisitionStrategy {
 public:
  std::string_view name() const override { return "accept-all"; }
  std::vector<std::size_t> Select(std::span<const ProviderOffer> offers,
                                  const ResourceCatalog& catalog) const override;
};

// Ranks offers by value per unit price (descending, ties by offer_id) and
// accepts them in that order while the running total stays within budget.
// Free offers rank first.
class BudgetGreedy final : public AcquisitionStrategy {
 public:
  explicit BudgetGreedy(double budget, ValueWeights weights = {});

  std::string_view name() const override { return "budget-greedy"; }
  double budget() const { return budget_; }
  std::vector<std::size_t> Select(std::span<const ProviderOffer> offers,
                                  const ResourceCatalog& catalog) const override;

 private:
  double budget_;
  ValueWeights weights_;
};

struct NegotiationOutcome {
  std::vector<std::string> accepted;  // offer ids
  double total_price = 0.0;
};

// Runs `strategy` over take-it-or-leave-it offers and deposits the accepted
// ones into `catalog`. Offer ids must be unique (kInvalidArgument otherwise).
NegotiationOutcome Negotiate(std::span<const ProviderOffer> offers,
                             const AcquisitionStrategy& strategy,
                             ResourceCatalog& catalog);

}  // namespace aerofed

#endif  // AEROFED_NEGOTIATOR_HPP_
