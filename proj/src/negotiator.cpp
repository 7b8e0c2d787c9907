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

#include "aerofed/negotiator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "aerofed/error.hpp"

namespace aerofed {

double ValueWeights::Value(const ProviderOffer& offer) const {
  double value = 0.0;
  for (const auto& resource : offer.resources) {
    switch (resource.kind) {
      case ResourceKind::kProcessing: value += resource.capacity * processing; break;
      case ResourceKind::kStorage: value += resource.capacity * storage; break;
      case ResourceKind::kCommunication: value += resource.capacity * communication; break;
    }
  }
  return value;
}

std::vector<std::size_t> AcceptAll::Select(std::span<const ProviderOffer> offers,
                                           const ResourceCatalog&) const {
  std::vector<std::size_t> all(offers.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

BudgetGreedy::BudgetGreedy(double budget, ValueWeights weights)
    : budget_(budget), weights_(weights) {
  if (!std::isfinite(budget) || budget < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "budget");
  }
}

std::vector<std::size_t> BudgetGreedy::Select(std::span<const ProviderOffer> offers,
                                              const ResourceCatalog&) const {
  std::vector<double> ratio(offers.size());
  for (std::size_t i = 0; i < offers.size(); ++i) {
    const double value = weights_.Value(offers[i]);
    ratio[i] = offers[i].price > 0.0 ? value / offers[i].price
                                     : std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> order(offers.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ratio[a] != ratio[b]) return ratio[a] > ratio[b];
    return offers[a].offer_id < offers[b].offer_id;
  });
  std::vector<std::size_t> accepted;
  double spent = 0.0;
  for (std::size_t i : order) {
    if (spent + offers[i].price > budget_) break;
    spent += offers[i].price;
    accepted.push_back(i);
  }
  return accepted;
}

NegotiationOutcome Negotiate(std::span<const ProviderOffer> offers,
                             const AcquisitionStrategy& strategy,
                             ResourceCatalog& catalog) {
  std::set<std::string> offer_ids;
  for (const auto& offer : offers) {
    Validate(offer);
    if (!offer_ids.insert(offer.offer_id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate offer_id " + offer.offer_id);
    }
  }
  const auto selected = strategy.Select(offers, catalog);

  // Reject the whole batch before touching the catalog if any accepted
  // resource id would collide.
  std::set<std::string> resource_ids;
  for (std::size_t i : selected) {
    for (const auto& resource : offers[i].resources) {
      if (catalog.entries().contains(resource.resource_id) ||
          !resource_ids.insert(resource.resource_id).second) {
        throw Error(ErrorCode::kDuplicateResource, resource.resource_id);
      }
    }
  }

  NegotiationOutcome outcome;
  for (std::size_t i : selected) {
    catalog.Deposit(offers[i]);
    outcome.accepted.push_back(offers[i].offer_id);
    outcome.total_price += offers[i].price;
  }
  return outcome;
}

}  // namespace aerofed
