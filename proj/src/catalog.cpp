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

#include "aerofed/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "aerofed/error.hpp"

namespace aerofed {
namespace {

std::string DescribeDemand(std::size_t index, const ResourceDemand& demand,
                           double free_capacity) {
  std::string text = "demand " + std::to_string(index) + " (" +
                     std::string(ToString(demand.kind));
  if (demand.link_class) text += " " + std::string(ToString(*demand.link_class));
  char numbers[96];
  std::snprintf(numbers, sizeof(numbers), " %.17g requested, %.17g free)",
                demand.amount, free_capacity);
  return text + numbers;
}

}  // namespace

double CatalogEntry::free_capacity() const {
  return std::max(0.0, acquired_capacity - reserved_capacity);
}

bool ResourceCatalog::Matches(const CatalogEntry& entry, ResourceKind kind,
                              std::optional<LinkClass> link_class) {
  if (entry.resource.kind != kind) return false;
  if (!link_class) return true;
  return entry.resource.link && entry.resource.link->link_class == *link_class;
}

void ResourceCatalog::Recount(CatalogEntry& entry) {
  double total = 0.0;
  for (const auto& [id, share] : entry.reservations) total += share.amount;
  entry.reserved_capacity = std::min(total, entry.acquired_capacity);
}

std::vector<std::string> ResourceCatalog::Deposit(const ProviderOffer& offer) {
  Validate(offer);
  for (const auto& resource : offer.resources) {
    if (entries_.contains(resource.resource_id)) {
      throw Error(ErrorCode::kDuplicateResource, resource.resource_id);
    }
  }
  std::vector<std::string> ids;
  for (const auto& resource : offer.resources) {
    CatalogEntry entry;
    entry.resource = resource;
    entry.acquired_capacity = resource.capacity;
    entries_.emplace(resource.resource_id, std::move(entry));
    ids.push_back(resource.resource_id);
  }
  return ids;
}

Availability ResourceCatalog::CheckAvailability(const ResourceDemand& query) const {
  if (!std::isfinite(query.amount) || query.amount < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "amount");
  }
  double free_capacity = 0.0;
  for (const auto& [id, entry] : entries_) {
    if (Matches(entry, query.kind, query.link_class)) free_capacity += entry.free_capacity();
  }
  return {free_capacity >= query.amount, free_capacity};
}

std::string ResourceCatalog::Reserve(std::string_view holder_id,
                                     std::span<const ResourceDemand> demands) {
  // Plan against a scratch copy of free capacities; commit only if every
  // demand fits.
  std::map<std::string, double> scratch;
  for (const auto& [id, entry] : entries_) scratch[id] = entry.free_capacity();

  std::vector<std::pair<std::string, double>> shares;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& demand = demands[i];
    if (!std::isfinite(demand.amount) || demand.amount < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "amount");
    }
    double free_capacity = 0.0;
    for (const auto& [id, entry] : entries_) {
      if (Matches(entry, demand.kind, demand.link_class)) free_capacity += scratch[id];
    }
    if (demand.amount > free_capacity) {
      throw Error(ErrorCode::kInsufficientResources,
                  DescribeDemand(i, demand, free_capacity));
    }
    double remaining = demand.amount;
    for (const auto& [id, entry] : entries_) {
      if (remaining <= 0.0) break;
      if (!Matches(entry, demand.kind, demand.link_class) || scratch[id] <= 0.0) continue;
      const double take = std::min(remaining, scratch[id]);
      scratch[id] -= take;
      remaining -= take;
      shares.emplace_back(id, take);
    }
    // Summation order can leave a rounding residue when the demand equals
    // the free total exactly.
    if (remaining > 0.0 && !shares.empty()) shares.back().second += remaining;
  }

  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "rsv-%06llu",
                static_cast<unsigned long long>(next_reservation_++));
  std::string reservation_id(buffer);
  Reservation reservation{std::string(holder_id), {}};
  for (const auto& [resource_id, amount] : shares) {
    auto& entry = entries_.at(resource_id);
    auto& share = entry.reservations[reservation_id];
    share.holder_id = reservation.holder_id;
    share.kind = entry.resource.kind;
    share.amount += amount;
    Recount(entry);
    reservation.shares.emplace_back(resource_id, amount);
  }
  reservations_.emplace(reservation_id, std::move(reservation));
  return reservation_id;
}

void ResourceCatalog::Release(std::string_view reservation_id) {
  auto it = reservations_.find(std::string(reservation_id));
  if (it == reservations_.end()) {
    throw Error(ErrorCode::kUnknownReservation, std::string(reservation_id));
  }
  for (const auto& [resource_id, amount] : it->second.shares) {
    auto& entry = entries_.at(resource_id);
    entry.reservations.erase(it->first);
    Recount(entry);
  }
  reservations_.erase(it);
}

bool ResourceCatalog::HasReservation(std::string_view reservation_id) const {
  return reservations_.contains(std::string(reservation_id));
}

std::vector<std::string> ResourceCatalog::ReservationIds() const {
  std::vector<std::string> ids;
  for (const auto& [id, reservation] : reservations_) ids.push_back(id);
  return ids;
}

double ResourceCatalog::AcquiredCapacity(ResourceKind kind,
                                         std::optional<LinkClass> link_class) const {
  double total = 0.0;
  for (const auto& [id, entry] : entries_) {
    if (Matches(entry, kind, link_class)) total += entry.acquired_capacity;
  }
  return total;
}

double ResourceCatalog::ReservedCapacity(ResourceKind kind,
                                         std::optional<LinkClass> link_class) const {
  double total = 0.0;
  for (const auto& [id, entry] : entries_) {
    if (Matches(entry, kind, link_class)) total += entry.reserved_capacity;
  }
  return total;
}

double ResourceCatalog::MaxOneWayDelay(LinkClass link_class) const {
  double delay = 0.0;
  for (const auto& [id, entry] : entries_) {
    if (Matches(entry, ResourceKind::kCommunication, link_class)) {
      delay = std::max(delay, entry.resource.link->one_way_propagation_delay_s);
    }
  }
  return delay;
}

}  // namespace aerofed
