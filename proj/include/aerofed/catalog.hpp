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

// The resource catalog: every capacity the federation has acquired, and the
// reservations held against it. Quantities are divisible; storage is one
// fungible pool and links are pooled per link class.

#ifndef AEROFED_CATALOG_HPP_
#define AEROFED_CATALOG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aerofed/domain.hpp"

namespace aerofed {

// What a caller needs: `amount` of `kind`, optionally restricted to links of
// one class.
struct ResourceDemand {
  ResourceKind kind = ResourceKind::kStorage;
  double amount = 0.0;
  std::optional<LinkClass> link_class;
};

struct Availability {
  bool available = false;
  double free_capacity = 0.0;
};

struct ReservationShare {
  std::string holder_id;
  double amount = 0.0;
  ResourceKind kind = ResourceKind::kStorage;
};

struct CatalogEntry {
  ResourceDescriptor resource;
  double acquired_capacity = 0.0;
  double reserved_capacity = 0.0;  // always the sum of `reservations`
  std::map<std::string, ReservationShare> reservations;

  double free_capacity() const;
};

class ResourceCatalog {
 public:
  // Adds every resource of a valid offer. All-or-nothing; throws
  // kDuplicateResource if any id is already present.
  std::vector<std::string> Deposit(const ProviderOffer& offer);

  Availability CheckAvailability(const ResourceDemand& query) const;

  // Reserves all demands under one new reservation id, or throws
  // kInsufficientResources naming the first demand that cannot be met and
  // leaves the catalog untouched.
  std::string Reserve(std::string_view holder_id,
                      std::span<const ResourceDemand> demands);

  // Throws kUnknownReservation for ids never issued or already released.
  void Release(std::string_view reservation_id);

  const std::map<std::string, CatalogEntry>& entries() const { return entries_; }
  bool HasReservation(std::string_view reservation_id) const;
  std::vector<std::string> ReservationIds() const;

  double AcquiredCapacity(ResourceKind kind,
                          std::optional<LinkClass> link_class = std::nullopt) const;
  double ReservedCapacity(ResourceKind kind,
                          std::optional<LinkClass> link_class = std::nullopt) const;

  // Largest one-way propagation delay over links of `link_class`; 0 if none.
  double MaxOneWayDelay(LinkClass link_class) const;

 private:
  struct Reservation {
    std::string holder_id;
    std::vector<std::pair<std::string, double>> shares;  // resource_id, amount
  };

  static bool Matches(const CatalogEntry& entry, ResourceKind kind,
                      std::optional<LinkClass> link_class);
  static void Recount(CatalogEntry& entry);

  std::map<std::string, CatalogEntry> entries_;
  std::map<std::string, Reservation> reservations_;
  std::uint64_t next_reservation_ = 1;
};

}  // namespace aerofed

#endif  // AEROFED_CATALOG_HPP_
