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

// Core vocabulary: resources offered by providers, network slices, and the
// admission plans that map slices onto cache and satellite capacity.
//
// Units are fixed throughout the library: storage in bytes, bandwidth in
// bits/s, time in seconds. MB/GB/Mbps are decimal (10^6, 10^9, 10^6).

#ifndef AEROFED_DOMAIN_HPP_
#define AEROFED_DOMAIN_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aerofed {

inline constexpr double kMegabyte = 1e6;
inline constexpr double kGigabyte = 1e9;
inline constexpr double kMegabitPerSecond = 1e6;

enum class ResourceKind { kProcessing, kStorage, kCommunication };

// Inter-aerial, inter-satellite, direct air-to-ground, satellite-to-gateway.
enum class LinkClass { kIAL, kISL, kDA2G, kSA2G };

std::string_view ToString(ResourceKind kind);
std::string_view ToString(LinkClass link_class);
std::optional<ResourceKind> ParseResourceKind(std::string_view text);
std::optional<LinkClass> ParseLinkClass(std::string_view text);

struct LinkProfile {
  LinkClass link_class = LinkClass::kSA2G;
  double one_way_propagation_delay_s = 0.0;

  bool operator==(const LinkProfile&) const = default;
};

// Capacity is compute units for processing, bytes for storage and bits/s
// for communication. `link` is present iff kind == kCommunication.
struct ResourceDescriptor {
  std::string resource_id;
  std::string provider_id;
  ResourceKind kind = ResourceKind::kStorage;
  double capacity = 0.0;
  std::optional<LinkProfile> link;

  bool operator==(const ResourceDescriptor&) const = default;
};

// Throws Error(kInvariantViolation) naming the offending field.
void Validate(const ResourceDescriptor& resource);

struct ProviderOffer {
  std::string offer_id;
  std::string provider_id;
  std::vector<ResourceDescriptor> resources;
  double price = 0.0;

  bool operator==(const ProviderOffer&) const = default;
};

void Validate(const ProviderOffer& offer);

// A group of UEs with identical traffic and one delay requirement.
struct NetworkSlice {
  std::string slice_id;
  std::uint64_t ue_count = 1;
  double per_ue_request_rate = 0.0;  // files/s
  std::uint64_t file_size_bytes = 1;
  std::uint64_t catalog_size_files = 1;
  double zipf_exponent = 0.0;
  double delay_requirement_s = 1.0;

  double catalog_bytes() const {
    return static_cast<double>(catalog_size_files) *
           static_cast<double>(file_size_bytes);
  }

  bool operator==(const NetworkSlice&) const = default;
};

void Validate(const NetworkSlice& slice);

// Offered load of the whole slice in bits/s: U * lambda * S * 8.
double AggregateDemand(const NetworkSlice& slice);

struct SatelliteProfile {
  double round_trip_delay_s = 0.0;
  double bandwidth_bps = 0.0;

  bool operator==(const SatelliteProfile&) const = default;
};

void Validate(const SatelliteProfile& satellite);

// Served slices with the allocations that certify them. Both maps are keyed
// by every served slice id (zero entries included).
struct AdmissionPlan {
  std::vector<std::string> served;  // sorted ascending
  std::map<std::string, std::uint64_t> cache_alloc;
  std::map<std::string, double> rate_alloc;

  int objective() const { return static_cast<int>(served.size()); }
  std::uint64_t total_cache_bytes() const;
  double total_rate_bps() const;

  bool operator==(const AdmissionPlan&) const = default;
};

}  // namespace aerofed

#endif  // AEROFED_DOMAIN_HPP_
