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

#include "aerofed/domain.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "aerofed/error.hpp"

namespace aerofed {

std::string_view ToString(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::kProcessing: return "processing";
    case ResourceKind::kStorage: return "storage";
    case ResourceKind::kCommunication: return "communication";
  }
  return "storage";
}

std::string_view ToString(LinkClass link_class) {
  switch (link_class) {
    case LinkClass::kIAL: return "IAL";
    case LinkClass::kISL: return "ISL";
    case LinkClass::kDA2G: return "DA2G";
    case LinkClass::kSA2G: return "SA2G";
  }
  return "SA2G";
}

std::optional<ResourceKind> ParseResourceKind(std::string_view text) {
  for (auto kind : {ResourceKind::kProcessing, ResourceKind::kStorage,
                    ResourceKind::kCommunication}) {
    if (ToString(kind) == text) return kind;
  }
  return std::nullopt;
}

std::optional<LinkClass> ParseLinkClass(std::string_view text) {
  for (auto link_class : {LinkClass::kIAL, LinkClass::kISL, LinkClass::kDA2G,
                          LinkClass::kSA2G}) {
    if (ToString(link_class) == text) return link_class;
  }
  return std::nullopt;
}

namespace {

void Require(bool condition, const char* field) {
  if (!condition) throw Error(ErrorCode::kInvariantViolation, field);
}

bool NonNegativeFinite(double value) {
  return std::isfinite(value) && value >= 0.0;
}

}  // namespace

void Validate(const ResourceDescriptor& resource) {
  Require(!resource.resource_id.empty(), "resource_id");
  Require(NonNegativeFinite(resource.capacity), "capacity");
  const bool is_link = resource.kind == ResourceKind::kCommunication;
  Require(is_link == resource.link.has_value(), "link_class");
  if (resource.link) {
    Require(NonNegativeFinite(resource.link->one_way_propagation_delay_s),
            "one_way_propagation_delay_s");
  }
}

void Validate(const ProviderOffer& offer) {
  Require(!offer.offer_id.empty(), "offer_id");
  Require(!offer.provider_id.empty(), "provider_id");
  Require(!offer.resources.empty(), "resources");
  Require(NonNegativeFinite(offer.price), "price");
  std::set<std::string> ids;
  for (const auto& resource : offer.resources) {
    Validate(resource);
    Require(resource.provider_id == offer.provider_id, "provider_id");
    Require(ids.insert(resource.resource_id).second, "resource_id");
  }
}

void Validate(const NetworkSlice& slice) {
  Require(!slice.slice_id.empty(), "slice_id");
  Require(slice.ue_count > 0, "ue_count");
  Require(NonNegativeFinite(slice.per_ue_request_rate),
          "per_ue_request_rate_files_per_s");
  Require(slice.file_size_bytes > 0, "file_size_bytes");
  Require(slice.catalog_size_files > 0, "catalog_size_files");
  Require(NonNegativeFinite(slice.zipf_exponent), "zipf_exponent");
  Require(std::isfinite(slice.delay_requirement_s) &&
              slice.delay_requirement_s > 0.0,
          "delay_requirement_s");
  Require(std::isfinite(AggregateDemand(slice)),
          "per_ue_request_rate_files_per_s");
}

double AggregateDemand(const NetworkSlice& slice) {
  return static_cast<double>(slice.ue_count) * slice.per_ue_request_rate *
         static_cast<double>(slice.file_size_bytes) * 8.0;
}

void Validate(const SatelliteProfile& satellite) {
  Require(NonNegativeFinite(satellite.round_trip_delay_s), "round_trip_delay_s");
  Require(NonNegativeFinite(satellite.bandwidth_bps), "bandwidth_bps");
}

std::uint64_t AdmissionPlan::total_cache_bytes() const {
  std::uint64_t total = 0;
  for (const auto& [id, bytes] : cache_alloc) total += bytes;
  return total;
}

double AdmissionPlan::total_rate_bps() const {
  double total = 0.0;
  for (const auto& [id, rate] : rate_alloc) total += rate;
  return total;
}

}  // namespace aerofed
