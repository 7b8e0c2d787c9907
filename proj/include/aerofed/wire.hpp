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

// JSON documents exchanged on the northbound (applications) and southbound
// (providers) APIs, plus scenario and report documents.
//
// Parsing is strict: unknown fields are rejected and every unit is spelled
// out in the field name. Emission is canonical: keys sorted, no whitespace,
// numbers in shortest round-trip form.

#ifndef AEROFED_WIRE_HPP_
#define AEROFED_WIRE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aerofed/catalog.hpp"
#include "aerofed/domain.hpp"
#include "aerofed/error.hpp"
#include "aerofed/sim.hpp"

namespace aerofed {

inline constexpr std::string_view kSchemaVersion = "aerofed/1";

struct FederationRequest {
  std::string request_id;
  std::vector<NetworkSlice> slices;

  bool operator==(const FederationRequest&) const = default;
};

// Throws kInvariantViolation for an empty request_id, an invalid slice or a
// repeated slice_id.
void Validate(const FederationRequest& request);

struct ServedSlice {
  std::string slice_id;
  std::uint64_t cache_bytes = 0;
  double satellite_rate_bps = 0.0;

  bool operator==(const ServedSlice&) const = default;
};

enum class DecisionStatus { kAllocated, kRejected };

// Allocated decisions carry objective == served.size(); rejected ones carry
// no served slices and a reason.
struct FederationDecision {
  std::string request_id;
  DecisionStatus status = DecisionStatus::kAllocated;
  std::vector<ServedSlice> served;
  std::optional<std::string> rejection_reason;

  int objective() const { return static_cast<int>(served.size()); }
  bool operator==(const FederationDecision&) const = default;
};

FederationDecision AllocatedDecision(std::string request_id, const AdmissionPlan& plan);
FederationDecision RejectedDecision(std::string request_id, std::string reason);

struct OfferAck {
  std::string offer_id;
  bool accepted = false;

  bool operator==(const OfferAck&) const = default;
};

using InboundDocument = std::variant<ProviderOffer, FederationRequest>;

// All parsers throw DocumentError: kMalformedDocument (with byte offset) for
// bad JSON, kUnsupportedVersion, or kInvariantViolation naming the field.
FederationRequest ParseRequest(std::string_view text);
FederationDecision ParseDecision(std::string_view text);
ProviderOffer ParseOffer(std::string_view text);
OfferAck ParseOfferAck(std::string_view text);
ScenarioSpec ParseScenario(std::string_view text);
// An offer (has "offer_id") or a request (has "request_id").
InboundDocument ParseInbound(std::string_view text);

std::string Emit(const FederationRequest& request);
std::string Emit(const FederationDecision& decision);
std::string Emit(const ProviderOffer& offer);
std::string Emit(const OfferAck& ack);
std::string Emit(const ScenarioSpec& scenario);
std::string Emit(const SimMetrics& metrics);
std::string EmitCatalog(const ResourceCatalog& catalog);
std::string EmitError(const Error& error);

}  // namespace aerofed

#endif  // AEROFED_WIRE_HPP_
