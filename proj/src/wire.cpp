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

#include "aerofed/wire.hpp"

#include <set>
#include <utility>

#include "json.hpp"

namespace aerofed {
namespace {

using json = nlohmann::json;

[[noreturn]] void Violation(const std::string& field) {
  throw DocumentError(ErrorCode::kInvariantViolation, field);
}

// Strict accessor over one JSON object: every field read is remembered and
// Finish() rejects whatever was not read.
class Fields {
 public:
  Fields(const json& object, const char* context) : object_(object) {
    if (!object.is_object()) Violation(context);
  }

  const json& Required(const char* key) {
    auto it = object_.find(key);
    if (it == object_.end()) Violation(key);
    used_.insert(key);
    return *it;
  }

  const json* Optional(const char* key) {
    auto it = object_.find(key);
    if (it == object_.end()) return nullptr;
    used_.insert(key);
    return &*it;
  }

  std::string String(const char* key) { return AsString(Required(key), key); }
  double Number(const char* key) { return AsNumber(Required(key), key); }
  std::uint64_t Unsigned(const char* key) { return AsUnsigned(Required(key), key); }

  const json& Array(const char* key) {
    const json& value = Required(key);
    if (!value.is_array()) Violation(key);
    return value;
  }

  void Finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!used_.contains(key)) Violation(key);
    }
  }

  static std::string AsString(const json& value, const char* key) {
    if (!value.is_string()) Violation(key);
    return value.get<std::string>();
  }

  static double AsNumber(const json& value, const char* key) {
    if (!value.is_number()) Violation(key);
    return value.get<double>();
  }

  static std::uint64_t AsUnsigned(const json& value, const char* key) {
    if (!value.is_number_unsigned()) Violation(key);
    return value.get<std::uint64_t>();
  }

 private:
  const json& object_;
  std::set<std::string> used_;
};

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // The library counts bytes from 1; documents report the 0-based offset.
    throw DocumentError(ErrorCode::kMalformedDocument, e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

json ParseObject(std::string_view text) {
  json document = ParseJson(text);
  if (!document.is_object()) {
    throw DocumentError(ErrorCode::kMalformedDocument, "top level must be an object", 0);
  }
  return document;
}

void CheckVersion(Fields& fields) {
  const std::string version = fields.String("schema_version");
  if (version != kSchemaVersion) {
    throw DocumentError(ErrorCode::kUnsupportedVersion, version);
  }
}

// Domain validation errors surface as document errors with the same code.
template <typename T>
void Checked(const T& value) {
  try {
    Validate(value);
  } catch (const DocumentError&) {
    throw;
  } catch (const Error& e) {
    throw DocumentError(e.code(), e.detail());
  }
}

std::string Dump(const json& document) {
  return document.dump(-1, ' ', false, json::error_handler_t::replace);
}

json SliceToJson(const NetworkSlice& s) {
  return {{"slice_id", s.slice_id},
          {"ue_count", s.ue_count},
          {"per_ue_request_rate_files_per_s", s.per_ue_request_rate},
          {"file_size_bytes", s.file_size_bytes},
          {"catalog_size_files", s.catalog_size_files},
          {"zipf_exponent", s.zipf_exponent},
          {"delay_requirement_s", s.delay_requirement_s}};
}

NetworkSlice SliceFromJson(const json& value) {
  Fields fields(value, "slices");
  NetworkSlice s;
  s.slice_id = fields.String("slice_id");
  s.ue_count = fields.Unsigned("ue_count");
  s.per_ue_request_rate = fields.Number("per_ue_request_rate_files_per_s");
  s.file_size_bytes = fields.Unsigned("file_size_bytes");
  s.catalog_size_files = fields.Unsigned("catalog_size_files");
  s.zipf_exponent = fields.Number("zipf_exponent");
  s.delay_requirement_s = fields.Number("delay_requirement_s");
  fields.Finish();
  Checked(s);
  return s;
}

std::vector<NetworkSlice> SlicesFromJson(const json& array) {
  std::vector<NetworkSlice> slices;
  for (const auto& item : array) slices.push_back(SliceFromJson(item));
  return slices;
}

json SlicesToJson(const std::vector<NetworkSlice>& slices) {
  json array = json::array();
  for (const auto& s : slices) array.push_back(SliceToJson(s));
  return array;
}

json ResourceToJson(const ResourceDescriptor& r) {
  json value = {{"resource_id", r.resource_id},
                {"kind", ToString(r.kind)},
                {"capacity", r.capacity}};
  if (r.link) {
    value["link_class"] = ToString(r.link->link_class);
    value["one_way_propagation_delay_s"] = r.link->one_way_propagation_delay_s;
  }
  return value;
}

ResourceDescriptor ResourceFromJson(const json& value, const std::string& provider_id) {
  Fields fields(value, "resources");
  ResourceDescriptor r;
  r.resource_id = fields.String("resource_id");
  r.provider_id = provider_id;
  auto kind = ParseResourceKind(fields.String("kind"));
  if (!kind) Violation("kind");
  r.kind = *kind;
  r.capacity = fields.Number("capacity");
  const json* link_class = fields.Optional("link_class");
  const json* delay = fields.Optional("one_way_propagation_delay_s");
  if (link_class != nullptr) {
    auto parsed = ParseLinkClass(Fields::AsString(*link_class, "link_class"));
    if (!parsed) Violation("link_class");
    r.link = LinkProfile{*parsed, 0.0};
    if (delay == nullptr) Violation("one_way_propagation_delay_s");
    r.link->one_way_propagation_delay_s =
        Fields::AsNumber(*delay, "one_way_propagation_delay_s");
  } else if (delay != nullptr) {
    Violation("one_way_propagation_delay_s");
  }
  fields.Finish();
  return r;
}

ProviderOffer OfferFromJson(const json& document) {
  Fields fields(document, "offer");
  CheckVersion(fields);
  ProviderOffer offer;
  offer.offer_id = fields.String("offer_id");
  offer.provider_id = fields.String("provider_id");
  offer.price = fields.Number("price");
  for (const auto& item : fields.Array("resources")) {
    offer.resources.push_back(ResourceFromJson(item, offer.provider_id));
  }
  fields.Finish();
  Checked(offer);
  return offer;
}

FederationRequest RequestFromJson(const json& document) {
  Fields fields(document, "request");
  CheckVersion(fields);
  FederationRequest request;
  request.request_id = fields.String("request_id");
  request.slices = SlicesFromJson(fields.Array("slices"));
  fields.Finish();
  Checked(request);
  return request;
}

std::string_view ToString(DecisionStatus status) {
  return status == DecisionStatus::kAllocated ? "allocated" : "rejected";
}

}  // namespace

void Validate(const FederationRequest& request) {
  if (request.request_id.empty()) throw Error(ErrorCode::kInvariantViolation, "request_id");
  std::set<std::string> ids;
  for (const auto& slice : request.slices) {
    Validate(slice);
    if (!ids.insert(slice.slice_id).second) {
      throw Error(ErrorCode::kInvariantViolation, "slice_id");
    }
  }
}

FederationDecision AllocatedDecision(std::string request_id, const AdmissionPlan& plan) {
  FederationDecision decision;
  decision.request_id = std::move(request_id);
  decision.status = DecisionStatus::kAllocated;
  for (const auto& id : plan.served) {
    decision.served.push_back({id, plan.cache_alloc.at(id), plan.rate_alloc.at(id)});
  }
  return decision;
}

FederationDecision RejectedDecision(std::string request_id, std::string reason) {
  FederationDecision decision;
  decision.request_id = std::move(request_id);
  decision.status = DecisionStatus::kRejected;
  decision.rejection_reason = std::move(reason);
  return decision;
}

FederationRequest ParseRequest(std::string_view text) {
  return RequestFromJson(ParseObject(text));
}

ProviderOffer ParseOffer(std::string_view text) { return OfferFromJson(ParseObject(text)); }

InboundDocument ParseInbound(std::string_view text) {
  const json document = ParseObject(text);
  if (document.contains("offer_id")) return OfferFromJson(document);
  if (document.contains("request_id")) return RequestFromJson(document);
  Violation("document type");
}

FederationDecision ParseDecision(std::string_view text) {
  const json document = ParseObject(text);
  Fields fields(document, "decision");
  CheckVersion(fields);
  FederationDecision decision;
  decision.request_id = fields.String("request_id");
  if (decision.request_id.empty()) Violation("request_id");
  const std::string status = fields.String("status");
  if (status == "allocated") {
    decision.status = DecisionStatus::kAllocated;
  } else if (status == "rejected") {
    decision.status = DecisionStatus::kRejected;
  } else {
    Violation("status");
  }
  const json* objective = fields.Optional("objective");
  for (const auto& item : fields.Array("served")) {
    Fields served(item, "served");
    ServedSlice slice;
    slice.slice_id = served.String("slice_id");
    slice.cache_bytes = served.Unsigned("cache_bytes");
    slice.satellite_rate_bps = served.Number("satellite_rate_bps");
    served.Finish();
    if (slice.slice_id.empty()) Violation("slice_id");
    if (!(slice.satellite_rate_bps >= 0.0)) Violation("satellite_rate_bps");
    decision.served.push_back(std::move(slice));
  }
  if (const json* reason = fields.Optional("rejection_reason")) {
    decision.rejection_reason = Fields::AsString(*reason, "rejection_reason");
  }
  fields.Finish();
  if (decision.status == DecisionStatus::kAllocated) {
    if (objective == nullptr || !objective->is_number_unsigned() ||
        objective->get<std::uint64_t>() != decision.served.size()) {
      Violation("objective");
    }
    if (decision.rejection_reason) Violation("rejection_reason");
  } else {
    if (objective != nullptr) Violation("objective");
    if (!decision.served.empty()) Violation("served");
    if (!decision.rejection_reason) Violation("rejection_reason");
  }
  return decision;
}

OfferAck ParseOfferAck(std::string_view text) {
  const json document = ParseObject(text);
  Fields fields(document, "ack");
  CheckVersion(fields);
  OfferAck ack;
  ack.offer_id = fields.String("offer_id");
  const std::string status = fields.String("status");
  if (status != "accepted" && status != "declined") Violation("status");
  ack.accepted = status == "accepted";
  fields.Finish();
  return ack;
}

ScenarioSpec ParseScenario(std::string_view text) {
  const json document = ParseObject(text);
  Fields fields(document, "scenario");
  CheckVersion(fields);
  ScenarioSpec scenario;
  scenario.seed = fields.Unsigned("seed");
  scenario.duration_s = fields.Number("duration_s");
  {
    Fields satellite(fields.Required("satellite"), "satellite");
    scenario.satellite.round_trip_delay_s = satellite.Number("round_trip_delay_s");
    scenario.satellite.bandwidth_bps = satellite.Number("bandwidth_bps");
    satellite.Finish();
  }
  scenario.cache_budget_bytes = fields.Unsigned("cache_budget_bytes");
  if (const json* hit_delay = fields.Optional("cached_hit_delay_s")) {
    scenario.cached_hit_delay_s = Fields::AsNumber(*hit_delay, "cached_hit_delay_s");
  }
  scenario.slices = SlicesFromJson(fields.Array("slices"));
  const std::string arrival = fields.String("arrival_process");
  if (arrival == "deterministic") {
    scenario.arrival_process = ArrivalProcess::kDeterministic;
  } else if (arrival == "poisson") {
    scenario.arrival_process = ArrivalProcess::kPoisson;
  } else {
    Violation("arrival_process");
  }
  if (const json* sweep = fields.Optional("sweep_cache_budget_bytes")) {
    if (!sweep->is_array()) Violation("sweep_cache_budget_bytes");
    for (const auto& value : *sweep) {
      scenario.sweep_cache_budget_bytes.push_back(
          Fields::AsUnsigned(value, "sweep_cache_budget_bytes"));
    }
  }
  fields.Finish();
  Checked(scenario);
  return scenario;
}

std::string Emit(const FederationRequest& request) {
  return Dump({{"schema_version", kSchemaVersion},
               {"request_id", request.request_id},
               {"slices", SlicesToJson(request.slices)}});
}

std::string Emit(const FederationDecision& decision) {
  json served = json::array();
  for (const auto& s : decision.served) {
    served.push_back({{"slice_id", s.slice_id},
                      {"cache_bytes", s.cache_bytes},
                      {"satellite_rate_bps", s.satellite_rate_bps}});
  }
  json document = {{"schema_version", kSchemaVersion},
                   {"request_id", decision.request_id},
                   {"status", ToString(decision.status)},
                   {"served", served}};
  if (decision.status == DecisionStatus::kAllocated) {
    document["objective"] = decision.served.size();
  }
  if (decision.rejection_reason) document["rejection_reason"] = *decision.rejection_reason;
  return Dump(document);
}

std::string Emit(const ProviderOffer& offer) {
  json resources = json::array();
  for (const auto& r : offer.resources) resources.push_back(ResourceToJson(r));
  return Dump({{"schema_version", kSchemaVersion},
               {"offer_id", offer.offer_id},
               {"provider_id", offer.provider_id},
               {"price", offer.price},
               {"resources", resources}});
}

std::string Emit(const OfferAck& ack) {
  return Dump({{"schema_version", kSchemaVersion},
               {"offer_id", ack.offer_id},
               {"status", ack.accepted ? "accepted" : "declined"}});
}

std::string Emit(const ScenarioSpec& scenario) {
  json document = {
      {"schema_version", kSchemaVersion},
      {"seed", scenario.seed},
      {"duration_s", scenario.duration_s},
      {"satellite",
       {{"round_trip_delay_s", scenario.satellite.round_trip_delay_s},
        {"bandwidth_bps", scenario.satellite.bandwidth_bps}}},
      {"cache_budget_bytes", scenario.cache_budget_bytes},
      {"cached_hit_delay_s", scenario.cached_hit_delay_s},
      {"slices", SlicesToJson(scenario.slices)},
      {"arrival_process", ToString(scenario.arrival_process)}};
  if (!scenario.sweep_cache_budget_bytes.empty()) {
    document["sweep_cache_budget_bytes"] = scenario.sweep_cache_budget_bytes;
  }
  return Dump(document);
}

std::string Emit(const SimMetrics& metrics) {
  json slices = json::array();
  for (const auto& s : metrics.slices) {
    slices.push_back({{"slice_id", s.slice_id},
                      {"admitted", s.admitted},
                      {"offered_requests", s.offered_requests},
                      {"hits", s.hits},
                      {"misses", s.misses},
                      {"mean_delay_s", s.mean_delay_s},
                      {"peak_satellite_rate_bps", s.peak_satellite_rate_bps}});
  }
  return Dump({{"schema_version", kSchemaVersion},
               {"rng_algorithm", metrics.rng_algorithm},
               {"analytical_objective", metrics.analytical_objective},
               {"served_slice_count", metrics.served_slice_count},
               {"mean_delay_s", metrics.mean_delay_s},
               {"satellite_utilization", metrics.satellite_utilization},
               {"peak_satellite_rate_bps", metrics.peak_satellite_rate_bps},
               {"slices", slices}});
}

std::string EmitCatalog(const ResourceCatalog& catalog) {
  json entries = json::array();
  for (const auto& [id, entry] : catalog.entries()) {
    json value = ResourceToJson(entry.resource);
    value.erase("capacity");
    value["provider_id"] = entry.resource.provider_id;
    value["acquired_capacity"] = entry.acquired_capacity;
    value["reserved_capacity"] = entry.reserved_capacity;
    value["free_capacity"] = entry.free_capacity();
    json reservations = json::array();
    for (const auto& [reservation_id, share] : entry.reservations) {
      reservations.push_back({{"reservation_id", reservation_id},
                              {"holder_id", share.holder_id},
                              {"amount", share.amount}});
    }
    value["reservations"] = reservations;
    entries.push_back(value);
  }
  return Dump({{"schema_version", kSchemaVersion}, {"entries", entries}});
}

std::string EmitError(const Error& error) {
  json document = {{"schema_version", kSchemaVersion},
                   {"status", "error"},
                   {"error", ErrorCodeName(error.code())},
                   {"detail", error.detail()}};
  if (const auto* doc_error = dynamic_cast<const DocumentError*>(&error);
      doc_error != nullptr && error.code() == ErrorCode::kMalformedDocument) {
    document["byte_offset"] = doc_error->byte_offset();
  }
  return Dump(document);
}

}  // namespace aerofed
