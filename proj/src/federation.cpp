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

#include "aerofed/federation.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "aerofed/error.hpp"
#include "aerofed/optimizer.hpp"
#include "json.hpp"

namespace aerofed {
namespace {

// Minimum spacing between consecutive log records in simulated time.
constexpr double kEventTick = 1e-6;

std::string FormatNumber(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

bool Allowed(RequestState from, RequestState to) {
  switch (from) {
    case RequestState::kReceived: return to == RequestState::kAvailabilityChecked;
    case RequestState::kAvailabilityChecked:
      return to == RequestState::kOptimizing || to == RequestState::kRejected;
    case RequestState::kOptimizing: return to == RequestState::kAllocated;
    case RequestState::kAllocated:
    case RequestState::kRejected: return to == RequestState::kResponded;
    case RequestState::kResponded: return false;
  }
  return false;
}

}  // namespace

std::string_view ToString(Block block) {
  switch (block) {
    case Block::kApplicationProcessor: return "ApplicationProcessor";
    case Block::kResourceDistributor: return "ResourceDistributor";
    case Block::kCatalog: return "Catalog";
    case Block::kSdnController: return "SDNController";
    case Block::kNegotiator: return "Negotiator";
  }
  return "ApplicationProcessor";
}

std::string_view ToString(RequestState state) {
  switch (state) {
    case RequestState::kReceived: return "Received";
    case RequestState::kAvailabilityChecked: return "AvailabilityChecked";
    case RequestState::kOptimizing: return "Optimizing";
    case RequestState::kAllocated: return "Allocated";
    case RequestState::kRejected: return "Rejected";
    case RequestState::kResponded: return "Responded";
  }
  return "Received";
}

FederationEngine::FederationEngine(std::unique_ptr<AcquisitionStrategy> strategy,
                                   EngineConfig config)
    : strategy_(std::move(strategy)), config_(config) {
  if (!strategy_) throw Error(ErrorCode::kInvalidArgument, "strategy");
}

void FederationEngine::AdvanceClock(double time_s) { clock_s_ = std::max(clock_s_, time_s); }

void FederationEngine::Log(Block block, std::string event, const std::string& subject) {
  double time = clock_s_;
  if (!log_.empty()) time = std::max(time, log_.back().time_s + kEventTick);
  clock_s_ = time;
  log_.push_back({time, block, std::move(event), subject});
}

void FederationEngine::Transition(RequestLifecycle& lifecycle, RequestState next) {
  if (!Allowed(lifecycle.state, next)) {
    throw std::logic_error("illegal request transition " +
                           std::string(ToString(lifecycle.state)) + " -> " +
                           std::string(ToString(next)));
  }
  lifecycle.state = next;
  lifecycle.timestamps[next] = clock_s_;
}

bool FederationEngine::SubmitOffer(const ProviderOffer& offer) {
  if (offer_ids_.contains(offer.offer_id)) {
    throw Error(ErrorCode::kDuplicateOffer, offer.offer_id);
  }
  Validate(offer);
  offer_ids_.insert(offer.offer_id);
  Log(Block::kNegotiator, "offer.received", offer.offer_id);
  const ProviderOffer batch[] = {offer};
  const auto outcome = Negotiate(batch, *strategy_, catalog_);
  const bool accepted = !outcome.accepted.empty();
  Log(Block::kNegotiator, accepted ? "offer.accepted" : "offer.declined", offer.offer_id);
  if (accepted) Log(Block::kCatalog, "deposit", offer.offer_id);
  return accepted;
}

FederationDecision FederationEngine::HandleRequest(const FederationRequest& request) {
  try {
    Validate(request);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedRequest, e.detail());
  }
  if (auto it = requests_.find(request.request_id);
      it != requests_.end() && it->second.reservation_id && !it->second.released) {
    throw Error(ErrorCode::kMalformedRequest, "request_id in use: " + request.request_id);
  }
  const std::string& id = request.request_id;
  RequestLifecycle lifecycle;
  lifecycle.request_id = id;

  Log(Block::kApplicationProcessor, "received", id);
  lifecycle.timestamps[RequestState::kReceived] = clock_s_;

  // Gross demand: everything fetched over the satellite, every catalog cached.
  double gross_rate = 0.0;
  double gross_storage = 0.0;
  for (const auto& slice : request.slices) {
    gross_rate += AggregateDemand(slice);
    gross_storage += slice.catalog_bytes();
  }
  const ResourceDemand link_query{ResourceKind::kCommunication, gross_rate,
                                  config_.satellite_link};
  const ResourceDemand storage_query{ResourceKind::kStorage, gross_storage, std::nullopt};
  Log(Block::kResourceDistributor, "availability.query", id);
  const Availability link = catalog_.CheckAvailability(link_query);
  const Availability storage = catalog_.CheckAvailability(storage_query);
  Log(Block::kCatalog,
      "availability.reply link_free_bps=" + FormatNumber(link.free_capacity) +
          " storage_free_bytes=" + FormatNumber(storage.free_capacity),
      id);
  Transition(lifecycle, RequestState::kAvailabilityChecked);

  FederationDecision decision;
  if (link.free_capacity <= 0.0 && storage.free_capacity <= 0.0) {
    const Error failure(ErrorCode::kInsufficientResources,
                        "no free " + std::string(ToString(config_.satellite_link)) +
                            " bandwidth for " + FormatNumber(gross_rate) +
                            " bps and no free storage for " +
                            FormatNumber(gross_storage) + " bytes");
    Transition(lifecycle, RequestState::kRejected);
    lifecycle.rejection_reason = failure.what();
    Log(Block::kApplicationProcessor, "decision.rejected", id);
    Transition(lifecycle, RequestState::kResponded);
    decision = RejectedDecision(id, *lifecycle.rejection_reason);
  } else {
    Transition(lifecycle, RequestState::kOptimizing);
    AdmissionProblem problem;
    problem.slices = request.slices;
    problem.satellite.round_trip_delay_s =
        2.0 * catalog_.MaxOneWayDelay(config_.satellite_link);
    problem.satellite.bandwidth_bps = link.free_capacity;
    problem.cache_budget_bytes = storage.free_capacity;
    problem.cached_hit_delay_s =
        std::min(config_.cached_hit_delay_s, problem.satellite.round_trip_delay_s);
    AdmissionPlan plan = Solve(problem);
    Log(Block::kSdnController, "optimized objective=" + std::to_string(plan.objective()), id);

    Log(Block::kResourceDistributor, "distribute", id);
    const ResourceDemand demands[] = {
        {ResourceKind::kStorage, static_cast<double>(plan.total_cache_bytes()), std::nullopt},
        {ResourceKind::kCommunication, plan.total_rate_bps(), config_.satellite_link}};
    lifecycle.reservation_id = catalog_.Reserve(id, demands);
    Log(Block::kCatalog, "reserved " + *lifecycle.reservation_id, id);
    Transition(lifecycle, RequestState::kAllocated);
    Log(Block::kApplicationProcessor, "decision.allocated", id);
    Transition(lifecycle, RequestState::kResponded);
    decision = AllocatedDecision(id, plan);
    lifecycle.plan = std::move(plan);
  }
  requests_.insert_or_assign(id, std::move(lifecycle));
  return decision;
}

void FederationEngine::ReleaseRequest(std::string_view request_id) {
  auto it = requests_.find(request_id);
  if (it == requests_.end()) {
    throw Error(ErrorCode::kUnknownRequest, std::string(request_id));
  }
  auto& lifecycle = it->second;
  if (!lifecycle.reservation_id || lifecycle.released) {
    throw Error(ErrorCode::kNotAllocated, std::string(request_id));
  }
  Log(Block::kResourceDistributor, "release", lifecycle.request_id);
  catalog_.Release(*lifecycle.reservation_id);
  Log(Block::kCatalog, "released " + *lifecycle.reservation_id, lifecycle.request_id);
  lifecycle.released = true;
}

const RequestLifecycle& FederationEngine::lifecycle(std::string_view request_id) const {
  auto it = requests_.find(request_id);
  if (it == requests_.end()) {
    throw Error(ErrorCode::kUnknownRequest, std::string(request_id));
  }
  return it->second;
}

std::string FederationEngine::ExportEventLog() const {
  std::string out;
  for (const auto& record : log_) {
    const nlohmann::json line = {{"time_s", record.time_s},
                                 {"block", ToString(record.block)},
                                 {"event", record.event},
                                 {"subject", record.subject}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace aerofed
