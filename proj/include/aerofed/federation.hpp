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

// The orchestration engine. Offers arrive on the southbound side and pass
// through the negotiator into the catalog. Requests arrive on the northbound
// side and follow a fixed path:
//
//   ApplicationProcessor -> ResourceDistributor -> Catalog (availability)
//     -> SdnController (optimize) -> ResourceDistributor -> Catalog (reserve)
//     -> ApplicationProcessor (decision)
//
// A request is rejected right after the availability step only when the
// catalog holds neither free satellite bandwidth nor free storage.
// Requests are handled one at a time, in arrival order.

#ifndef AEROFED_FEDERATION_HPP_
#define AEROFED_FEDERATION_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aerofed/catalog.hpp"
#include "aerofed/domain.hpp"
#include "aerofed/negotiator.hpp"
#include "aerofed/wire.hpp"

namespace aerofed {

enum class Block {
  kApplicationProcessor,
  kResourceDistributor,
  kCatalog,
  kSdnController,
  kNegotiator,
};

std::string_view ToString(Block block);

enum class RequestState {
  kReceived,
  kAvailabilityChecked,
  kOptimizing,
  kAllocated,
  kRejected,
  kResponded,
};

std::string_view ToString(RequestState state);

struct LogRecord {
  double time_s = 0.0;
  Block block = Block::kApplicationProcessor;
  std::string event;
  std::string subject;  // request or offer id
};

struct RequestLifecycle {
  std::string request_id;
  RequestState state = RequestState::kReceived;
  std::map<RequestState, double> timestamps;
  std::optional<AdmissionPlan> plan;
  std::optional<std::string> rejection_reason;
  std::optional<std::string> reservation_id;
  bool released = false;
};

struct EngineConfig {
  // Links of this class form the satellite backhaul pool.
  LinkClass satellite_link = LinkClass::kSA2G;
  double cached_hit_delay_s = 0.0;
};

class FederationEngine {
 public:
  explicit FederationEngine(std::unique_ptr<AcquisitionStrategy> strategy,
                            EngineConfig config = {});

  // Southbound. Returns whether the negotiator acquired the offer. Throws
  // kDuplicateOffer for an offer id seen before.
  bool SubmitOffer(const ProviderOffer& offer);

  // Northbound. Throws kMalformedRequest for invalid requests or a request id
  // that still holds an allocation.
  FederationDecision HandleRequest(const FederationRequest& request);

  // Throws kUnknownRequest or kNotAllocated.
  void ReleaseRequest(std::string_view request_id);

  // Simulated time; events are stamped no earlier than this.
  void AdvanceClock(double time_s);

  const ResourceCatalog& catalog() const { return catalog_; }
  const std::vector<LogRecord>& event_log() const { return log_; }
  const RequestLifecycle& lifecycle(std::string_view request_id) const;
  const AcquisitionStrategy& strategy() const { return *strategy_; }

  // One canonical JSON record per line.
  std::string ExportEventLog() const;

 private:
  void Log(Block block, std::string event, const std::string& subject);
  void Transition(RequestLifecycle& lifecycle, RequestState next);

  std::unique_ptr<AcquisitionStrategy> strategy_;
  EngineConfig config_;
  ResourceCatalog catalog_;
  std::set<std::string> offer_ids_;
  std::map<std::string, RequestLifecycle, std::less<>> requests_;
  std::vector<LogRecord> log_;
  double clock_s_ = 0.0;
};

}  // namespace aerofed

#endif  // AEROFED_FEDERATION_HPP_
