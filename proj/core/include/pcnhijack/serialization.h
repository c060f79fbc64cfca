// Copyright 2026 The pcnhijack Authors
//
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

// JSON forms of routes and attack plans.

#ifndef PCNHIJACK_SERIALIZATION_H_
#define PCNHIJACK_SERIALIZATION_H_

#include <string>
#include <string_view>

#include "pcnhijack/attack.h"
#include "pcnhijack/routing.h"

namespace pcnhijack {

// {"source", "target", "amount", "hops": [{"channel_id", "from", "to",
// "forwarded_amount", "fee", "weight"}], "total_fee", "total_weight",
// "total_delay"}.
std::string RouteToJson(const ChannelGraph& graph, const Route& route);

// {"attacker", "policy", "capacity", "amount", "routing_policy",
// "steps": [{"peer", "oracle_gain", "hijacked", "routable",
// "newly_routable", "hijack_fraction"}]}.
std::string PlanToJson(const AttackPlan& plan);

// Inverse of PlanToJson. Throws ParseError on malformed input.
AttackPlan PlanFromJson(std::string_view json);

}  // namespace pcnhijack

#endif  // PCNHIJACK_SERIALIZATION_H_
