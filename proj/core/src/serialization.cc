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

#include "pcnhijack/serialization.h"

#include "json.hpp"
#include "pcnhijack/snapshot.h"

namespace pcnhijack {
namespace {

using nlohmann::json;

json PolicyJson(const ChannelPolicy& p) {
  return {{"fee_base_msat", p.base_fee},
          {"fee_rate_milli_msat", p.prop_fee_ppm},
          {"time_lock_delta", p.delay},
          {"disabled", !p.enabled}};
}

template <typename T>
T Field(const json& object, const char* key, const std::string& path) {
  if (!object.is_object() || !object.contains(key)) {
    throw ParseError(path + "." + key, "missing field");
  }
  try {
    return object.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(path + "." + key, e.what());
  }
}

}  // namespace

std::string RouteToJson(const ChannelGraph& graph, const Route& route) {
  json hops = json::array();
  for (const Hop& h : route.hops) {
    hops.push_back({{"channel_id", graph.channel(h.channel).id},
                    {"from", graph.node_id(h.from)},
                    {"to", graph.node_id(h.to)},
                    {"forwarded_amount", h.forwarded_amount},
                    {"fee", h.fee},
                    {"weight", h.weight}});
  }
  const json out = {{"source", graph.node_id(route.source)},
                    {"target", graph.node_id(route.target)},
                    {"amount", route.amount},
                    {"hops", hops},
                    {"total_fee", route.total_fee},
                    {"total_weight", route.total_weight},
                    {"total_delay", route.total_delay}};
  return out.dump(2) + "\n";
}

std::string PlanToJson(const AttackPlan& plan) {
  json steps = json::array();
  for (const AttackStep& s : plan.steps) {
    steps.push_back({{"peer", s.peer},
                     {"policy", PolicyJson(s.policy)},
                     {"capacity", s.capacity},
                     {"oracle_gain", s.oracle_gain},
                     {"hijacked", s.outcome.hijacked},
                     {"routable", s.outcome.routable},
                     {"newly_routable", s.outcome.newly_routable},
                     {"hijack_fraction", s.outcome.fraction}});
  }
  const json out = {{"attacker", plan.attacker},
                    {"policy", PolicyJson(plan.policy)},
                    {"capacity", plan.capacity},
                    {"amount", plan.amount},
                    {"routing_policy", plan.routing_policy},
                    {"steps", steps}};
  return out.dump(2) + "\n";
}

AttackPlan PlanFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("$", e.what());
  }
  const auto policy = [](const json& v, const std::string& path) {
    ChannelPolicy p;
    p.base_fee = Field<Msat>(v, "fee_base_msat", path);
    p.prop_fee_ppm = Field<std::int64_t>(v, "fee_rate_milli_msat", path);
    p.delay = Field<Blocks>(v, "time_lock_delta", path);
    p.enabled = !Field<bool>(v, "disabled", path);
    return p;
  };
  AttackPlan plan;
  plan.attacker = Field<std::string>(doc, "attacker", "$");
  plan.policy = policy(Field<json>(doc, "policy", "$"), "$.policy");
  plan.capacity = Field<Msat>(doc, "capacity", "$");
  plan.amount = Field<Msat>(doc, "amount", "$");
  plan.routing_policy = Field<std::string>(doc, "routing_policy", "$");
  const json steps = Field<json>(doc, "steps", "$");
  if (!steps.is_array()) throw ParseError("$.steps", "expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string path = "$.steps[" + std::to_string(i) + "]";
    const json& s = steps[i];
    AttackStep step;
    step.peer = Field<std::string>(s, "peer", path);
    step.policy = policy(Field<json>(s, "policy", path), path + ".policy");
    step.capacity = Field<Msat>(s, "capacity", path);
    step.oracle_gain = Field<std::size_t>(s, "oracle_gain", path);
    step.outcome.hijacked = Field<std::size_t>(s, "hijacked", path);
    step.outcome.routable = Field<std::size_t>(s, "routable", path);
    step.outcome.newly_routable = Field<std::size_t>(s, "newly_routable", path);
    step.outcome.fraction = Field<double>(s, "hijack_fraction", path);
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

}  // namespace pcnhijack
