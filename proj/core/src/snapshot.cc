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

#include "pcnhijack/snapshot.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace pcnhijack {
namespace {

using nlohmann::json;

std::int64_t ReadInt(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      throw ParseError(path, "integer out of range");
    }
    return static_cast<std::int64_t>(u);
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) {
      return out;
    }
  }
  throw ParseError(path, "expected an integer or decimal string");
}

std::string ReadString(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw ParseError(path, "expected a string");
}

const json& Require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key, "missing field");
  return *it;
}

ChannelPolicy ReadPolicy(const json& obj, const char* key,
                         const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return ChannelPolicy::Disabled();
  const std::string p = path + "." + key;
  if (!it->is_object()) throw ParseError(p, "expected an object or null");
  ChannelPolicy policy;
  auto field = [&](const char* name) -> std::int64_t {
    auto f = it->find(name);
    if (f == it->end() || f->is_null()) return 0;
    const std::int64_t v = ReadInt(*f, p + "." + name);
    if (v < 0) throw ParseError(p + "." + name, "must be non-negative");
    return v;
  };
  policy.base_fee = field("fee_base_msat");
  policy.prop_fee_ppm = field("fee_rate_milli_msat");
  policy.delay = field("time_lock_delta");
  if (auto d = it->find("disabled"); d != it->end() && !d->is_null()) {
    if (!d->is_boolean()) throw ParseError(p + ".disabled", "expected a boolean");
    policy.enabled = !d->get<bool>();
  }
  return policy;
}

json PolicyJson(const ChannelPolicy& p) {
  if (p == ChannelPolicy::Disabled()) return nullptr;
  return json{{"time_lock_delta", p.delay},
              {"fee_base_msat", std::to_string(p.base_fee)},
              {"fee_rate_milli_msat", std::to_string(p.prop_fee_ppm)},
              {"disabled", !p.enabled}};
}

}  // namespace

ChannelGraph ParseSnapshot(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("$", e.what());
  }
  if (!doc.is_object()) throw ParseError("$", "expected a JSON object");
  const json& nodes = Require(doc, "nodes", "$");
  const json& edges = Require(doc, "edges", "$");
  if (!nodes.is_array()) throw ParseError("nodes", "expected an array");
  if (!edges.is_array()) throw ParseError("edges", "expected an array");

  ChannelGraph::Builder builder;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "nodes[" + std::to_string(i) + "]";
    if (!nodes[i].is_object()) throw ParseError(path, "expected an object");
    builder.AddNode(
        ReadString(Require(nodes[i], "pub_key", path), path + ".pub_key"));
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_object()) throw ParseError(path, "expected an object");
    std::string id =
        ReadString(Require(e, "channel_id", path), path + ".channel_id");
    const std::string a =
        ReadString(Require(e, "node1_pub", path), path + ".node1_pub");
    const std::string b =
        ReadString(Require(e, "node2_pub", path), path + ".node2_pub");
    Msat capacity = 0;
    if (auto c = e.find("capacity_msat"); c != e.end()) {
      capacity = ReadInt(*c, path + ".capacity_msat");
    } else {
      const std::int64_t sat =
          ReadInt(Require(e, "capacity", path), path + ".capacity");
      if (sat > std::numeric_limits<Msat>::max() / 1000) {
        throw ParseError(path + ".capacity", "capacity out of range");
      }
      capacity = sat * 1000;
    }
    Blocks height = DecodeShortChannelHeight(id).value_or(0);
    if (auto h = e.find("height"); h != e.end()) {
      height = ReadInt(*h, path + ".height");
    }
    const ChannelPolicy p1 = ReadPolicy(e, "node1_policy", path);
    const ChannelPolicy p2 = ReadPolicy(e, "node2_policy", path);
    if (!builder.HasNode(a) || !builder.HasNode(b)) {
      throw GraphError(path + ": channel " + id + " references unknown node " +
                       (builder.HasNode(a) ? b : a));
    }
    try {
      builder.AddChannel(std::move(id), a, b, capacity, height, p1, p2);
    } catch (const GraphError& err) {
      throw GraphError(path + ": " + err.what());
    }
  }
  return std::move(builder).Build();
}

ChannelGraph LoadSnapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read snapshot " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseSnapshot(buffer.str());
}

std::string SerializeSnapshot(const ChannelGraph& graph) {
  json nodes = json::array();
  for (const std::string& id : graph.node_ids()) {
    nodes.push_back(json{{"pub_key", id}});
  }
  json edges = json::array();
  for (const Channel& c : graph.channels()) {
    edges.push_back(json{
        {"channel_id", c.id},
        {"node1_pub", graph.node_id(c.a)},
        {"node2_pub", graph.node_id(c.b)},
        {"capacity", std::to_string(c.capacity / 1000)},
        {"capacity_msat", std::to_string(c.capacity)},
        {"height", c.height},
        {"node1_policy", PolicyJson(c.a_to_b)},
        {"node2_policy", PolicyJson(c.b_to_a)},
    });
  }
  json doc{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  return doc.dump(2) + "\n";
}

}  // namespace pcnhijack
