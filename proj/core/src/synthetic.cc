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

#include "pcnhijack/synthetic.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "pcnhijack/random.h"

namespace pcnhijack {
namespace {

constexpr std::array<std::int64_t, 6> kOtherPropFees = {1, 10, 100, 500, 2000, 5000};
constexpr std::array<Blocks, 6> kOtherDelays = {14, 40, 72, 288, 1008, 2016};

ChannelPolicy SamplePolicy(const PolicySampler& s, Rng& rng) {
  ChannelPolicy p;
  const double base_roll = UniformReal(rng);
  if (base_roll < s.zero_base_fraction) {
    p.base_fee = 0;
  } else if (base_roll < s.zero_base_fraction + s.default_fraction) {
    p.base_fee = s.default_base_fee;
  } else {
    // Log-uniform in [1, 10000] msat.
    p.base_fee = static_cast<Msat>(std::exp(UniformReal(rng) * std::log(10000.0)));
  }
  const double prop_roll = UniformReal(rng);
  if (prop_roll < s.zero_prop_fraction) {
    p.prop_fee_ppm = 0;
  } else if (prop_roll < s.zero_prop_fraction + s.default_fraction) {
    p.prop_fee_ppm = s.default_prop_fee_ppm;
  } else {
    p.prop_fee_ppm = kOtherPropFees[UniformIndex(rng, kOtherPropFees.size())];
  }
  if (UniformReal(rng) < s.default_delay_fraction) {
    p.delay = s.default_delay;
  } else {
    p.delay = kOtherDelays[UniformIndex(rng, kOtherDelays.size())];
  }
  return p;
}

Msat SampleCapacity(const PolicySampler& s, Rng& rng) {
  if (UniformReal(rng) < s.full_coin_fraction) return Msat{100'000'000} * 1000;
  const double lo = std::log(static_cast<double>(s.min_capacity_sat));
  const double hi = std::log(static_cast<double>(s.max_capacity_sat));
  const auto sat =
      static_cast<std::int64_t>(std::exp(lo + UniformReal(rng) * (hi - lo)));
  return std::max<std::int64_t>(sat, 1) * 1000;
}

double ParseDouble(std::string_view key, std::string_view value) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidSpecError("synthetic spec: bad value for " + std::string(key));
  }
  return out;
}

std::int64_t ParseInt(std::string_view key, std::string_view value) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidSpecError("synthetic spec: bad value for " + std::string(key));
  }
  return out;
}

}  // namespace

ChannelGraph GenerateSynthetic(const SyntheticSpec& spec) {
  if (spec.node_count < 2) {
    throw InvalidSpecError("synthetic graph needs at least 2 nodes");
  }
  if (spec.attachment < 1) {
    throw InvalidSpecError("attachment parameter must be at least 1");
  }
  Rng rng(spec.seed);
  const PolicySampler& s = spec.sampler;

  ChannelGraph::Builder builder;
  for (std::size_t i = 0; i < spec.node_count; ++i) {
    builder.AddNode(std::to_string(i));
  }

  std::vector<NodeIndex> endpoints;  // node i appears deg(i) times
  std::uint32_t tx = 0;
  auto add_channel = [&](NodeIndex a, NodeIndex b) {
    const Blocks height =
        s.current_height -
        static_cast<Blocks>(UniformIndex(rng, static_cast<std::uint64_t>(s.height_span) + 1));
    const Msat capacity = SampleCapacity(s, rng);
    const ChannelPolicy pa = SamplePolicy(s, rng);
    const ChannelPolicy pb = SamplePolicy(s, rng);
    builder.AddChannel(Channel{EncodeShortChannelId(height, tx++, 0), a, b,
                               capacity, height, pa, pb});
    endpoints.push_back(a);
    endpoints.push_back(b);
  };

  const std::size_t seed_size = std::min(spec.attachment + 1, spec.node_count);
  for (NodeIndex i = 0; i < seed_size; ++i) {
    for (NodeIndex j = i + 1; j < seed_size; ++j) add_channel(i, j);
  }
  for (NodeIndex v = static_cast<NodeIndex>(seed_size); v < spec.node_count; ++v) {
    std::vector<NodeIndex> targets;
    const std::size_t want = std::min<std::size_t>(spec.attachment, v);
    while (targets.size() < want) {
      const NodeIndex u = endpoints[UniformIndex(rng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), u) == targets.end()) {
        targets.push_back(u);
      }
    }
    for (NodeIndex u : targets) add_channel(v, u);
  }
  return std::move(builder).Build();
}

SyntheticSpec ParseSyntheticSpec(std::string_view text) {
  SyntheticSpec spec;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidSpecError("synthetic spec: expected key=value, got '" +
                             std::string(item) + "'");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    PolicySampler& s = spec.sampler;
    if (key == "nodes") {
      spec.node_count = static_cast<std::size_t>(std::max<std::int64_t>(0, ParseInt(key, value)));
    } else if (key == "m") {
      spec.attachment = static_cast<std::size_t>(std::max<std::int64_t>(0, ParseInt(key, value)));
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(ParseInt(key, value));
    } else if (key == "base_fee") {
      s.default_base_fee = ParseInt(key, value);
    } else if (key == "prop_fee") {
      s.default_prop_fee_ppm = ParseInt(key, value);
    } else if (key == "delay") {
      s.default_delay = ParseInt(key, value);
    } else if (key == "default_fraction") {
      s.default_fraction = ParseDouble(key, value);
    } else if (key == "delay_fraction") {
      s.default_delay_fraction = ParseDouble(key, value);
    } else if (key == "zero_base") {
      s.zero_base_fraction = ParseDouble(key, value);
    } else if (key == "zero_prop") {
      s.zero_prop_fraction = ParseDouble(key, value);
    } else if (key == "height") {
      s.current_height = ParseInt(key, value);
    } else {
      throw InvalidSpecError("synthetic spec: unknown key '" + std::string(key) + "'");
    }
  }
  return spec;
}

std::string FormatSyntheticSpec(const SyntheticSpec& spec) {
  const PolicySampler& s = spec.sampler;
  std::ostringstream out;
  out << "nodes=" << spec.node_count << ",m=" << spec.attachment
      << ",seed=" << spec.seed << ",base_fee=" << s.default_base_fee
      << ",prop_fee=" << s.default_prop_fee_ppm << ",delay=" << s.default_delay
      << ",default_fraction=" << s.default_fraction
      << ",delay_fraction=" << s.default_delay_fraction
      << ",zero_base=" << s.zero_base_fraction
      << ",zero_prop=" << s.zero_prop_fraction
      << ",height=" << s.current_height;
  return out.str();
}

}  // namespace pcnhijack
