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

#include "pcnhijack/weights.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcnhijack/random.h"

namespace pcnhijack {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

__extension__ typedef __int128 Wide;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckNonNegative(double v, const char* what) {
  if (!(v >= 0)) {
    throw InvalidPolicyError(std::string(what) + " must be non-negative");
  }
}

void CheckBounds(const Normalization& n, const char* what) {
  if (!(n.lower < n.upper)) {
    throw InvalidPolicyError(std::string(what) + " bounds need lower < upper");
  }
}

Blocks ChannelAge(const Channel& channel, Blocks current_height) {
  return std::max<Blocks>(0, current_height - channel.height);
}

}  // namespace

double Normalization::Apply(double x) const {
  const double t = std::clamp((x - lower) / (upper - lower), 0.0, 1.0);
  return descending ? 1.0 - t : t;
}

RoutingPolicy RoutingPolicy::FromName(std::string_view name) {
  if (name == "lnd") return Lnd();
  if (name == "clightning" || name == "c-lightning") return CLightning();
  if (name == "eclair") return Eclair();
  if (name == "suggested") return Suggested();
  throw InvalidPolicyError("unknown routing policy '" + std::string(name) + "'");
}

std::string_view RoutingPolicy::name() const {
  switch (kind()) {
    case PolicyKind::kLnd:
      return "lnd";
    case PolicyKind::kCLightning:
      return "clightning";
    case PolicyKind::kEclair:
      return "eclair";
    case PolicyKind::kSuggested:
      return "suggested";
  }
  return "unknown";
}

bool RoutingPolicy::randomized() const {
  return std::visit(
      Overloaded{
          [](const LndParams&) { return false; },
          [](const CLightningParams& p) { return p.fuzz != 0; },
          [](const EclairParams& p) { return p.top_k > 1; },
          [](const SuggestedParams& p) { return p.sigma != 0; },
      },
      params);
}

RoutingPolicy RoutingPolicy::DeterministicCore() const {
  RoutingPolicy core = *this;
  std::visit(Overloaded{
                 [](LndParams& p) { p.probability_penalty = false; },
                 [](CLightningParams& p) { p.fuzz = 0; },
                 [](EclairParams& p) { p.top_k = 1; },
                 [](SuggestedParams& p) { p.sigma = 0; },
             },
             core.params);
  return core;
}

void RoutingPolicy::Validate() const {
  std::visit(
      Overloaded{
          [](const LndParams& p) {
            CheckNonNegative(p.risk_factor, "lnd risk_factor");
            CheckNonNegative(p.penalty_numerator, "lnd penalty_numerator");
            if (!(p.apriori_probability >= 0 && p.apriori_probability <= 1) ||
                !(p.recovered_probability >= 0 && p.recovered_probability <= 1)) {
              throw InvalidPolicyError("lnd probabilities must lie in [0, 1]");
            }
          },
          [](const CLightningParams& p) {
            CheckNonNegative(p.risk_factor, "clightning risk_factor");
            if (!(p.fuzz >= 0 && p.fuzz < 1)) {
              throw InvalidPolicyError("clightning fuzz must lie in [0, 1)");
            }
          },
          [](const EclairParams& p) {
            CheckNonNegative(p.delay_ratio, "eclair delay_ratio");
            CheckNonNegative(p.capacity_ratio, "eclair capacity_ratio");
            CheckNonNegative(p.age_ratio, "eclair age_ratio");
            CheckBounds(p.delay, "eclair delay");
            CheckBounds(p.capacity, "eclair capacity");
            CheckBounds(p.age, "eclair age");
            if (p.top_k < 1) throw InvalidPolicyError("eclair top_k must be >= 1");
          },
          [](const SuggestedParams& p) {
            CheckNonNegative(p.sigma, "suggested sigma");
            CheckNonNegative(p.delay_ratio, "suggested delay_ratio");
            CheckNonNegative(p.age_ratio, "suggested age_ratio");
            CheckNonNegative(p.capacity_ratio, "suggested capacity_ratio");
            CheckNonNegative(p.fee_ratio, "suggested fee_ratio");
            CheckNonNegative(p.interest_ratio, "suggested interest_ratio");
            CheckBounds(p.delay, "suggested delay");
            CheckBounds(p.capacity, "suggested capacity");
            CheckBounds(p.age, "suggested age");
          },
      },
      params);
}

Msat ChannelFee(const ChannelPolicy& policy, Msat forwarded_amount) {
  if (policy.prop_fee_ppm == 0) return policy.base_fee;
  constexpr Msat kNarrow = std::numeric_limits<Msat>::max() / 2;
  if (forwarded_amount <= kNarrow / policy.prop_fee_ppm) {
    const Msat scaled = forwarded_amount * policy.prop_fee_ppm;
    return policy.base_fee + (scaled + 500'000) / 1'000'000;
  }
  const Wide scaled = static_cast<Wide>(forwarded_amount) * policy.prop_fee_ppm;
  const auto proportional = static_cast<Msat>((scaled + 500'000) / 1'000'000);
  return policy.base_fee + proportional;
}

double LndEdgeProbability(const LndParams& params, const FailureMemory& memory,
                          const std::string& channel_id, Direction dir,
                          double now_seconds) {
  auto it = memory.find({channel_id, dir});
  if (it == memory.end()) return params.apriori_probability;
  const double hours = (now_seconds - it->second) / 3600.0;
  if (hours < 1.0) return 0.0;
  const double t = hours - 1.0;
  return params.recovered_probability -
         params.recovered_probability / std::exp2(t);
}

double LndWeight(const LndParams& params, const ChannelPolicy& policy,
                 Msat forwarded_amount, Msat fee, double probability) {
  double w = static_cast<double>(forwarded_amount) *
                 static_cast<double>(policy.delay) * params.risk_factor +
             static_cast<double>(fee);
  if (params.probability_penalty) {
    if (probability <= 0) return kInf;
    w += params.penalty_numerator / probability;
  }
  return w;
}

double CLightningScale(std::uint64_t salt, std::uint64_t short_channel_id,
                       double fuzz) {
  if (fuzz == 0) return 1.0;
  const std::uint64_t h = KeyedHash(salt, short_channel_id);
  const long double unit = static_cast<long double>(h) /
                           static_cast<long double>(UINT64_MAX);
  return static_cast<double>(1.0L + fuzz * (2.0L * unit - 1.0L));
}

double CLightningWeight(const CLightningParams& params,
                        const ChannelPolicy& policy, Msat forwarded_amount,
                        Msat fee, double scale) {
  const double scaled_fee = scale * static_cast<double>(fee);
  return (static_cast<double>(forwarded_amount) + scaled_fee) *
             (static_cast<double>(policy.delay) * params.risk_factor) +
         1.0;
}

double EclairWeight(const EclairParams& params, const Channel& channel,
                    Direction dir, Msat fee, Blocks current_height) {
  const ChannelPolicy& policy = channel.policy(dir);
  const double nd = params.delay.Apply(static_cast<double>(policy.delay));
  const double nc =
      params.capacity.Apply(static_cast<double>(channel.capacity) / 1000.0);
  const double na = params.age.Apply(
      static_cast<double>(ChannelAge(channel, current_height)));
  return static_cast<double>(fee) *
         (nd * params.delay_ratio + nc * params.capacity_ratio +
          na * params.age_ratio);
}

double SuggestedWeight(const SuggestedParams& params, const Channel& channel,
                       Direction dir, Msat forwarded_amount, Msat fee,
                       Blocks current_height, double scale) {
  const ChannelPolicy& policy = channel.policy(dir);
  const double capacity_sat = static_cast<double>(channel.capacity) / 1000.0;
  const auto age = static_cast<double>(ChannelAge(channel, current_height));
  const double nd = params.delay.Apply(static_cast<double>(policy.delay));
  const double nc = params.capacity.Apply(capacity_sat);
  const double na = params.age.Apply(age);
  const double fee_term =
      forwarded_amount > 0 ? static_cast<double>(fee) /
                                 static_cast<double>(forwarded_amount) *
                                 params.fee_ratio
                           : 0.0;
  return scale * (nd * params.delay_ratio + na * params.age_ratio -
                  nc * params.capacity_ratio -
                  capacity_sat * age * params.interest_ratio + fee_term);
}

EdgeWeigher::EdgeWeigher(const ChannelGraph& graph,
                         const RoutingPolicy& policy, Blocks current_height,
                         std::uint64_t salt, const FailureMemory* memory,
                         double now_seconds)
    : graph_(graph),
      policy_(policy),
      current_height_(current_height),
      salt_(salt),
      memory_(memory),
      now_seconds_(now_seconds) {
  const std::size_t channels = graph.channel_count();
  coeff_.resize(2 * channels);
  const auto fill = [&](auto&& f) {
    for (ChannelIndex c = 0; c < channels; ++c) {
      const Channel& ch = graph.channel(c);
      coeff_[2 * c] = f(ch, Direction::kAToB);
      coeff_[2 * c + 1] = f(ch, Direction::kBToA);
    }
  };
  switch (policy_.kind()) {
    case PolicyKind::kLnd: {
      const auto& p = std::get<LndParams>(policy_.params);
      fill([&](const Channel& ch, Direction d) {
        return static_cast<double>(ch.policy(d).delay);
      });
      if (p.probability_penalty) {
        penalty_.resize(2 * channels);
        for (ChannelIndex c = 0; c < channels; ++c) {
          for (Direction d : {Direction::kAToB, Direction::kBToA}) {
            double probability = p.apriori_probability;
            if (memory_ != nullptr) {
              probability = LndEdgeProbability(p, *memory_, graph.channel(c).id,
                                               d, now_seconds_);
            }
            penalty_[2 * c + static_cast<int>(d)] =
                probability <= 0 ? kInf : p.penalty_numerator / probability;
          }
        }
      }
      break;
    }
    case PolicyKind::kCLightning: {
      const auto& p = std::get<CLightningParams>(policy_.params);
      fill([&](const Channel& ch, Direction d) {
        return static_cast<double>(ch.policy(d).delay) * p.risk_factor;
      });
      break;
    }
    case PolicyKind::kEclair: {
      const auto& p = std::get<EclairParams>(policy_.params);
      fill([&](const Channel& ch, Direction d) {
        return EclairWeight(p, ch, d, 1, current_height_);
      });
      break;
    }
    case PolicyKind::kSuggested: {
      const auto& p = std::get<SuggestedParams>(policy_.params);
      fill([&](const Channel& ch, Direction d) {
        return SuggestedWeight(p, ch, d, 1, 0, current_height_, 1.0);
      });
      break;
    }
  }
  if (policy_.randomized() && policy_.kind() != PolicyKind::kEclair) {
    scale_.resize(channels);
    for (ChannelIndex c = 0; c < channels; ++c) scale_[c] = ComputeScale(c);
  }
  if (policy_.kind() == PolicyKind::kSuggested) {
    double max_scale = 1.0;
    for (double s : scale_) max_scale = std::max(max_scale, std::abs(s));
    gain_factor_ =
        max_scale * std::get<SuggestedParams>(policy_.params).fee_ratio;
    for (const Channel& ch : graph.channels()) {
      for (Direction d : {Direction::kAToB, Direction::kBToA}) {
        if (ch.policy(d).enabled) {
          max_base_fee_ = std::max(max_base_fee_,
                                   static_cast<double>(ch.policy(d).base_fee));
        }
      }
    }
  }
}

double EdgeWeigher::AmountGain(Msat low, Msat high) const {
  if (gain_factor_ == 0 || low >= high || low <= 0) return 0;
  const double lo = static_cast<double>(low);
  const double hi = static_cast<double>(high);
  // fee(x) / x = base / x + round(x * ppm / 1e6) / x; the rounded part
  // moves by at most 0.5 / low + 0.5 / high.
  return gain_factor_ *
         (max_base_fee_ * (1.0 / lo - 1.0 / hi) + 0.5 / lo + 0.5 / hi) *
         (1 + 1e-12);
}

double EdgeWeigher::Scale(ChannelIndex channel) const {
  return scale_.empty() ? 1.0 : scale_[channel];
}

double EdgeWeigher::ComputeScale(ChannelIndex channel) const {
  const std::uint64_t key = graph_.channel_key(channel);
  return std::visit(
      Overloaded{
          [](const LndParams&) { return 1.0; },
          [&](const CLightningParams& p) {
            return CLightningScale(salt_, key, p.fuzz);
          },
          [](const EclairParams&) { return 1.0; },
          [&](const SuggestedParams& p) {
            if (p.sigma == 0) return 1.0;
            const double z = StandardNormal(KeyedHash(salt_, key),
                                            KeyedHash(~salt_, key));
            return 1.0 + p.sigma * z;
          },
      },
      policy_.params);
}

// Each case evaluates the same expression, in the same order, as the
// corresponding *Weight function so results are bit-identical.
double EdgeWeigher::Cost(const DirectedEdge& edge, Msat amount,
                         Msat fee) const {
  const std::size_t i = 2 * static_cast<std::size_t>(edge.channel) +
                        static_cast<std::size_t>(edge.dir);
  const double c = coeff_[i];
  switch (policy_.kind()) {
    case PolicyKind::kLnd: {
      const auto& p = std::get<LndParams>(policy_.params);
      double w = static_cast<double>(amount) * c * p.risk_factor +
                 static_cast<double>(fee);
      if (!penalty_.empty()) w += penalty_[i];
      return w;
    }
    case PolicyKind::kCLightning: {
      const double scaled_fee = Scale(edge.channel) * static_cast<double>(fee);
      return (static_cast<double>(amount) + scaled_fee) * c + 1.0;
    }
    case PolicyKind::kEclair:
      return static_cast<double>(fee) * c;
    case PolicyKind::kSuggested: {
      const auto& p = std::get<SuggestedParams>(policy_.params);
      const double fee_term =
          amount > 0 ? static_cast<double>(fee) / static_cast<double>(amount) *
                           p.fee_ratio
                     : 0.0;
      return std::max(0.0, Scale(edge.channel) * (c + fee_term));
    }
  }
  return kInf;
}

}  // namespace pcnhijack
