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

// Per-channel route-selection weights of lnd, C-lightning and Eclair, plus a
// hijack-resistant variant ("suggested") that fuzzes the whole weight and
// rewards capacity instead of multiplying everything by the fee.

#ifndef PCNHIJACK_WEIGHTS_H_
#define PCNHIJACK_WEIGHTS_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pcnhijack/graph.h"

namespace pcnhijack {

class InvalidPolicyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Linear clamp of x into [0, 1] over [lower, upper]; `descending` flips the
// result so that larger inputs map to smaller factors.
struct Normalization {
  double lower = 0;
  double upper = 1;
  bool descending = false;

  double Apply(double x) const;
};

struct LndParams {
  double risk_factor = 15.0 / 1'000'000'000.0;
  bool probability_penalty = false;
  // Probability used for channels without a recorded failure.
  double apriori_probability = 0.6;
  // Asymptote of the post-failure recovery curve.
  double recovered_probability = 0.6;
  double penalty_numerator = 100.0;
};

struct CLightningParams {
  double fuzz = 0.05;
  double risk_factor = 10.0;
};

struct EclairParams {
  double delay_ratio = 0.15;
  double capacity_ratio = 0.5;
  double age_ratio = 0.35;
  // Delay in blocks, capacity in satoshi, age in blocks.
  Normalization delay{9, 2016, false};
  Normalization capacity{1000, 16'777'216, true};
  Normalization age{0, 8640, false};
  int top_k = 3;
};

struct SuggestedParams {
  double sigma = 0.2;
  double delay_ratio = 0.5;
  double age_ratio = 0.5;
  double capacity_ratio = 0.3;
  double fee_ratio = 100.0;
  // Weight of the capacity(sat) x age(blocks) liquidity term. There is no
  // published value; 0 disables the term.
  double interest_ratio = 0.0;
  Normalization delay{9, 2016, false};
  Normalization capacity{1000, 16'777'216, false};
  Normalization age{0, 8640, false};
};

enum class PolicyKind { kLnd, kCLightning, kEclair, kSuggested };

struct RoutingPolicy {
  std::variant<LndParams, CLightningParams, EclairParams, SuggestedParams>
      params;

  static RoutingPolicy Lnd(LndParams p = {}) { return {p}; }
  static RoutingPolicy CLightning(CLightningParams p = {}) { return {p}; }
  static RoutingPolicy Eclair(EclairParams p = {}) { return {p}; }
  static RoutingPolicy Suggested(SuggestedParams p = {}) { return {p}; }
  // "lnd", "clightning", "eclair" or "suggested" with default parameters.
  static RoutingPolicy FromName(std::string_view name);

  PolicyKind kind() const { return static_cast<PolicyKind>(params.index()); }
  std::string_view name() const;
  // True when route choice consumes randomness (fuzz, top-k choice, gaussian
  // scale).
  bool randomized() const;
  // The same policy with every source of randomness switched off: fuzz 0,
  // sigma 0, top_k 1, lnd penalty off.
  RoutingPolicy DeterministicCore() const;
  // Throws InvalidPolicyError on negative ratios, top_k < 1 or empty bounds.
  void Validate() const;
};

// Last failure time (seconds) per channel direction, keyed by channel id.
using FailureMemory = std::map<std::pair<std::string, Direction>, double>;

// base_fee + amount * prop_fee_ppm / 1e6, proportional part rounded half-up.
Msat ChannelFee(const ChannelPolicy& policy, Msat forwarded_amount);

// lnd's success probability of a channel direction: apriori without a
// recorded failure, 0 within the first hour after one, then
// recovered - recovered / 2^t with t the hours elapsed beyond the first.
double LndEdgeProbability(const LndParams& params, const FailureMemory& memory,
                          const std::string& channel_id, Direction dir,
                          double now_seconds);

// amount * delay * risk + fee (+ numerator / probability with the penalty
// on; +inf when the probability is 0).
double LndWeight(const LndParams& params, const ChannelPolicy& policy,
                 Msat forwarded_amount, Msat fee, double probability);

// 1 + fuzz * (2 h / (2^64 - 1) - 1) with h a keyed hash of the channel id
// under the per-attempt salt.
double CLightningScale(std::uint64_t salt, std::uint64_t short_channel_id,
                       double fuzz);

// (amount + scale * fee) * delay * risk + 1.
double CLightningWeight(const CLightningParams& params,
                        const ChannelPolicy& policy, Msat forwarded_amount,
                        Msat fee, double scale);

// fee * (ndelay * delay_ratio + ncap * capacity_ratio + nage * age_ratio).
double EclairWeight(const EclairParams& params, const Channel& channel,
                    Direction dir, Msat fee, Blocks current_height);

// scale * (ndelay * delay_ratio + nage * age_ratio - ncap * capacity_ratio
//          - capacity * age * interest_ratio + fee / amount * fee_ratio).
// May be negative.
double SuggestedWeight(const SuggestedParams& params, const Channel& channel,
                       Direction dir, Msat forwarded_amount, Msat fee,
                       Blocks current_height, double scale);

// Everything one routing attempt needs to weigh a directed edge: the policy,
// the attempt's random salts and optional lnd failure memory.
class EdgeWeigher {
 public:
  EdgeWeigher(const ChannelGraph& graph, const RoutingPolicy& policy,
              Blocks current_height, std::uint64_t salt,
              const FailureMemory* memory = nullptr, double now_seconds = 0);

  // Search cost of forwarding `amount` over `edge` while charging `fee`
  // (0 on the sender's own first hop). Never negative; +inf excludes the
  // edge.
  double Cost(const DirectedEdge& edge, Msat amount, Msat fee) const;

  // Scale applied to this channel during this attempt (1 when the policy
  // does not fuzz).
  double Scale(ChannelIndex channel) const;

  // Upper bound on how much one hop's cost can drop when the amount
  // forwarded over it grows from `low` to `high`. Zero for lnd, C-lightning
  // and Eclair, whose weights never drop as the amount grows; the suggested
  // weight divides the fee by the amount.
  double AmountGain(Msat low, Msat high) const;

  const RoutingPolicy& policy() const { return policy_; }
  const ChannelGraph& graph() const { return graph_; }

 private:
  double ComputeScale(ChannelIndex channel) const;

  const ChannelGraph& graph_;
  RoutingPolicy policy_;
  Blocks current_height_;
  std::uint64_t salt_;
  const FailureMemory* memory_;
  double now_seconds_;
  // Per directed edge (2 * channel + dir): the amount-independent part of
  // the weight. lnd and C-lightning: delay * risk; Eclair: the normalized
  // factor sum; suggested: the terms without the fee ratio.
  std::vector<double> coeff_;
  // lnd probability penalty per directed edge (empty when off).
  std::vector<double> penalty_;
  // Per channel fee or weight scale (empty when the policy does not fuzz).
  std::vector<double> scale_;
  // Suggested only: largest |scale| times fee_ratio, and the largest base
  // fee of an enabled direction.
  double gain_factor_ = 0;
  double max_base_fee_ = 0;
};

}  // namespace pcnhijack

#endif  // PCNHIJACK_WEIGHTS_H_
