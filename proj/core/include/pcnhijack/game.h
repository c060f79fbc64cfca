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

// Attacker and defender utilities and the two-strategy clique game.

#ifndef PCNHIJACK_GAME_H_
#define PCNHIJACK_GAME_H_

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcnhijack {

class InvalidGameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GameChannel {
  std::string id;
  double capacity = 0;
  double fee = 0;
};

// 1 when the two channel sets share a channel id.
bool Intersects(std::span<const GameChannel> a, std::span<const GameChannel> b);

// H * delta - I * sum of attacker capacities.
double AttackerUtility(std::span<const GameChannel> attacker,
                       std::span<const GameChannel> defender, double H,
                       double I);

// -H * delta - sum of defender path fees.
double DefenderUtility(std::span<const GameChannel> attacker,
                       std::span<const GameChannel> defender, double H);

struct GameParams {
  double H = 1;
  double I = 0;
  int V = 3;
  int k = 1;

  // Throws InvalidGameError unless H > 0, I >= 0, V >= 3, 1 <= k <= V - 2.
  void Validate() const;
};

enum Strategy { kDirect = 0, kIndirect = 1 };

// payoff[defender strategy][attacker strategy].
using Payoff = std::array<std::array<double, 2>, 2>;

struct GameMatrices {
  Payoff defender;
  Payoff attacker;
};

// Both players' payoffs when the defender pays directly (fee 1) or through
// one of the V - 2 other nodes (fee 2) and the attacker either holds the
// direct channel plus k - 1 relays or k relays.
GameMatrices CliqueGameMatrices(const GameParams& params);

struct StrategyProfile {
  double p = 0;  // defender plays direct
  double q = 0;  // attacker plays direct
};

struct GameSolution {
  StrategyProfile profile;
  double attacker_value = 0;
};

// p = 1 / (V - 1), q = k / (V - 1), value k * (H / (V - 1) - I). Throws
// InvalidGameError when k > V - 1 or the parameters are invalid.
GameSolution CliqueGameSolve(const GameParams& params);

// Expected payoffs of a mixed profile.
double DefenderPayoff(const GameMatrices& m, const StrategyProfile& s);
double AttackerPayoff(const GameMatrices& m, const StrategyProfile& s);

struct EquilibriumCheck {
  bool ok = false;
  // Largest gain of a pure deviation for each player.
  double defender_regret = 0;
  double attacker_regret = 0;
};

// True when neither player gains more than eps by switching to a pure
// strategy, and a player mixing both strategies is indifferent within eps.
EquilibriumCheck CheckEquilibrium(const GameMatrices& m,
                                  const StrategyProfile& s, double eps);
bool VerifyEquilibrium(const GameMatrices& m, const StrategyProfile& s,
                       double eps);

// Every Nash equilibrium of a nondegenerate 2x2 bimatrix game (pure
// profiles plus the interior mixed one, when present).
std::vector<StrategyProfile> SolveBimatrix(const GameMatrices& m);

}  // namespace pcnhijack

#endif  // PCNHIJACK_GAME_H_
