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

#include "pcnhijack/game.h"

#include <algorithm>
#include <cmath>

namespace pcnhijack {
namespace {

// Fees of the two defender routes in the clique.
constexpr double kDirectFee = 1;
constexpr double kIndirectFee = 2;

double RowValue(const Payoff& m, int row, double q) {
  return q * m[row][kDirect] + (1 - q) * m[row][kIndirect];
}

double ColumnValue(const Payoff& m, int col, double p) {
  return p * m[kDirect][col] + (1 - p) * m[kIndirect][col];
}

bool Interior(double x) { return x > 0 && x < 1; }

}  // namespace

bool Intersects(std::span<const GameChannel> a,
                std::span<const GameChannel> b) {
  for (const GameChannel& x : a) {
    for (const GameChannel& y : b) {
      if (x.id == y.id) return true;
    }
  }
  return false;
}

double AttackerUtility(std::span<const GameChannel> attacker,
                       std::span<const GameChannel> defender, double H,
                       double I) {
  double capacity = 0;
  for (const GameChannel& c : attacker) capacity += c.capacity;
  return H * (Intersects(attacker, defender) ? 1.0 : 0.0) - I * capacity;
}

double DefenderUtility(std::span<const GameChannel> attacker,
                       std::span<const GameChannel> defender, double H) {
  double fees = 0;
  for (const GameChannel& c : defender) fees += c.fee;
  return -H * (Intersects(attacker, defender) ? 1.0 : 0.0) - fees;
}

void GameParams::Validate() const {
  if (!(H > 0)) throw InvalidGameError("H must be positive");
  if (!(I >= 0)) throw InvalidGameError("I must be non-negative");
  if (V < 3) throw InvalidGameError("V must be at least 3");
  if (k < 1 || k > V - 2) throw InvalidGameError("k must lie in [1, V - 2]");
}

GameMatrices CliqueGameMatrices(const GameParams& params) {
  params.Validate();
  const double H = params.H;
  const double cost = params.I * params.k;
  const double relays = params.V - 2;
  // Chance that a uniformly chosen relay is one of the attacker's.
  const double hit_with_direct = (params.k - 1) / relays;
  const double hit_without_direct = params.k / relays;

  GameMatrices m;
  m.defender[kDirect][kDirect] = -H - kDirectFee;
  m.defender[kDirect][kIndirect] = -kDirectFee;
  m.defender[kIndirect][kDirect] = -H * hit_with_direct - kIndirectFee;
  m.defender[kIndirect][kIndirect] = -H * hit_without_direct - kIndirectFee;

  m.attacker[kDirect][kDirect] = H - cost;
  m.attacker[kDirect][kIndirect] = -cost;
  m.attacker[kIndirect][kDirect] = H * hit_with_direct - cost;
  m.attacker[kIndirect][kIndirect] = H * hit_without_direct - cost;
  return m;
}

GameSolution CliqueGameSolve(const GameParams& params) {
  if (!(params.H > 0) || !(params.I >= 0) || params.V < 3 || params.k < 1) {
    throw InvalidGameError("invalid clique game parameters");
  }
  if (params.k > params.V - 1) {
    throw InvalidGameError("k > V - 1 leaves the probability range");
  }
  const double others = params.V - 1;
  GameSolution s;
  s.profile.p = 1.0 / others;
  s.profile.q = params.k / others;
  s.attacker_value = params.k * (params.H / others - params.I);
  return s;
}

double DefenderPayoff(const GameMatrices& m, const StrategyProfile& s) {
  return s.p * RowValue(m.defender, kDirect, s.q) +
         (1 - s.p) * RowValue(m.defender, kIndirect, s.q);
}

double AttackerPayoff(const GameMatrices& m, const StrategyProfile& s) {
  return s.q * ColumnValue(m.attacker, kDirect, s.p) +
         (1 - s.q) * ColumnValue(m.attacker, kIndirect, s.p);
}

EquilibriumCheck CheckEquilibrium(const GameMatrices& m,
                                  const StrategyProfile& s, double eps) {
  EquilibriumCheck check;
  const double d_direct = RowValue(m.defender, kDirect, s.q);
  const double d_indirect = RowValue(m.defender, kIndirect, s.q);
  const double a_direct = ColumnValue(m.attacker, kDirect, s.p);
  const double a_indirect = ColumnValue(m.attacker, kIndirect, s.p);
  check.defender_regret =
      std::max(d_direct, d_indirect) - DefenderPayoff(m, s);
  check.attacker_regret =
      std::max(a_direct, a_indirect) - AttackerPayoff(m, s);
  bool ok = check.defender_regret <= eps && check.attacker_regret <= eps;
  if (Interior(s.p)) ok = ok && std::abs(d_direct - d_indirect) <= eps;
  if (Interior(s.q)) ok = ok && std::abs(a_direct - a_indirect) <= eps;
  check.ok = ok;
  return check;
}

bool VerifyEquilibrium(const GameMatrices& m, const StrategyProfile& s,
                       double eps) {
  return CheckEquilibrium(m, s, eps).ok;
}

std::vector<StrategyProfile> SolveBimatrix(const GameMatrices& m) {
  std::vector<StrategyProfile> out;
  for (int r : {kDirect, kIndirect}) {
    for (int c : {kDirect, kIndirect}) {
      const bool row_best = m.defender[r][c] >= m.defender[1 - r][c];
      const bool col_best = m.attacker[r][c] >= m.attacker[r][1 - c];
      if (row_best && col_best) {
        out.push_back({r == kDirect ? 1.0 : 0.0, c == kDirect ? 1.0 : 0.0});
      }
    }
  }
  // Interior equilibrium: each player's mix leaves the other indifferent.
  const double dx = m.defender[kDirect][kDirect] - m.defender[kIndirect][kDirect];
  const double dy =
      m.defender[kDirect][kIndirect] - m.defender[kIndirect][kIndirect];
  const double ax = m.attacker[kDirect][kDirect] - m.attacker[kDirect][kIndirect];
  const double ay =
      m.attacker[kIndirect][kDirect] - m.attacker[kIndirect][kIndirect];
  if (dy != dx && ay != ax) {
    const double q = dy / (dy - dx);
    const double p = ay / (ay - ax);
    if (Interior(p) && Interior(q)) out.push_back({p, q});
  }
  return out;
}

}  // namespace pcnhijack
