// Copyright 2026 The efce-dynamics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "efce/game.hpp"

namespace efce {

using Rng = std::mt19937_64;

// Which polytope a strategy lives in: the full treeplex Q of `player`, or
// the subtree treeplex Q_j rooted at infoset `root_infoset`.
struct StrategyScope {
  int player = 0;
  int root_infoset = kNoInfoSet;

  bool full_tree() const { return root_infoset == kNoInfoSet; }
  bool operator==(const StrategyScope&) const = default;

  static StrategyScope full(int player) { return {player, kNoInfoSet}; }
  static StrategyScope subtree(int player, int j) { return {player, j}; }
};

// First global sequence index covered by the scope and the number covered.
// Full scope covers every sequence including the empty one; Subtree(j)
// covers exactly Sigma_j.
int scope_offset(const GameTree& game, const StrategyScope& scope);
int scope_size(const GameTree& game, const StrategyScope& scope);

// Values are indexed locally: entry k is global sequence scope_offset + k.
struct SequenceFormStrategy {
  StrategyScope scope;
  Eigen::VectorXd values;
};

// Same representation with entries in {0, 1}.
using DeterministicStrategy = SequenceFormStrategy;
// One full-tree strategy per player.
using JointProfile = std::vector<DeterministicStrategy>;

struct UtilityVector {
  int player = 0;
  Eigen::VectorXd coefficients;  // over the full Sigma of `player`
  double range = 0.0;
};

SequenceFormStrategy uniform_strategy(const GameTree& game, const StrategyScope& scope);

// Nonnegativity, entries at most 1 and mass conservation, all to `tol`.
bool is_sequence_form(const GameTree& game, const SequenceFormStrategy& q, double tol = 1e-9);
bool is_deterministic(const GameTree& game, const SequenceFormStrategy& q, double tol = 1e-9);

// Top-down sampling with conditional probabilities q[(j,a)] / q[sigma(j)].
// Sequences below an unplayed sequence are 0. Requires full-tree scope.
DeterministicStrategy sample_pure(const GameTree& game, const SequenceFormStrategy& q, Rng& rng);

// Coefficients of the linear utility of `player` against the other
// players' strategies in `profile` (the entry of `player` is ignored).
UtilityVector utility_vector(const GameTree& game, int player, const JointProfile& profile);

// <coefficients, values>. Throws std::invalid_argument unless q is a
// full-tree strategy of the same player.
double evaluate(const UtilityVector& utility, const SequenceFormStrategy& q);

struct BestResponse {
  double value = 0.0;
  DeterministicStrategy strategy;
};

// max over deterministic strategies in the scope of <coefficients, pi>,
// with `coefficients` in the scope's local indexing. Ties go to the lowest
// action index.
BestResponse best_response(const GameTree& game, const StrategyScope& scope,
                           const Eigen::Ref<const Eigen::VectorXd>& coefficients);

// |Pi| for the scope, as a double to tolerate huge games.
double count_pure_strategies(const GameTree& game, const StrategyScope& scope);

// Independent stream for `player` derived from a master seed.
Rng player_stream(std::uint64_t master_seed, int player);

// Uniform double in [0, 1) from 53 random bits.
double uniform01(Rng& rng);

// "{}=1 1=0.5 2=0.5 ..." using action names, for debugging output.
std::string format_strategy(const GameTree& game, const SequenceFormStrategy& q);

}  // namespace efce
