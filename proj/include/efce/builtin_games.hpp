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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "efce/game.hpp"

namespace efce {

// The two-player example game with a four-infoset first player: A (1, 2),
// B (3, 4) and C (5, 6) below 1, D (7, 8) below 2 reached after either
// reply of the second player. Payoffs are drawn from {-1, 0, 1} per
// (leaf, player) with the given seed.
GameTree fig1_game(std::uint64_t payoff_seed);
// Same structure with explicit payoffs, leaves in order 3, 4, 5, 6, then 7
// and 8 after S:left, then 7 and 8 after S:right.
GameTree fig1_game(const std::vector<std::array<double, 2>>& payoffs);

// Two-player Kuhn poker with a three-card deck and unit ante and bet.
GameTree kuhn3_game();

struct RandomTreeOptions {
  int depth = 4;
  int branching = 2;
  int players = 2;
  std::uint64_t seed = 0;
  double chance_fraction = 0.2;
  // Probability that a non-root node below depth 1 is cut to a leaf.
  double leaf_fraction = 0.15;
};

// Random perfect-recall game. Information sets merge nodes that share the
// acting player's last sequence and a coin-flip signal, so opponents' and
// chance moves are partially hidden. Deterministic in the options.
GameTree random_tree_game(const RandomTreeOptions& options);

// Dispatch by name: fig1 and random-tree require a seed, kuhn3 ignores it.
// Throws std::invalid_argument for unknown names or a missing seed.
GameTree builtin_game(const std::string& name, std::optional<std::uint64_t> seed);

}  // namespace efce
