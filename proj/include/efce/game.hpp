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
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace efce {

// Index of the empty sequence in every player's sequence table.
inline constexpr int kEmptySequence = 0;
// Marks "no information set" (e.g. the parent of a root information set, or
// the full-tree scope of a strategy).
inline constexpr int kNoInfoSet = -1;

enum class NodeKind { kChance, kDecision, kTerminal };

// One node of the game tree as declared by the author of the game. Ids are
// dense indices into GameTree::nodes() in declaration order.
struct Node {
  std::string name;
  NodeKind kind = NodeKind::kTerminal;
  int parent = -1;
  // Decision nodes: acting player (0-based) and information-set label.
  int player = -1;
  std::string infoset_label;
  // Decision and chance nodes.
  std::vector<std::string> actions;
  std::vector<int> children;
  // Chance nodes only.
  std::vector<double> probabilities;
  // Terminal nodes only, one entry per player.
  std::vector<double> payoffs;
  // 1-based line of the declaration when the node came from a document.
  int source_line = 0;

  bool operator==(const Node&) const = default;
};

// Sequence of a given player: kEmptySequence or an (infoset, action) pair.
struct SequenceId {
  int player = 0;
  int index = kEmptySequence;

  bool empty() const { return index == kEmptySequence; }
  bool operator==(const SequenceId&) const = default;
};

struct InfoSet {
  std::string label;
  int player = 0;
  // sigma(j): last sequence of the player on the path to any node of j.
  int parent_sequence = kEmptySequence;
  // Infoset owning parent_sequence, or kNoInfoSet for root infosets.
  int parent_infoset = kNoInfoSet;
  std::vector<std::string> actions;
  std::vector<int> nodes;
  // Sequence (j, a) has index first_sequence + a.
  int first_sequence = 0;
  // Infosets [id, subtree_end) are j and its descendants (pre-order).
  int subtree_end = 0;
  // Sequences [first_sequence, sequence_end) are exactly Sigma_j.
  int sequence_end = 0;
  int depth = 0;

  int num_actions() const { return static_cast<int>(actions.size()); }
  int sequence(int action) const { return first_sequence + action; }
};

// The sequence-form structure of one player: the forest of information sets
// and the forest of sequences under the precedence relation.
//
// Infosets are numbered in pre-order of the infoset forest (children of a
// sequence in the order they are first met in a depth-first walk of the game
// tree), and the actions of each infoset get consecutive sequence indices.
// With that numbering both Sigma_j and the strict descendants of a sequence
// are contiguous index ranges.
class Treeplex {
 public:
  int player() const { return player_; }
  int num_sequences() const { return static_cast<int>(sequence_infoset_.size()); }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }

  const InfoSet& infoset(int j) const { return infosets_.at(j); }
  std::span<const InfoSet> infosets() const { return infosets_; }

  // Owning infoset / action of a non-empty sequence.
  int sequence_infoset(int s) const { return sequence_infoset_[s]; }
  int sequence_action(int s) const { return sequence_action_[s]; }
  int parent_sequence(int s) const;

  // Infosets immediately reachable from sequence s (root infosets for the
  // empty sequence).
  std::span<const int> child_infosets(int s) const { return child_infosets_[s]; }

  // Strict descendants of s are [descendants_begin(s), descendants_end(s)).
  int descendants_begin(int s) const { return descendants_[s].first; }
  int descendants_end(int s) const { return descendants_[s].second; }

  // s strictly precedes t.
  bool precedes(int s, int t) const;
  // t == s or s precedes t.
  bool precedes_or_equal(int s, int t) const { return s == t || precedes(s, t); }
  // sigma is (j', a') with j' a descendant-or-self of infoset j.
  bool in_subtree(int sigma, int j) const {
    return sigma >= infosets_[j].first_sequence && sigma < infosets_[j].sequence_end;
  }
  // Infoset j' equals j or precedes it.
  bool infoset_precedes_or_equal(int j_prime, int j) const {
    return j_prime <= j && j < infosets_[j_prime].subtree_end;
  }

  std::string sequence_label(int s) const;

 private:
  friend class GameTree;

  int player_ = 0;
  std::vector<InfoSet> infosets_;
  std::vector<int> sequence_infoset_;
  std::vector<int> sequence_action_;
  std::vector<std::vector<int>> child_infosets_;
  std::vector<std::pair<int, int>> descendants_;
};

// Immutable n-player extensive-form game with chance, validated for perfect
// recall. Safe for concurrent reads once constructed.
class GameTree {
 public:
  // Validates the node arena and builds all per-player tables.
  // Throws ValidationError on any structural violation.
  static GameTree from_nodes(std::string name, int num_players, int root,
                            std::vector<Node> nodes);

  const std::string& name() const { return name_; }
  int num_players() const { return num_players_; }
  int root() const { return root_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_.at(id); }
  std::span<const Node> nodes() const { return nodes_; }
  // Infoset id (within the acting player's treeplex) of a decision node.
  int node_infoset(int id) const { return node_infoset_[id]; }
  // Node ids in depth-first pre-order, children in declaration order.
  std::span<const int> preorder() const { return preorder_; }

  std::span<const int> terminals() const { return terminals_; }
  // Position of a terminal node id inside terminals(), or -1.
  int terminal_index(int node_id) const { return terminal_index_[node_id]; }

  // Per terminal (indexed by position in terminals()).
  double chance_reach(int z) const { return chance_reach_[z]; }
  double payoff(int z, int player) const {
    return nodes_[terminals_[z]].payoffs[player];
  }
  // sigma^(i)(z): last sequence of `player` on the path to terminal z.
  int terminal_sequence(int z, int player) const {
    return terminal_sequence_[z * num_players_ + player];
  }

  const Treeplex& treeplex(int player) const { return treeplexes_.at(player); }

  // max_z u(z) - min_z u(z), for one player or across all players.
  double payoff_range(int player) const;
  double payoff_range() const;

  // Structural equality on the declared game (name excluded).
  bool same_structure(const GameTree& other) const;

 private:
  GameTree() = default;

  std::string name_;
  int num_players_ = 0;
  int root_ = 0;
  std::vector<Node> nodes_;
  std::vector<int> node_infoset_;
  std::vector<int> preorder_;
  std::vector<int> terminals_;
  std::vector<int> terminal_index_;
  std::vector<double> chance_reach_;
  std::vector<int> terminal_sequence_;
  std::vector<Treeplex> treeplexes_;
};

// sigma strictly precedes sigma_prime. Throws std::invalid_argument when the
// two sequences belong to different players.
bool sequence_precedes(const GameTree& game, SequenceId sigma, SequenceId sigma_prime);

// Sigma_j in parent-before-child order.
std::vector<int> sequences_at_or_below(const GameTree& game, int player, int infoset);

// Looks up an infoset id by its label; returns kNoInfoSet if absent.
int find_infoset(const GameTree& game, int player, const std::string& label);
// Looks up the sequence (infoset label, action name); throws if absent.
int find_sequence(const GameTree& game, int player, const std::string& infoset_label,
                  const std::string& action);

}  // namespace efce
