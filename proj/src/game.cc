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

#include "efce/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "efce/errors.hpp"

namespace efce {
namespace {

constexpr double kChanceTolerance = 1e-9;

std::string node_ref(const Node& node) {
  std::string out = "node '" + node.name + "'";
  if (node.source_line > 0) out += " (line " + std::to_string(node.source_line) + ")";
  return out;
}

// Sequences before ids are assigned: (raw infoset, action), raw infoset -1
// meaning the empty sequence.
struct RawSequence {
  int infoset = -1;
  int action = -1;
  bool operator==(const RawSequence&) const = default;
};

struct RawInfoSet {
  std::string label;
  std::vector<std::string> actions;
  RawSequence parent;
  std::vector<int> nodes;
  // Children per action, in first-encounter order.
  std::vector<std::vector<int>> children;
};

void check_node_shape(const Node& node, int num_players) {
  switch (node.kind) {
    case NodeKind::kTerminal:
      if (static_cast<int>(node.payoffs.size()) != num_players) {
        throw ValidationError(node_ref(node) + ": expected " + std::to_string(num_players) +
                              " payoffs, got " + std::to_string(node.payoffs.size()));
      }
      for (double u : node.payoffs) {
        if (!std::isfinite(u)) throw ValidationError(node_ref(node) + ": non-finite payoff");
      }
      if (!node.children.empty()) throw ValidationError(node_ref(node) + ": leaf with children");
      return;
    case NodeKind::kDecision:
      if (node.player < 0 || node.player >= num_players) {
        throw ValidationError(node_ref(node) + ": player out of range");
      }
      if (node.infoset_label.empty()) throw ValidationError(node_ref(node) + ": missing infoset");
      break;
    case NodeKind::kChance: {
      if (node.probabilities.size() != node.children.size()) {
        throw ValidationError(node_ref(node) + ": one probability per chance outcome required");
      }
      double total = 0.0;
      for (double p : node.probabilities) {
        if (!(p > 0.0) || !std::isfinite(p)) {
          throw ValidationError(node_ref(node) + ": chance probabilities must be positive");
        }
        total += p;
      }
      if (std::abs(total - 1.0) > kChanceTolerance) {
        throw ValidationError(node_ref(node) + ": chance probabilities sum to " +
                              std::to_string(total));
      }
      break;
    }
  }
  if (node.children.empty()) throw ValidationError(node_ref(node) + ": no actions");
  if (node.actions.size() != node.children.size()) {
    throw ValidationError(node_ref(node) + ": action/child count mismatch");
  }
  for (std::size_t a = 0; a < node.actions.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if (node.actions[a] == node.actions[b]) {
        throw ValidationError(node_ref(node) + ": duplicate action '" + node.actions[a] + "'");
      }
    }
  }
}

}  // namespace

int Treeplex::parent_sequence(int s) const {
  if (s == kEmptySequence) return -1;
  return infosets_[sequence_infoset_[s]].parent_sequence;
}

bool Treeplex::precedes(int s, int t) const {
  if (s == kEmptySequence) return t != kEmptySequence;
  return t >= descendants_[s].first && t < descendants_[s].second;
}

std::string Treeplex::sequence_label(int s) const {
  if (s == kEmptySequence) return "{}";
  const InfoSet& j = infosets_[sequence_infoset_[s]];
  return j.label + ":" + j.actions[sequence_action_[s]];
}

GameTree GameTree::from_nodes(std::string name, int num_players, int root,
                              std::vector<Node> nodes) {
  if (num_players < 1) throw ValidationError("game needs at least one player");
  const int n = static_cast<int>(nodes.size());
  if (n == 0) throw ValidationError("game has no nodes");
  if (root < 0 || root >= n) throw ValidationError("root id out of range");

  for (Node& node : nodes) node.parent = -1;
  for (int id = 0; id < n; ++id) {
    for (int child : nodes[id].children) {
      if (child < 0 || child >= n) {
        throw ValidationError(node_ref(nodes[id]) + ": dangling child id " + std::to_string(child));
      }
      if (child == root || nodes[child].parent != -1) {
        throw ValidationError(node_ref(nodes[child]) + ": more than one parent");
      }
      nodes[child].parent = id;
    }
  }
  for (const Node& node : nodes) check_node_shape(node, num_players);

  GameTree g;
  g.name_ = std::move(name);
  g.num_players_ = num_players;
  g.root_ = root;
  g.node_infoset_.assign(n, kNoInfoSet);

  // Depth-first walk tracking each player's last sequence and the chance
  // reach. Children are pushed in reverse so they pop in declaration order.
  std::vector<std::vector<RawInfoSet>> raw(num_players);
  std::vector<std::map<std::string, int>> raw_by_label(num_players);
  std::vector<int> raw_of_node(n, -1);
  std::vector<RawSequence> node_path(static_cast<std::size_t>(n) * num_players);
  std::vector<double> reach(n, 1.0);
  std::vector<int> stack{root};
  std::vector<char> seen(n, 0);
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    seen[id] = 1;
    g.preorder_.push_back(id);
    const Node& node = nodes[id];
    RawSequence* path = &node_path[static_cast<std::size_t>(id) * num_players];
    if (node.kind == NodeKind::kDecision) {
      const int i = node.player;
      auto [it, inserted] =
          raw_by_label[i].try_emplace(node.infoset_label, static_cast<int>(raw[i].size()));
      if (inserted) {
        RawInfoSet info;
        info.label = node.infoset_label;
        info.actions = node.actions;
        info.parent = path[i];
        info.children.resize(node.actions.size());
        raw[i].push_back(std::move(info));
        if (path[i].infoset >= 0) {
          raw[i][path[i].infoset].children[path[i].action].push_back(it->second);
        }
      } else {
        const RawInfoSet& info = raw[i][it->second];
        if (info.actions != node.actions) {
          throw ValidationError(node_ref(node) + ": action set differs from infoset '" +
                                node.infoset_label + "'");
        }
        if (!(info.parent == path[i])) {
          throw ValidationError(node_ref(node) + ": perfect recall violated in infoset '" +
                                node.infoset_label + "' of player " + std::to_string(i + 1));
        }
      }
      raw[i][it->second].nodes.push_back(id);
      raw_of_node[id] = it->second;
    }
    for (int a = static_cast<int>(node.children.size()) - 1; a >= 0; --a) {
      const int child = node.children[a];
      RawSequence* child_path = &node_path[static_cast<std::size_t>(child) * num_players];
      std::copy(path, path + num_players, child_path);
      reach[child] = reach[id];
      if (node.kind == NodeKind::kDecision) {
        child_path[node.player] = RawSequence{raw_of_node[id], a};
      } else if (node.kind == NodeKind::kChance) {
        reach[child] *= node.probabilities[a];
      }
      stack.push_back(child);
    }
  }
  for (int id = 0; id < n; ++id) {
    if (!seen[id]) throw ValidationError(node_ref(nodes[id]) + ": not reachable from the root");
  }

  // Pre-order numbering of each player's infoset forest. A visited infoset
  // takes the next block of sequence ids, then its children are numbered
  // action by action.
  std::vector<std::vector<int>> raw_to_id(num_players);
  std::vector<std::vector<int>> raw_sequence_base(num_players);
  g.treeplexes_.resize(num_players);
  for (int i = 0; i < num_players; ++i) {
    Treeplex& tp = g.treeplexes_[i];
    tp.player_ = i;
    const auto& rinfo = raw[i];
    raw_to_id[i].assign(rinfo.size(), -1);
    tp.sequence_infoset_.push_back(kNoInfoSet);
    tp.sequence_action_.push_back(-1);

    std::vector<int> roots;
    for (int r = 0; r < static_cast<int>(rinfo.size()); ++r) {
      if (rinfo[r].parent.infoset < 0) roots.push_back(r);
    }

    struct Frame {
      int raw;
      int parent_id;
      int depth;
    };
    // Explicit recursion: visit(raw) assigns ids, then visits children.
    std::vector<int> order;
    std::vector<Frame> frames;
    for (auto r = roots.rbegin(); r != roots.rend(); ++r) frames.push_back({*r, kNoInfoSet, 0});
    std::vector<int> parent_of(rinfo.size(), kNoInfoSet);
    std::vector<int> depth_of(rinfo.size(), 0);
    while (!frames.empty()) {
      Frame f = frames.back();
      frames.pop_back();
      order.push_back(f.raw);
      parent_of[f.raw] = f.parent_id;
      depth_of[f.raw] = f.depth;
      const auto& kids = rinfo[f.raw].children;
      for (int a = static_cast<int>(kids.size()) - 1; a >= 0; --a) {
        for (auto c = kids[a].rbegin(); c != kids[a].rend(); ++c) {
          frames.push_back({*c, f.raw, f.depth + 1});
        }
      }
    }
    for (int k = 0; k < static_cast<int>(order.size()); ++k) raw_to_id[i][order[k]] = k;

    tp.infosets_.resize(order.size());
    for (int k = 0; k < static_cast<int>(order.size()); ++k) {
      const RawInfoSet& r = rinfo[order[k]];
      InfoSet& info = tp.infosets_[k];
      info.label = r.label;
      info.player = i;
      info.actions = r.actions;
      info.depth = depth_of[order[k]];
      info.first_sequence = tp.num_sequences();
      for (int a = 0; a < info.num_actions(); ++a) {
        tp.sequence_infoset_.push_back(k);
        tp.sequence_action_.push_back(a);
      }
      info.parent_infoset = parent_of[order[k]] < 0 ? kNoInfoSet : raw_to_id[i][parent_of[order[k]]];
      info.parent_sequence = info.parent_infoset == kNoInfoSet
                                 ? kEmptySequence
                                 : tp.infosets_[info.parent_infoset].first_sequence + r.parent.action;
      for (int node_id : r.nodes) {
        info.nodes.push_back(node_id);
        g.node_infoset_[node_id] = k;
      }
    }
    // Subtree ends, walking backwards so children are final before parents.
    const int num_j = static_cast<int>(order.size());
    for (int k = num_j - 1; k >= 0; --k) {
      InfoSet& info = tp.infosets_[k];
      info.subtree_end = k + 1;
      info.sequence_end = info.first_sequence + info.num_actions();
    }
    for (int k = num_j - 1; k >= 0; --k) {
      const InfoSet& info = tp.infosets_[k];
      if (info.parent_infoset != kNoInfoSet) {
        InfoSet& p = tp.infosets_[info.parent_infoset];
        p.subtree_end = std::max(p.subtree_end, info.subtree_end);
        p.sequence_end = std::max(p.sequence_end, info.sequence_end);
      }
    }

    const int num_s = tp.num_sequences();
    tp.child_infosets_.assign(num_s, {});
    for (int k = 0; k < num_j; ++k) {
      tp.child_infosets_[tp.infosets_[k].parent_sequence].push_back(k);
    }
    tp.descendants_.assign(num_s, {0, 0});
    tp.descendants_[kEmptySequence] = {1, num_s};
    for (int s = 1; s < num_s; ++s) {
      const auto& kids = tp.child_infosets_[s];
      if (kids.empty()) {
        tp.descendants_[s] = {num_s, num_s};
      } else {
        tp.descendants_[s] = {tp.infosets_[kids.front()].first_sequence,
                              tp.infosets_[kids.back()].sequence_end};
      }
    }
  }

  for (int id = 0; id < n; ++id) {
    if (nodes[id].kind != NodeKind::kTerminal) continue;
    g.terminals_.push_back(id);
  }
  g.terminal_index_.assign(n, -1);
  for (int z = 0; z < static_cast<int>(g.terminals_.size()); ++z) {
    const int id = g.terminals_[z];
    g.terminal_index_[id] = z;
    g.chance_reach_.push_back(reach[id]);
    for (int i = 0; i < num_players; ++i) {
      const RawSequence rs = node_path[static_cast<std::size_t>(id) * num_players + i];
      int s = kEmptySequence;
      if (rs.infoset >= 0) {
        s = g.treeplexes_[i].infosets_[raw_to_id[i][rs.infoset]].first_sequence + rs.action;
      }
      g.terminal_sequence_.push_back(s);
    }
  }
  g.nodes_ = std::move(nodes);
  return g;
}

double GameTree::payoff_range(int player) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int z = 0; z < static_cast<int>(terminals_.size()); ++z) {
    lo = std::min(lo, payoff(z, player));
    hi = std::max(hi, payoff(z, player));
  }
  return hi - lo;
}

double GameTree::payoff_range() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int z = 0; z < static_cast<int>(terminals_.size()); ++z) {
    for (int i = 0; i < num_players_; ++i) {
      lo = std::min(lo, payoff(z, i));
      hi = std::max(hi, payoff(z, i));
    }
  }
  return hi - lo;
}

bool GameTree::same_structure(const GameTree& other) const {
  if (num_players_ != other.num_players_ || nodes_.size() != other.nodes_.size()) return false;
  if (nodes_[root_].name != other.nodes_[other.root_].name) return false;
  std::map<std::string, const Node*> theirs;
  for (const Node& node : other.nodes_) theirs[node.name] = &node;
  for (const Node& a : nodes_) {
    auto it = theirs.find(a.name);
    if (it == theirs.end()) return false;
    const Node& b = *it->second;
    if (a.kind != b.kind || a.player != b.player || a.infoset_label != b.infoset_label ||
        a.actions != b.actions || a.probabilities != b.probabilities || a.payoffs != b.payoffs ||
        a.children.size() != b.children.size()) {
      return false;
    }
    for (std::size_t c = 0; c < a.children.size(); ++c) {
      if (nodes_[a.children[c]].name != other.nodes_[b.children[c]].name) return false;
    }
  }
  return true;
}

bool sequence_precedes(const GameTree& game, SequenceId sigma, SequenceId sigma_prime) {
  if (sigma.player != sigma_prime.player) {
    throw std::invalid_argument("sequence_precedes: sequences of different players");
  }
  const Treeplex& tp = game.treeplex(sigma.player);
  if (sigma.index < 0 || sigma.index >= tp.num_sequences() || sigma_prime.index < 0 ||
      sigma_prime.index >= tp.num_sequences()) {
    throw std::out_of_range("sequence_precedes: sequence index out of range");
  }
  return tp.precedes(sigma.index, sigma_prime.index);
}

std::vector<int> sequences_at_or_below(const GameTree& game, int player, int infoset) {
  const InfoSet& j = game.treeplex(player).infoset(infoset);
  std::vector<int> out;
  for (int s = j.first_sequence; s < j.sequence_end; ++s) out.push_back(s);
  return out;
}

int find_infoset(const GameTree& game, int player, const std::string& label) {
  const Treeplex& tp = game.treeplex(player);
  for (int j = 0; j < tp.num_infosets(); ++j) {
    if (tp.infoset(j).label == label) return j;
  }
  return kNoInfoSet;
}

int find_sequence(const GameTree& game, int player, const std::string& infoset_label,
                  const std::string& action) {
  const int j = find_infoset(game, player, infoset_label);
  if (j == kNoInfoSet) throw std::out_of_range("no infoset '" + infoset_label + "'");
  const InfoSet& info = game.treeplex(player).infoset(j);
  for (int a = 0; a < info.num_actions(); ++a) {
    if (info.actions[a] == action) return info.sequence(a);
  }
  throw std::out_of_range("no action '" + action + "' at infoset '" + infoset_label + "'");
}

}  // namespace efce
