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

#include "support/oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

namespace efce::oracle {
namespace {

// Nearest decision node of `player` strictly above `node`, paired with the
// action taken from it, as a sequence id. Empty if none.
int path_sequence(const GameTree& game, int node, int player) {
  int child = node;
  for (int id = game.node(node).parent; id >= 0; child = id, id = game.node(id).parent) {
    const Node& n = game.node(id);
    if (n.kind != NodeKind::kDecision || n.player != player) continue;
    const int a = static_cast<int>(std::find(n.children.begin(), n.children.end(), child) -
                                   n.children.begin());
    return game.treeplex(player).infoset(game.node_infoset(id)).sequence(a);
  }
  return kEmptySequence;
}

double path_chance(const GameTree& game, int node) {
  double p = 1.0;
  int child = node;
  for (int id = game.node(node).parent; id >= 0; child = id, id = game.node(id).parent) {
    const Node& n = game.node(id);
    if (n.kind != NodeKind::kChance) continue;
    const auto it = std::find(n.children.begin(), n.children.end(), child);
    p *= n.probabilities[it - n.children.begin()];
  }
  return p;
}

double walk(const GameTree& game, int player, const JointProfile& profile, int id) {
  const Node& n = game.node(id);
  switch (n.kind) {
    case NodeKind::kTerminal:
      return n.payoffs[player];
    case NodeKind::kChance: {
      double v = 0.0;
      for (std::size_t a = 0; a < n.children.size(); ++a) {
        v += n.probabilities[a] * walk(game, player, profile, n.children[a]);
      }
      return v;
    }
    case NodeKind::kDecision: {
      const InfoSet& j = game.treeplex(n.player).infoset(game.node_infoset(id));
      for (int a = 0; a < j.num_actions(); ++a) {
        if (profile[n.player].values[j.sequence(a)] == 1.0) {
          return walk(game, player, profile, n.children[a]);
        }
      }
      return 0.0;
    }
  }
  return 0.0;
}

}  // namespace

PathOracle::PathOracle(const GameTree& game, int player) : game_(&game), player_(player) {
  const Treeplex& tp = game.treeplex(player);
  ancestors_.assign(tp.num_sequences(), {});
  parent_.assign(tp.num_infosets(), kEmptySequence);
  for (int j = 0; j < tp.num_infosets(); ++j) {
    const InfoSet& info = tp.infoset(j);
    std::vector<int> path;
    int child = info.nodes.front();
    for (int id = game.node(child).parent; id >= 0; child = id, id = game.node(id).parent) {
      const Node& n = game.node(id);
      if (n.kind != NodeKind::kDecision || n.player != player) continue;
      const int a = static_cast<int>(std::find(n.children.begin(), n.children.end(), child) -
                                     n.children.begin());
      path.push_back(tp.infoset(game.node_infoset(id)).sequence(a));
    }
    if (!path.empty()) parent_[j] = path.front();
    for (int a = 0; a < info.num_actions(); ++a) ancestors_[info.sequence(a)] = path;
  }
}

bool PathOracle::succeeds_or_equal(int s_prime, int s) const {
  if (s == s_prime || s == kEmptySequence) return true;
  const auto& anc = ancestors_[s_prime];
  return std::find(anc.begin(), anc.end(), s) != anc.end();
}

bool PathOracle::at_or_below(int s, int j) const {
  if (s == kEmptySequence) return false;
  const Treeplex& tp = game_->treeplex(player_);
  if (tp.sequence_infoset(s) == j) return true;
  for (int anc : ancestors_[s]) {
    if (tp.sequence_infoset(anc) == j) return true;
  }
  return false;
}

std::vector<Eigen::VectorXd> enumerate_pure(const GameTree& game, const StrategyScope& scope) {
  const Treeplex& tp = game.treeplex(scope.player);
  const PathOracle paths(game, scope.player);
  const int offset = scope_offset(game, scope);

  // Infosets in scope, shallower ones (by path length) first.
  std::vector<int> infosets;
  for (int j = 0; j < tp.num_infosets(); ++j) {
    if (scope.full_tree() || paths.at_or_below(tp.infoset(j).first_sequence, scope.root_infoset)) {
      infosets.push_back(j);
    }
  }
  auto depth = [&](int j) {
    int d = 0;
    for (int s = paths.parent(j); s != kEmptySequence; s = paths.parent(tp.sequence_infoset(s))) ++d;
    return d;
  };
  std::stable_sort(infosets.begin(), infosets.end(),
                   [&](int a, int b) { return depth(a) < depth(b); });

  std::vector<Eigen::VectorXd> out;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(scope_size(game, scope));
  if (scope.full_tree()) v[0] = 1.0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == infosets.size()) {
      if (out.size() >= (1u << 22)) throw std::runtime_error("enumerate_pure: too many strategies");
      out.push_back(v);
      return;
    }
    const int j = infosets[k];
    const int p = paths.parent(j);
    const bool reached = j == scope.root_infoset || p == kEmptySequence || v[p - offset] == 1.0;
    if (!reached) {
      rec(k + 1);
      return;
    }
    for (int a = 0; a < tp.infoset(j).num_actions(); ++a) {
      const int s = tp.infoset(j).sequence(a) - offset;
      v[s] = 1.0;
      rec(k + 1);
      v[s] = 0.0;
    }
  };
  rec(0);
  return out;
}

double walk_utility(const GameTree& game, int player, const JointProfile& profile) {
  return walk(game, player, profile, game.root());
}

Eigen::MatrixXd dense_trigger_matrix(const GameTree& game, int player, int trigger,
                                     const Eigen::VectorXd& continuation) {
  const Treeplex& tp = game.treeplex(player);
  const PathOracle paths(game, player);
  const int j = tp.sequence_infoset(trigger);
  const int first = tp.infoset(j).first_sequence;
  const int n = tp.num_sequences();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      if (!paths.succeeds_or_equal(c, trigger) && r == c) {
        M(r, c) = 1.0;
      } else if (c == trigger && paths.at_or_below(r, j)) {
        M(r, c) = continuation[r - first];
      }
    }
  }
  return M;
}

std::vector<double> brute_force_gap(const GameTree& game,
                                    const std::vector<std::pair<JointProfile, long>>& support) {
  const int n = game.num_players();
  double total = 0.0;
  for (const auto& [profile, count] : support) total += static_cast<double>(count);

  struct Leaf {
    int id;
    double chance;
    std::vector<int> seq;
  };
  std::vector<Leaf> leaves;
  for (int id = 0; id < game.num_nodes(); ++id) {
    if (game.node(id).kind != NodeKind::kTerminal) continue;
    Leaf leaf{id, path_chance(game, id), {}};
    for (int k = 0; k < n; ++k) leaf.seq.push_back(path_sequence(game, id, k));
    leaves.push_back(std::move(leaf));
  }

  std::vector<double> gaps(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const Treeplex& tp = game.treeplex(i);
    const PathOracle paths(game, i);
    bool first_gap = true;
    for (int trigger = 1; trigger < tp.num_sequences(); ++trigger) {
      const int j = tp.sequence_infoset(trigger);
      const int first = tp.infoset(j).first_sequence;

      double follow = 0.0;
      std::vector<double> triggered_reach(leaves.size(), 0.0);
      for (std::size_t z = 0; z < leaves.size(); ++z) {
        const Leaf& leaf = leaves[z];
        const double u = game.node(leaf.id).payoffs[i];
        double r_mu = 0.0;
        double r_trig = 0.0;
        for (const auto& [profile, count] : support) {
          const double mu = static_cast<double>(count) / total;
          bool others = true;
          for (int k = 0; k < n; ++k) {
            if (k != i && profile[k].values[leaf.seq[k]] != 1.0) others = false;
          }
          if (!others) continue;
          if (profile[i].values[leaf.seq[i]] == 1.0) r_mu += mu;
          if (profile[i].values[trigger] == 1.0) r_trig += mu;
        }
        if (paths.succeeds_or_equal(leaf.seq[i], trigger) && leaf.seq[i] != kEmptySequence) {
          follow += u * leaf.chance * r_mu;
        }
        triggered_reach[z] = r_trig;
      }
      for (const Eigen::VectorXd& pi_hat :
           enumerate_pure(game, StrategyScope::subtree(i, j))) {
        double value = 0.0;
        for (std::size_t z = 0; z < leaves.size(); ++z) {
          const Leaf& leaf = leaves[z];
          if (!paths.at_or_below(leaf.seq[i], j)) continue;
          value += game.node(leaf.id).payoffs[i] * leaf.chance * triggered_reach[z] *
                   pi_hat[leaf.seq[i] - first];
        }
        const double gap = value - follow;
        if (first_gap || gap > gaps[i]) {
          gaps[i] = gap;
          first_gap = false;
        }
      }
    }
  }
  return gaps;
}

double enumerated_regret(const GameTree& game, const StrategyScope& scope,
                         const std::vector<Eigen::VectorXd>& utilities,
                         const std::vector<Eigen::VectorXd>& points) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(scope_size(game, scope));
  double realized = 0.0;
  for (std::size_t t = 0; t < utilities.size(); ++t) {
    sum += utilities[t];
    realized += utilities[t].dot(points[t]);
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const Eigen::VectorXd& pi : enumerate_pure(game, scope)) best = std::max(best, sum.dot(pi));
  return best - realized;
}

double enumerated_trigger_regret(const GameTree& game, int player,
                                 const std::vector<Eigen::VectorXd>& utilities,
                                 const std::vector<Eigen::VectorXd>& points) {
  const Treeplex& tp = game.treeplex(player);
  const int n = tp.num_sequences();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t t = 0; t < utilities.size(); ++t) A += utilities[t] * points[t].transpose();
  const double realized = A.trace();
  double best = -std::numeric_limits<double>::infinity();
  for (int trigger = 1; trigger < n; ++trigger) {
    const int j = tp.sequence_infoset(trigger);
    for (const Eigen::VectorXd& y : enumerate_pure(game, StrategyScope::subtree(player, j))) {
      const Eigen::MatrixXd M = dense_trigger_matrix(game, player, trigger, y);
      best = std::max(best, M.cwiseProduct(A).sum() - realized);
    }
  }
  return best;
}

double utility_range(const GameTree& game, const StrategyScope& scope, const Eigen::VectorXd& l) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Eigen::VectorXd& pi : enumerate_pure(game, scope)) {
    lo = std::min(lo, l.dot(pi));
    hi = std::max(hi, l.dot(pi));
  }
  return hi - lo;
}

Eigen::VectorXd random_sequence_form(const GameTree& game, const StrategyScope& scope, Rng& rng) {
  const Treeplex& tp = game.treeplex(scope.player);
  const int offset = scope_offset(game, scope);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(scope_size(game, scope));
  if (scope.full_tree()) q[0] = 1.0;
  const int begin = scope.full_tree() ? 0 : scope.root_infoset;
  const int end = scope.full_tree() ? tp.num_infosets() : tp.infoset(scope.root_infoset).subtree_end;
  for (int j = begin; j < end; ++j) {
    const InfoSet& info = tp.infoset(j);
    const double mass = j == scope.root_infoset ? 1.0 : q[info.parent_sequence - offset];
    Eigen::VectorXd w(info.num_actions());
    for (int a = 0; a < info.num_actions(); ++a) {
      w[a] = uniform01(rng) < 0.2 ? 0.0 : uniform01(rng);
    }
    if (w.sum() == 0.0) w[rng() % info.num_actions()] = 1.0;
    w /= w.sum();
    for (int a = 0; a < info.num_actions(); ++a) q[info.sequence(a) - offset] = mass * w[a];
  }
  return q;
}

ConvexTriggerDeviation random_deviation(const GameTree& game, int player, int terms, Rng& rng) {
  const Treeplex& tp = game.treeplex(player);
  if (tp.num_sequences() < 2) throw std::invalid_argument("random_deviation: player never acts");
  std::vector<double> weights(terms);
  double total = 0.0;
  for (double& w : weights) total += (w = uniform01(rng) + 1e-3);
  ConvexTriggerDeviation phi;
  phi.player = player;
  for (double w : weights) {
    const int trigger = 1 + static_cast<int>(rng() % (tp.num_sequences() - 1));
    const StrategyScope scope = StrategyScope::subtree(player, tp.sequence_infoset(trigger));
    phi.add(trigger, w / total, random_sequence_form(game, scope, rng));
  }
  return phi;
}

}  // namespace efce::oracle
