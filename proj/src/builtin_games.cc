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

#include "efce/builtin_games.hpp"

#include <map>
#include <random>
#include <stdexcept>

namespace efce {
namespace {

class Builder {
 public:
  int decision(const std::string& name, int player, const std::string& infoset,
               std::vector<std::string> actions) {
    Node n;
    n.name = name;
    n.kind = NodeKind::kDecision;
    n.player = player;
    n.infoset_label = infoset;
    n.actions = std::move(actions);
    return add(std::move(n));
  }

  int chance(const std::string& name, std::vector<std::string> outcomes,
             std::vector<double> probabilities) {
    Node n;
    n.name = name;
    n.kind = NodeKind::kChance;
    n.actions = std::move(outcomes);
    n.probabilities = std::move(probabilities);
    return add(std::move(n));
  }

  int leaf(const std::string& name, std::vector<double> payoffs) {
    Node n;
    n.name = name;
    n.kind = NodeKind::kTerminal;
    n.payoffs = std::move(payoffs);
    return add(std::move(n));
  }

  void link(int parent, int child) { nodes_[parent].children.push_back(child); }

  GameTree build(std::string name, int players) {
    return GameTree::from_nodes(std::move(name), players, 0, std::move(nodes_));
  }

 private:
  int add(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Node> nodes_;
};

GameTree fig1_with(const std::string& name, const std::vector<std::array<double, 2>>& u) {
  if (u.size() != 8) throw std::invalid_argument("fig1 needs payoffs for 8 leaves");
  Builder b;
  int k = 0;
  auto leaf = [&](int parent, const std::string& label) {
    b.link(parent, b.leaf(label, {u[k][0], u[k][1]}));
    ++k;
  };
  const int a = b.decision("A", 0, "A", {"1", "2"});
  const int r = b.decision("R", 1, "R", {"left", "right"});
  b.link(a, r);
  const int nb = b.decision("B", 0, "B", {"3", "4"});
  b.link(r, nb);
  leaf(nb, "z3");
  leaf(nb, "z4");
  const int nc = b.decision("C", 0, "C", {"5", "6"});
  b.link(r, nc);
  leaf(nc, "z5");
  leaf(nc, "z6");
  const int s = b.decision("S", 1, "S", {"left", "right"});
  b.link(a, s);
  const int d1 = b.decision("d1", 0, "D", {"7", "8"});
  b.link(s, d1);
  leaf(d1, "z7l");
  leaf(d1, "z8l");
  const int d2 = b.decision("d2", 0, "D", {"7", "8"});
  b.link(s, d2);
  leaf(d2, "z7r");
  leaf(d2, "z8r");
  return b.build(name, 2);
}

}  // namespace

GameTree fig1_game(std::uint64_t payoff_seed) {
  std::mt19937_64 rng(payoff_seed);
  std::vector<std::array<double, 2>> u(8);
  for (auto& row : u) {
    for (double& v : row) v = static_cast<double>(rng() % 3) - 1.0;
  }
  return fig1_with("fig1_seed" + std::to_string(payoff_seed), u);
}

GameTree fig1_game(const std::vector<std::array<double, 2>>& payoffs) {
  return fig1_with("fig1", payoffs);
}

GameTree kuhn3_game() {
  static const char* kCards[] = {"J", "Q", "K"};
  Builder b;
  std::vector<std::string> deals;
  std::vector<double> probs;
  for (int c1 = 0; c1 < 3; ++c1) {
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c1 == c2) continue;
      deals.push_back(std::string(kCards[c1]) + kCards[c2]);
      probs.push_back(1.0 / 6.0);
    }
  }
  const int root = b.chance("deal", deals, probs);
  int d = 0;
  for (int c1 = 0; c1 < 3; ++c1) {
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c1 == c2) continue;
      const std::string deal = deals[d++];
      const std::string h1 = kCards[c1];
      const std::string h2 = kCards[c2];
      const double win = c1 > c2 ? 1.0 : -1.0;
      const int p1 = b.decision(deal, 0, h1, {"check", "bet"});
      b.link(root, p1);

      const int p2c = b.decision(deal + "c", 1, h2 + "c", {"check", "bet"});
      b.link(p1, p2c);
      b.link(p2c, b.leaf(deal + "cc", {win, -win}));
      const int p1cb = b.decision(deal + "cb", 0, h1 + "cb", {"fold", "call"});
      b.link(p2c, p1cb);
      b.link(p1cb, b.leaf(deal + "cbf", {-1.0, 1.0}));
      b.link(p1cb, b.leaf(deal + "cbc", {2 * win, -2 * win}));

      const int p2b = b.decision(deal + "b", 1, h2 + "b", {"fold", "call"});
      b.link(p1, p2b);
      b.link(p2b, b.leaf(deal + "bf", {1.0, -1.0}));
      b.link(p2b, b.leaf(deal + "bc", {2 * win, -2 * win}));
    }
  }
  return b.build("kuhn3", 2);
}

GameTree random_tree_game(const RandomTreeOptions& options) {
  if (options.depth < 0 || options.branching < 1 || options.players < 1) {
    throw std::invalid_argument("random-tree: invalid options");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Builder b;
  int counter = 0;
  // Per player, interned infoset labels so child labels stay short.
  std::vector<std::map<std::string, int>> interned(options.players);

  struct Frame {
    int parent;
    int depth;
    std::vector<std::string> own;  // per player: "r" or "<infoset id>.<action>"
  };
  std::vector<Frame> stack{{-1, 0, std::vector<std::string>(options.players, "r")}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const std::string name = "n" + std::to_string(counter++);
    const bool cut = f.depth >= 2 && unit(rng) < options.leaf_fraction;
    if (f.depth >= options.depth || cut) {
      std::vector<double> u(options.players);
      for (double& v : u) v = static_cast<double>(rng() % 5) - 2.0;
      const int id = b.leaf(name, std::move(u));
      if (f.parent >= 0) b.link(f.parent, id);
      continue;
    }
    const int width = 2 + static_cast<int>(rng() % std::max(1, options.branching - 1));
    int id = -1;
    if (f.depth > 0 && unit(rng) < options.chance_fraction) {
      std::vector<double> w(width);
      double total = 0.0;
      for (double& x : w) total += (x = 1.0 + static_cast<double>(rng() % 4));
      std::vector<std::string> outcomes;
      for (int a = 0; a < width; ++a) {
        w[a] /= total;
        outcomes.push_back("c" + std::to_string(a));
      }
      id = b.chance(name, std::move(outcomes), std::move(w));
      if (f.parent >= 0) b.link(f.parent, id);
      for (int a = width - 1; a >= 0; --a) stack.push_back({id, f.depth + 1, f.own});
      continue;
    }
    const int player = static_cast<int>(rng() % options.players);
    const int signal = static_cast<int>(rng() % 2);
    const std::string label = "p" + std::to_string(player + 1) + ":" + f.own[player] + ":" +
                              std::to_string(width) + ":" + std::to_string(signal);
    auto [it, inserted] =
        interned[player].try_emplace(label, static_cast<int>(interned[player].size()));
    std::vector<std::string> actions;
    for (int a = 0; a < width; ++a) actions.push_back("a" + std::to_string(a));
    id = b.decision(name, player, label, std::move(actions));
    if (f.parent >= 0) b.link(f.parent, id);
    for (int a = width - 1; a >= 0; --a) {
      Frame child{id, f.depth + 1, f.own};
      child.own[player] = std::to_string(it->second) + "." + std::to_string(a);
      stack.push_back(std::move(child));
    }
  }
  return b.build("random-tree_seed" + std::to_string(options.seed), options.players);
}

GameTree builtin_game(const std::string& name, std::optional<std::uint64_t> seed) {
  if (name == "kuhn3") return kuhn3_game();
  if (name == "fig1" || name == "random-tree") {
    if (!seed) throw std::invalid_argument("builtin '" + name + "' requires a seed");
    if (name == "fig1") return fig1_game(*seed);
    RandomTreeOptions options;
    options.seed = *seed;
    return random_tree_game(options);
  }
  throw std::invalid_argument("unknown builtin game '" + name + "'");
}

}  // namespace efce
