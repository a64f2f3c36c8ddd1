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

#include "efce/strategies.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace efce {
namespace {

// Infosets [begin, end) covered by the scope.
std::pair<int, int> infoset_range(const GameTree& game, const StrategyScope& scope) {
  const Treeplex& tp = game.treeplex(scope.player);
  if (scope.full_tree()) return {0, tp.num_infosets()};
  return {scope.root_infoset, tp.infoset(scope.root_infoset).subtree_end};
}

// Mass flowing into infoset j, read from local values. The root of a
// subtree scope receives mass 1.
double parent_mass(const Treeplex& tp, const StrategyScope& scope, int offset, int j,
                   const Eigen::VectorXd& v) {
  if (j == scope.root_infoset) return 1.0;
  const int p = tp.infoset(j).parent_sequence;
  if (p == kEmptySequence && scope.full_tree()) return v[0];
  return v[p - offset];
}

}  // namespace

int scope_offset(const GameTree& game, const StrategyScope& scope) {
  if (scope.full_tree()) return 0;
  return game.treeplex(scope.player).infoset(scope.root_infoset).first_sequence;
}

int scope_size(const GameTree& game, const StrategyScope& scope) {
  const Treeplex& tp = game.treeplex(scope.player);
  if (scope.full_tree()) return tp.num_sequences();
  const InfoSet& j = tp.infoset(scope.root_infoset);
  return j.sequence_end - j.first_sequence;
}

SequenceFormStrategy uniform_strategy(const GameTree& game, const StrategyScope& scope) {
  const Treeplex& tp = game.treeplex(scope.player);
  const int offset = scope_offset(game, scope);
  SequenceFormStrategy q{scope, Eigen::VectorXd::Zero(scope_size(game, scope))};
  if (scope.full_tree()) q.values[0] = 1.0;
  const auto [begin, end] = infoset_range(game, scope);
  for (int j = begin; j < end; ++j) {
    const InfoSet& info = tp.infoset(j);
    const double mass = parent_mass(tp, scope, offset, j, q.values);
    for (int a = 0; a < info.num_actions(); ++a) {
      q.values[info.sequence(a) - offset] = mass / info.num_actions();
    }
  }
  return q;
}

bool is_sequence_form(const GameTree& game, const SequenceFormStrategy& q, double tol) {
  const Treeplex& tp = game.treeplex(q.scope.player);
  if (q.values.size() != scope_size(game, q.scope)) return false;
  for (double v : q.values) {
    if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) return false;
  }
  if (q.scope.full_tree() && std::abs(q.values[0] - 1.0) > tol) return false;
  const int offset = scope_offset(game, q.scope);
  const auto [begin, end] = infoset_range(game, q.scope);
  for (int j = begin; j < end; ++j) {
    const InfoSet& info = tp.infoset(j);
    double total = 0.0;
    for (int a = 0; a < info.num_actions(); ++a) total += q.values[info.sequence(a) - offset];
    if (std::abs(total - parent_mass(tp, q.scope, offset, j, q.values)) > tol) return false;
  }
  return true;
}

bool is_deterministic(const GameTree& game, const SequenceFormStrategy& q, double tol) {
  if (!is_sequence_form(game, q, tol)) return false;
  for (double v : q.values) {
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
  }
  return true;
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

DeterministicStrategy sample_pure(const GameTree& game, const SequenceFormStrategy& q, Rng& rng) {
  if (!q.scope.full_tree()) throw std::invalid_argument("sample_pure: full-tree scope required");
  const Treeplex& tp = game.treeplex(q.scope.player);
  DeterministicStrategy pi{q.scope, Eigen::VectorXd::Zero(q.values.size())};
  pi.values[0] = 1.0;
  for (int j = 0; j < tp.num_infosets(); ++j) {
    const InfoSet& info = tp.infoset(j);
    if (pi.values[info.parent_sequence] == 0.0) continue;
    const double mass = q.values[info.parent_sequence];
    int pick = 0;
    if (mass > 0.0) {
      const double u = uniform01(rng) * mass;
      double acc = 0.0;
      pick = -1;
      for (int a = 0; a < info.num_actions(); ++a) {
        const double w = q.values[info.sequence(a)];
        acc += w;
        if (w > 0.0) {
          pick = a;
          if (u < acc) break;
        }
      }
      if (pick < 0) pick = 0;
    }
    pi.values[info.sequence(pick)] = 1.0;
  }
  return pi;
}

UtilityVector utility_vector(const GameTree& game, int player, const JointProfile& profile) {
  UtilityVector out;
  out.player = player;
  out.coefficients = Eigen::VectorXd::Zero(game.treeplex(player).num_sequences());
  out.range = game.payoff_range(player);
  const int n = game.num_players();
  const int num_z = static_cast<int>(game.terminals().size());
  for (int z = 0; z < num_z; ++z) {
    double w = game.payoff(z, player) * game.chance_reach(z);
    for (int i = 0; i < n && w != 0.0; ++i) {
      if (i != player) w *= profile[i].values[game.terminal_sequence(z, i)];
    }
    out.coefficients[game.terminal_sequence(z, player)] += w;
  }
  return out;
}

double evaluate(const UtilityVector& utility, const SequenceFormStrategy& q) {
  if (q.scope.player != utility.player || !q.scope.full_tree() ||
      q.values.size() != utility.coefficients.size()) {
    throw std::invalid_argument("evaluate: scope mismatch");
  }
  return utility.coefficients.dot(q.values);
}

BestResponse best_response(const GameTree& game, const StrategyScope& scope,
                           const Eigen::Ref<const Eigen::VectorXd>& coefficients) {
  const Treeplex& tp = game.treeplex(scope.player);
  const int offset = scope_offset(game, scope);
  const int size = scope_size(game, scope);
  if (coefficients.size() != size) throw std::invalid_argument("best_response: size mismatch");
  const auto [begin, end] = infoset_range(game, scope);

  // value[j] = best continuation value at infoset j; children have larger
  // ids so a reverse sweep sees them first.
  std::vector<double> value(tp.num_infosets(), 0.0);
  std::vector<int> choice(tp.num_infosets(), 0);
  for (int j = end - 1; j >= begin; --j) {
    const InfoSet& info = tp.infoset(j);
    double best = 0.0;
    for (int a = 0; a < info.num_actions(); ++a) {
      const int s = info.sequence(a);
      double v = coefficients[s - offset];
      for (int c : tp.child_infosets(s)) v += value[c];
      if (a == 0 || v > best) {
        best = v;
        choice[j] = a;
      }
    }
    value[j] = best;
  }

  BestResponse br;
  br.strategy = {scope, Eigen::VectorXd::Zero(size)};
  if (scope.full_tree()) {
    br.strategy.values[0] = 1.0;
    br.value = coefficients[0];
    for (int c : tp.child_infosets(kEmptySequence)) br.value += value[c];
  } else {
    br.value = value[scope.root_infoset];
  }
  for (int j = begin; j < end; ++j) {
    if (parent_mass(tp, scope, offset, j, br.strategy.values) == 0.0) continue;
    br.strategy.values[tp.infoset(j).sequence(choice[j]) - offset] = 1.0;
  }
  return br;
}

double count_pure_strategies(const GameTree& game, const StrategyScope& scope) {
  const Treeplex& tp = game.treeplex(scope.player);
  const auto [begin, end] = infoset_range(game, scope);
  std::vector<double> count(tp.num_infosets(), 1.0);
  for (int j = end - 1; j >= begin; --j) {
    const InfoSet& info = tp.infoset(j);
    double total = 0.0;
    for (int a = 0; a < info.num_actions(); ++a) {
      double prod = 1.0;
      for (int c : tp.child_infosets(info.sequence(a))) prod *= count[c];
      total += prod;
    }
    count[j] = total;
  }
  if (!scope.full_tree()) return count[scope.root_infoset];
  double prod = 1.0;
  for (int c : tp.child_infosets(kEmptySequence)) prod *= count[c];
  return prod;
}

Rng player_stream(std::uint64_t master_seed, int player) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(player)};
  return Rng(seq);
}

std::string format_strategy(const GameTree& game, const SequenceFormStrategy& q) {
  const Treeplex& tp = game.treeplex(q.scope.player);
  const int offset = scope_offset(game, q.scope);
  std::ostringstream out;
  for (int k = 0; k < q.values.size(); ++k) {
    const int s = k + offset;
    if (k) out << ' ';
    if (s == kEmptySequence) {
      out << "{}";
    } else {
      out << tp.infoset(tp.sequence_infoset(s)).actions[tp.sequence_action(s)];
    }
    out << '=' << q.values[k];
  }
  return out.str();
}

}  // namespace efce
