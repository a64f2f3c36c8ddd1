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

#include "efce/trigger_regret.hpp"

#include "efce/errors.hpp"

namespace efce {
namespace {

// sum over sigma >= trigger of a[sigma] * b[sigma].
double below(const Treeplex& tp, int trigger, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double total = a[trigger] * b[trigger];
  const int begin = tp.descendants_begin(trigger);
  const int end = tp.descendants_end(trigger);
  if (end > begin) total += a.segment(begin, end - begin).dot(b.segment(begin, end - begin));
  return total;
}

}  // namespace

double RankOneFunctional::value(const GameTree& game, int player, int trigger,
                                const Eigen::VectorXd& y) const {
  const Treeplex& tp = game.treeplex(player);
  const InfoSet& j = tp.infoset(tp.sequence_infoset(trigger));
  const int size = j.sequence_end - j.first_sequence;
  return utility.dot(point) - below(tp, trigger, utility, point) +
         point[trigger] * utility.segment(j.first_sequence, size).dot(y);
}

TriggerContinuationMinimizer::TriggerContinuationMinimizer(const GameTree& game, int player,
                                                           int trigger)
    : trigger_(trigger),
      first_(game.treeplex(player).infoset(game.treeplex(player).sequence_infoset(trigger))
                 .first_sequence),
      cfr_(game, StrategyScope::subtree(player, game.treeplex(player).sequence_infoset(trigger))),
      last_utility_(Eigen::VectorXd::Zero(cfr_.size())) {}

const Eigen::VectorXd& TriggerContinuationMinimizer::next() { return cfr_.next().values; }

void TriggerContinuationMinimizer::observe(const RankOneFunctional& f) {
  last_utility_ = f.utility.segment(first_, cfr_.size()) * f.point[trigger_];
  cfr_.observe(last_utility_);
}

TriggerHullMinimizer::TriggerHullMinimizer(const GameTree& game, int player)
    : game_(&game),
      player_(player),
      lambda_(std::max(1, game.treeplex(player).num_sequences() - 1)) {
  const int num = game.treeplex(player).num_sequences();
  if (num < 2) throw std::invalid_argument("player has no information sets");
  triggers_.reserve(num - 1);
  for (int s = 1; s < num; ++s) triggers_.emplace_back(game, player, s);
  lambda_utility_ = Eigen::VectorXd::Zero(num - 1);
  last_.player = player;
}

const ConvexTriggerDeviation& TriggerHullMinimizer::next() {
  const Eigen::VectorXd& lambda = lambda_.next();
  last_.entries.clear();
  for (int k = 0; k < num_triggers(); ++k) {
    const Eigen::VectorXd& y = triggers_[k].next();
    last_.add(triggers_[k].trigger(), lambda[k], y);
  }
  return last_;
}

void TriggerHullMinimizer::observe(const RankOneFunctional& f) {
  const Treeplex& tp = game_->treeplex(player_);
  const double total = f.utility.dot(f.point);
  for (int k = 0; k < num_triggers(); ++k) {
    const int trigger = triggers_[k].trigger();
    const InfoSet& j = tp.infoset(tp.sequence_infoset(trigger));
    const int size = j.sequence_end - j.first_sequence;
    lambda_utility_[k] = total - below(tp, trigger, f.utility, f.point) +
                         f.point[trigger] * f.utility.segment(j.first_sequence, size).dot(
                                                triggers_[k].last());
    triggers_[k].observe(f);
  }
  lambda_.observe(lambda_utility_);
}

MixedTriggerMinimizer::MixedTriggerMinimizer(const GameTree& game, int player,
                                             const StationaryOptions& options)
    : game_(&game), options_(options), hull_(game, player) {}

const SequenceFormStrategy& MixedTriggerMinimizer::next() {
  if (pending_) throw CallOrderError("MixedTriggerMinimizer::next called twice without observe");
  deviation_ = hull_.next();
  last_ = fixed_point(*game_, deviation_, options_);
  pending_ = true;
  return last_;
}

void MixedTriggerMinimizer::observe(const Eigen::Ref<const Eigen::VectorXd>& utility) {
  if (!pending_) throw CallOrderError("MixedTriggerMinimizer::observe called before next");
  if (utility.size() != last_.values.size()) {
    throw std::invalid_argument("MixedTriggerMinimizer: utility size mismatch");
  }
  hull_.observe({utility, last_.values});
  pending_ = false;
}

PureTriggerMinimizer::PureTriggerMinimizer(const GameTree& game, int player, Rng rng,
                                           const StationaryOptions& options)
    : game_(&game), mixed_(game, player, options), rng_(std::move(rng)) {}

const DeterministicStrategy& PureTriggerMinimizer::next() {
  last_ = sample_pure(*game_, mixed_.next(), rng_);
  return last_;
}

void PureTriggerMinimizer::observe(const Eigen::Ref<const Eigen::VectorXd>& utility) {
  mixed_.observe(utility);
}

PhiRegretMeter::PhiRegretMeter(const GameTree& game, int player) : game_(&game), player_(player) {
  const Treeplex& tp = game.treeplex(player);
  for (int s = 1; s < tp.num_sequences(); ++s) {
    const InfoSet& j = tp.infoset(tp.sequence_infoset(s));
    coefficient_.push_back(Eigen::VectorXd::Zero(j.sequence_end - j.first_sequence));
  }
  follow_ = Eigen::VectorXd::Zero(coefficient_.size());
}

void PhiRegretMeter::observe(const Eigen::Ref<const Eigen::VectorXd>& utility,
                             const Eigen::Ref<const Eigen::VectorXd>& point) {
  const Treeplex& tp = game_->treeplex(player_);
  const Eigen::VectorXd l = utility;
  const Eigen::VectorXd x = point;
  for (int s = 1; s < tp.num_sequences(); ++s) {
    follow_[s - 1] += below(tp, s, l, x);
    if (x[s] == 0.0) continue;
    const InfoSet& j = tp.infoset(tp.sequence_infoset(s));
    coefficient_[s - 1] += x[s] * l.segment(j.first_sequence, j.sequence_end - j.first_sequence);
  }
}

PhiRegretMeter::Result PhiRegretMeter::measure() const {
  const Treeplex& tp = game_->treeplex(player_);
  Result best;
  bool first = true;
  for (int s = 1; s < tp.num_sequences(); ++s) {
    const StrategyScope scope = StrategyScope::subtree(player_, tp.sequence_infoset(s));
    BestResponse br = best_response(*game_, scope, coefficient_[s - 1]);
    const double r = br.value - follow_[s - 1];
    if (first || r > best.regret) {
      best = {r, s, std::move(br.strategy.values)};
      first = false;
    }
  }
  return best;
}

double PhiRegretMeter::regret_against(const ConvexTriggerDeviation& phi) const {
  double total = 0.0;
  for (const auto& e : phi.entries) {
    total += e.weight * (coefficient_[e.trigger - 1].dot(e.continuation) - follow_[e.trigger - 1]);
  }
  return total;
}

}  // namespace efce
