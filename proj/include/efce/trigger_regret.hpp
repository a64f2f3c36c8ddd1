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

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "efce/game.hpp"
#include "efce/regret_minimizers.hpp"
#include "efce/strategies.hpp"
#include "efce/trigger_deviations.hpp"

namespace efce {

// The functional phi -> <utility, phi(point)>, i.e. the rank-one matrix
// utility * point^T paired with the matrix of phi.
struct RankOneFunctional {
  Eigen::VectorXd utility;
  Eigen::VectorXd point;

  Eigen::MatrixXd dense() const { return utility * point.transpose(); }
  // Value on the deviation sigma_hat -> y (y indexed over Sigma_j).
  double value(const GameTree& game, int player, int trigger, const Eigen::VectorXd& y) const;
};

// Regret minimizer over the deviations sigma_hat -> y, y in Q_j, backed by
// CFR on the subtree of j.
class TriggerContinuationMinimizer {
 public:
  TriggerContinuationMinimizer(const GameTree& game, int player, int trigger);

  int trigger() const { return trigger_; }
  const Eigen::VectorXd& next();
  void observe(const RankOneFunctional& f);

  // The subtree utility forwarded to CFR by the last observe().
  const Eigen::VectorXd& last_utility() const { return last_utility_; }
  const Eigen::VectorXd& last() const { return cfr_.last().values; }

 private:
  int trigger_;
  int first_;
  CounterfactualRegretMinimizer cfr_;
  Eigen::VectorXd last_utility_;
};

// Regret minimizer over the convex hull of all trigger deviations of a
// player: one TriggerContinuationMinimizer per trigger, mixed by regret
// matching.
class TriggerHullMinimizer {
 public:
  TriggerHullMinimizer(const GameTree& game, int player);

  int player() const { return player_; }
  int num_triggers() const { return static_cast<int>(triggers_.size()); }

  const ConvexTriggerDeviation& next();
  void observe(const RankOneFunctional& f);

  const Eigen::VectorXd& last_lambda() const { return lambda_.last(); }
  // Utility of each pure-trigger element, fed to the mixing regret matcher.
  const Eigen::VectorXd& last_lambda_utility() const { return lambda_utility_; }
  const TriggerContinuationMinimizer& trigger_minimizer(int k) const { return triggers_[k]; }

 private:
  const GameTree* game_;
  int player_;
  std::vector<TriggerContinuationMinimizer> triggers_;
  RegretMatching lambda_;
  ConvexTriggerDeviation last_;
  Eigen::VectorXd lambda_utility_;
};

// Trigger-regret minimizer over Q: the fixed point of the hull element.
class MixedTriggerMinimizer {
 public:
  MixedTriggerMinimizer(const GameTree& game, int player, const StationaryOptions& options = {});

  const SequenceFormStrategy& next();
  void observe(const Eigen::Ref<const Eigen::VectorXd>& utility);

  const ConvexTriggerDeviation& last_deviation() const { return deviation_; }
  const SequenceFormStrategy& last() const { return last_; }
  const TriggerHullMinimizer& hull() const { return hull_; }

 private:
  const GameTree* game_;
  StationaryOptions options_;
  TriggerHullMinimizer hull_;
  ConvexTriggerDeviation deviation_;
  SequenceFormStrategy last_;
  bool pending_ = false;
};

// Trigger-regret minimizer over Pi: samples the mixed output.
class PureTriggerMinimizer {
 public:
  PureTriggerMinimizer(const GameTree& game, int player, Rng rng,
                       const StationaryOptions& options = {});

  const DeterministicStrategy& next();
  void observe(const Eigen::Ref<const Eigen::VectorXd>& utility);

  const MixedTriggerMinimizer& mixed() const { return mixed_; }
  const DeterministicStrategy& last() const { return last_; }

 private:
  const GameTree* game_;
  MixedTriggerMinimizer mixed_;
  Rng rng_;
  DeterministicStrategy last_;
};

// Exact trigger regret of a sequence of (utility, point) pairs:
// max over triggers sigma_hat and continuations pi_hat of
// sum_t <l_t, f_{sigma_hat -> pi_hat}(x_t)> - <l_t, x_t>.
class PhiRegretMeter {
 public:
  PhiRegretMeter(const GameTree& game, int player);

  void observe(const Eigen::Ref<const Eigen::VectorXd>& utility,
               const Eigen::Ref<const Eigen::VectorXd>& point);

  struct Result {
    double regret = 0.0;
    int trigger = kEmptySequence;
    Eigen::VectorXd continuation;
  };
  Result measure() const;
  double regret() const { return measure().regret; }

  // Cumulative regret against one fixed deviation phi.
  double regret_against(const ConvexTriggerDeviation& phi) const;

 private:
  const GameTree* game_;
  int player_;
  // coefficient_[k] over Sigma_j of trigger k + 1; follow_[k] likewise.
  std::vector<Eigen::VectorXd> coefficient_;
  Eigen::VectorXd follow_;
};

}  // namespace efce
