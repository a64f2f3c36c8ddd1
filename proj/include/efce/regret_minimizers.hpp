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

#include <vector>

#include <Eigen/Dense>

#include "efce/game.hpp"
#include "efce/strategies.hpp"

namespace efce {

// Regret matching over the simplex of dimension m. next() and observe()
// must alternate, starting with next().
class RegretMatching {
 public:
  explicit RegretMatching(int dim);

  int dim() const { return static_cast<int>(regrets_.size()); }

  // [r]+ / |[r]+|_1, or uniform when no regret is positive.
  const Eigen::VectorXd& next();
  // r[a] += u[a] - <u, last output>.
  void observe(const Eigen::Ref<const Eigen::VectorXd>& utility);

  const Eigen::VectorXd& regrets() const { return regrets_; }
  const Eigen::VectorXd& last() const { return last_; }

 private:
  Eigen::VectorXd regrets_;
  Eigen::VectorXd last_;
  bool pending_ = false;
};

// Vanilla counterfactual regret minimization over a treeplex (the full one
// or a subtree), one regret matcher per information set. Outputs are the
// current iterates.
class CounterfactualRegretMinimizer {
 public:
  CounterfactualRegretMinimizer(const GameTree& game, const StrategyScope& scope);

  const StrategyScope& scope() const { return scope_; }
  int size() const { return size_; }

  const SequenceFormStrategy& next();
  // `utility` is indexed like the strategies this object emits.
  void observe(const Eigen::Ref<const Eigen::VectorXd>& utility);

  const SequenceFormStrategy& last() const { return last_; }

 private:
  const Treeplex* treeplex_;
  StrategyScope scope_;
  int offset_;
  int size_;
  int begin_;
  int end_;
  std::vector<RegretMatching> local_;
  SequenceFormStrategy last_;
  std::vector<double> value_;
  bool pending_ = false;
};

}  // namespace efce
