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

#include "efce/regret_minimizers.hpp"

#include <stdexcept>

#include "efce/errors.hpp"

namespace efce {

RegretMatching::RegretMatching(int dim)
    : regrets_(Eigen::VectorXd::Zero(dim)), last_(Eigen::VectorXd::Zero(dim)) {
  if (dim < 1) throw std::invalid_argument("RegretMatching: dimension must be positive");
}

const Eigen::VectorXd& RegretMatching::next() {
  if (pending_) throw CallOrderError("RegretMatching::next called twice without observe");
  last_ = regrets_.cwiseMax(0.0);
  const double total = last_.sum();
  if (total > 0.0) {
    last_ /= total;
  } else {
    last_.setConstant(1.0 / dim());
  }
  pending_ = true;
  return last_;
}

void RegretMatching::observe(const Eigen::Ref<const Eigen::VectorXd>& utility) {
  if (!pending_) throw CallOrderError("RegretMatching::observe called before next");
  if (utility.size() != dim()) throw std::invalid_argument("RegretMatching: size mismatch");
  regrets_.array() += utility.array() - utility.dot(last_);
  pending_ = false;
}

CounterfactualRegretMinimizer::CounterfactualRegretMinimizer(const GameTree& game,
                                                             const StrategyScope& scope)
    : treeplex_(&game.treeplex(scope.player)),
      scope_(scope),
      offset_(scope_offset(game, scope)),
      size_(scope_size(game, scope)) {
  if (scope.full_tree()) {
    begin_ = 0;
    end_ = treeplex_->num_infosets();
  } else {
    begin_ = scope.root_infoset;
    end_ = treeplex_->infoset(scope.root_infoset).subtree_end;
  }
  local_.reserve(end_ - begin_);
  for (int j = begin_; j < end_; ++j) local_.emplace_back(treeplex_->infoset(j).num_actions());
  last_ = {scope_, Eigen::VectorXd::Zero(size_)};
  value_.assign(end_ - begin_, 0.0);
}

const SequenceFormStrategy& CounterfactualRegretMinimizer::next() {
  if (pending_) throw CallOrderError("CFR next called twice without observe");
  Eigen::VectorXd& q = last_.values;
  if (scope_.full_tree()) q[0] = 1.0;
  for (int j = begin_; j < end_; ++j) {
    const InfoSet& info = treeplex_->infoset(j);
    const double mass = j == scope_.root_infoset ? 1.0 : q[info.parent_sequence - offset_];
    const Eigen::VectorXd& local = local_[j - begin_].next();
    for (int a = 0; a < info.num_actions(); ++a) q[info.sequence(a) - offset_] = mass * local[a];
  }
  pending_ = true;
  return last_;
}

void CounterfactualRegretMinimizer::observe(const Eigen::Ref<const Eigen::VectorXd>& utility) {
  if (!pending_) throw CallOrderError("CFR observe called before next");
  if (utility.size() != size_) throw std::invalid_argument("CFR: utility size mismatch");
  Eigen::VectorXd cf;
  for (int j = end_ - 1; j >= begin_; --j) {
    const InfoSet& info = treeplex_->infoset(j);
    RegretMatching& rm = local_[j - begin_];
    cf.resize(info.num_actions());
    for (int a = 0; a < info.num_actions(); ++a) {
      const int s = info.sequence(a);
      double v = utility[s - offset_];
      for (int c : treeplex_->child_infosets(s)) v += value_[c - begin_];
      cf[a] = v;
    }
    value_[j - begin_] = cf.dot(rm.last());
    rm.observe(cf);
  }
  pending_ = false;
}

}  // namespace efce
