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
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "efce/game.hpp"
#include "efce/strategies.hpp"
#include "efce/trigger_deviations.hpp"

namespace efce {

// Uniform distribution over the joint profiles recorded so far, stored as
// the per-trigger tables the EFCE gap needs:
//   coefficients(i, s)[sigma] = sum_t pi_i[s] * sum_{z : sigma_i(z) = sigma} alpha_t(z)
//   follow(i, s)              = sum_t sum_{z : sigma_i(z) >= s, pi_i[sigma_i(z)] = 1} alpha_t(z)
// with alpha_t(z) = u_i(z) p_c(z) prod_{k != i} pi_k[sigma_k(z)].
class EmpiricalFrequency {
 public:
  static constexpr double kProfileLimit = 200;

  // Raw profiles are kept when the game has at most kProfileLimit joint
  // pure profiles.
  explicit EmpiricalFrequency(const GameTree& game);

  void accumulate(const JointProfile& profile);

  long count() const { return count_; }
  // Indexed over Sigma_j of the trigger's infoset.
  const Eigen::VectorXd& coefficients(int player, int trigger) const {
    return coefficients_[player][trigger - 1];
  }
  double follow(int player, int trigger) const { return follow_[player][trigger - 1]; }

  bool has_profiles() const { return keep_profiles_; }
  const std::vector<std::pair<JointProfile, long>>& profiles() const { return profiles_; }

 private:
  const GameTree* game_;
  long count_ = 0;
  std::vector<std::vector<Eigen::VectorXd>> coefficients_;
  std::vector<Eigen::VectorXd> follow_;
  bool keep_profiles_ = false;
  std::vector<std::pair<JointProfile, long>> profiles_;
  std::unordered_map<std::string, std::size_t> profile_index_;
};

struct GapReport {
  struct PlayerGap {
    double epsilon = 0.0;
    int trigger = kEmptySequence;   // kEmptySequence if the player never acts
    Eigen::VectorXd continuation;   // over Sigma_j of the trigger
  };
  std::vector<PlayerGap> players;
  double epsilon = 0.0;
};

// Largest gain of any trigger agent over following recommendations, per
// player and overall. Requires count() >= 1.
GapReport efce_gap(const GameTree& game, const EmpiricalFrequency& frequency);

struct RunConfig {
  long iterations = 1;
  std::uint64_t seed = 0;
  long gap_every = 100;
  double delta = 0.01;
  StationaryOptions stationary;
  int threads = 1;
};

struct RegretRow {
  long t = 0;
  int player = 0;
  double phi_regret = 0.0;
  double phi_regret_bound = 0.0;
  std::optional<double> efce_gap;
  std::optional<double> gap_bound;
};

struct RunLog {
  std::vector<RegretRow> rows;
  long iterations = 0;
  std::vector<double> final_regret;
  std::vector<double> final_regret_bound;
  GapReport final_gap;
  double final_gap_bound = 0.0;

  static constexpr const char* kCsvHeader =
      "t,player,phi_regret,phi_regret_bound,efce_gap,gap_bound";

  // One row per (t, player), players numbered from 1, 12 significant digits.
  std::string to_csv() const;
  std::string summary(const GameTree& game, const RunConfig& config) const;
};

// D (2|H| + sqrt(8 ln(n / delta))) / sqrt(t) with D the payoff range over
// all players.
double gap_bound(const GameTree& game, double delta, long t);
// 2 D_i |Sigma_i| sqrt(t).
// Same shape with max_i |Sigma_i| in place of the node count.
double gap_bound_sequences(const GameTree& game, double delta, long t);
double phi_regret_bound(const GameTree& game, int player, long t);

// Self-play: every player runs the sampled trigger-regret minimizer and
// observes its utility vector against the others' sampled strategies.
// `frequency`, if given, receives every sampled profile.
RunLog run(const GameTree& game, const RunConfig& config,
           EmpiricalFrequency* frequency = nullptr);

}  // namespace efce
