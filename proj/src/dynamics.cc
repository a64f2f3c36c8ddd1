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

#include "efce/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "efce/trigger_regret.hpp"

namespace efce {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string profile_key(const JointProfile& profile) {
  std::string key;
  for (const auto& pi : profile) {
    for (double v : pi.values) key.push_back(v != 0.0 ? '1' : '0');
    key.push_back('|');
  }
  return key;
}

void for_each_player(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n);
  for (int i = 0; i < n; ++i) {
    pool.emplace_back([&, i] {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

EmpiricalFrequency::EmpiricalFrequency(const GameTree& game) : game_(&game) {
  const int n = game.num_players();
  coefficients_.resize(n);
  follow_.resize(n);
  double joint = 1.0;
  for (int i = 0; i < n; ++i) {
    const Treeplex& tp = game.treeplex(i);
    for (int s = 1; s < tp.num_sequences(); ++s) {
      const InfoSet& j = tp.infoset(tp.sequence_infoset(s));
      coefficients_[i].push_back(Eigen::VectorXd::Zero(j.sequence_end - j.first_sequence));
    }
    follow_[i] = Eigen::VectorXd::Zero(tp.num_sequences() - 1);
    joint *= count_pure_strategies(game, StrategyScope::full(i));
  }
  keep_profiles_ = joint <= kProfileLimit;
}

void EmpiricalFrequency::accumulate(const JointProfile& profile) {
  const GameTree& g = *game_;
  const int n = g.num_players();
  const int num_z = static_cast<int>(g.terminals().size());
  for (int i = 0; i < n; ++i) {
    const Treeplex& tp = g.treeplex(i);
    const Eigen::VectorXd& pi = profile[i].values;
    for (int z = 0; z < num_z; ++z) {
      const int sigma = g.terminal_sequence(z, i);
      if (sigma == kEmptySequence) continue;
      double w = g.payoff(z, i) * g.chance_reach(z);
      for (int k = 0; k < n && w != 0.0; ++k) {
        if (k != i) w *= profile[k].values[g.terminal_sequence(z, k)];
      }
      if (w == 0.0) continue;
      for (int j = tp.sequence_infoset(sigma); j != kNoInfoSet; j = tp.infoset(j).parent_infoset) {
        const InfoSet& info = tp.infoset(j);
        for (int a = 0; a < info.num_actions(); ++a) {
          const int s = info.sequence(a);
          if (pi[s] == 1.0) {
            coefficients_[i][s - 1][sigma - info.first_sequence] += w;
            break;
          }
        }
      }
      if (pi[sigma] == 1.0) {
        for (int s = sigma; s != kEmptySequence; s = tp.parent_sequence(s)) follow_[i][s - 1] += w;
      }
    }
  }
  ++count_;
  if (keep_profiles_) {
    auto [it, inserted] = profile_index_.try_emplace(profile_key(profile), profiles_.size());
    if (inserted) {
      profiles_.emplace_back(profile, 1);
    } else {
      ++profiles_[it->second].second;
    }
  }
}

GapReport efce_gap(const GameTree& game, const EmpiricalFrequency& frequency) {
  if (frequency.count() < 1) throw std::invalid_argument("efce_gap: empty frequency");
  const double T = static_cast<double>(frequency.count());
  GapReport report;
  report.players.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    const Treeplex& tp = game.treeplex(i);
    GapReport::PlayerGap& out = report.players[i];
    for (int s = 1; s < tp.num_sequences(); ++s) {
      const StrategyScope scope = StrategyScope::subtree(i, tp.sequence_infoset(s));
      BestResponse br = best_response(game, scope, frequency.coefficients(i, s));
      const double gap = (br.value - frequency.follow(i, s)) / T;
      if (out.trigger == kEmptySequence || gap > out.epsilon) {
        out = {gap, s, std::move(br.strategy.values)};
      }
    }
    if (i == 0 || out.epsilon > report.epsilon) report.epsilon = out.epsilon;
  }
  return report;
}

double gap_bound(const GameTree& game, double delta, long t) {
  const double D = game.payoff_range();
  const double H = static_cast<double>(game.num_nodes());
  return D * (2.0 * H + std::sqrt(8.0 * std::log(game.num_players() / delta))) /
         std::sqrt(static_cast<double>(t));
}

double gap_bound_sequences(const GameTree& game, double delta, long t) {
  double sigma = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    sigma = std::max(sigma, static_cast<double>(game.treeplex(i).num_sequences()));
  }
  return game.payoff_range() * (2.0 * sigma + std::sqrt(8.0 * std::log(game.num_players() / delta))) /
         std::sqrt(static_cast<double>(t));
}

double phi_regret_bound(const GameTree& game, int player, long t) {
  return 2.0 * game.payoff_range(player) * game.treeplex(player).num_sequences() *
         std::sqrt(static_cast<double>(t));
}

RunLog run(const GameTree& game, const RunConfig& config, EmpiricalFrequency* frequency) {
  if (config.iterations < 1) throw std::invalid_argument("run: iterations must be at least 1");
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw std::invalid_argument("run: delta must lie in (0, 1)");
  }
  const int n = game.num_players();
  EmpiricalFrequency local(game);
  EmpiricalFrequency& freq = frequency ? *frequency : local;

  // Players without information sets have the single strategy {empty: 1}.
  std::vector<std::unique_ptr<PureTriggerMinimizer>> minimizers(n);
  std::vector<PhiRegretMeter> meters;
  JointProfile profile(n);
  for (int i = 0; i < n; ++i) {
    meters.emplace_back(game, i);
    profile[i] = {StrategyScope::full(i), Eigen::VectorXd::Ones(1)};
    if (game.treeplex(i).num_sequences() > 1) {
      minimizers[i] = std::make_unique<PureTriggerMinimizer>(
          game, i, player_stream(config.seed, i), config.stationary);
    }
  }

  RunLog log;
  log.iterations = config.iterations;
  std::vector<UtilityVector> utilities(n);
  std::vector<double> regret(n, 0.0);
  for (long t = 1; t <= config.iterations; ++t) {
    for_each_player(n, config.threads, [&](int i) {
      if (minimizers[i]) profile[i] = minimizers[i]->next();
    });
    freq.accumulate(profile);
    for_each_player(n, config.threads, [&](int i) {
      utilities[i] = utility_vector(game, i, profile);
      if (minimizers[i]) minimizers[i]->observe(utilities[i].coefficients);
      meters[i].observe(utilities[i].coefficients, profile[i].values);
      regret[i] = game.treeplex(i).num_sequences() > 1 ? meters[i].regret() : 0.0;
    });

    const bool checkpoint =
        (config.gap_every > 0 && t % config.gap_every == 0) || t == config.iterations;
    GapReport gap;
    double bound = 0.0;
    if (checkpoint) {
      gap = efce_gap(game, freq);
      bound = gap_bound(game, config.delta, t);
    }
    for (int i = 0; i < n; ++i) {
      RegretRow row;
      row.t = t;
      row.player = i;
      row.phi_regret = regret[i];
      row.phi_regret_bound = phi_regret_bound(game, i, t);
      if (checkpoint) {
        row.efce_gap = gap.players[i].epsilon;
        row.gap_bound = bound;
      }
      log.rows.push_back(row);
    }
    if (t == config.iterations) {
      log.final_gap = std::move(gap);
      log.final_gap_bound = bound;
    }
  }
  for (int i = 0; i < n; ++i) {
    log.final_regret.push_back(regret[i]);
    log.final_regret_bound.push_back(phi_regret_bound(game, i, config.iterations));
  }
  return log;
}

std::string RunLog::to_csv() const {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const RegretRow& r : rows) {
    out << r.t << ',' << r.player + 1 << ',' << fmt(r.phi_regret) << ',' << fmt(r.phi_regret_bound)
        << ',' << (r.efce_gap ? fmt(*r.efce_gap) : "") << ','
        << (r.gap_bound ? fmt(*r.gap_bound) : "") << '\n';
  }
  return out.str();
}

std::string RunLog::summary(const GameTree& game, const RunConfig& config) const {
  std::ostringstream out;
  out << "game " << game.name() << '\n';
  out << "iterations " << iterations << '\n';
  out << "seed " << config.seed << '\n';
  out << "delta " << fmt(config.delta) << '\n';
  for (std::size_t i = 0; i < final_regret.size(); ++i) {
    const bool ok = final_regret[i] <= final_regret_bound[i];
    out << "player " << i + 1 << " phi_regret " << fmt(final_regret[i]) << " bound "
        << fmt(final_regret_bound[i]) << ' ' << (ok ? "within" : "exceeded") << " efce_gap "
        << fmt(final_gap.players[i].epsilon) << '\n';
  }
  const bool ok = final_gap.epsilon <= final_gap_bound;
  out << "efce_gap " << fmt(final_gap.epsilon) << " bound " << fmt(final_gap_bound) << ' '
      << (ok ? "within" : "exceeded") << '\n';
  const double tight = gap_bound_sequences(game, config.delta, iterations);
  out << "efce_gap_sequence_bound " << fmt(tight) << ' '
      << (final_gap.epsilon <= tight ? "within" : "exceeded") << '\n';
  return out.str();
}

}  // namespace efce
