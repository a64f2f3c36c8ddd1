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

#include "efce/trigger_deviations.hpp"

#include <cstdio>
#include <sstream>

namespace efce {
namespace {

const InfoSet& trigger_infoset(const Treeplex& tp, int trigger) {
  if (trigger <= kEmptySequence || trigger >= tp.num_sequences()) {
    throw std::invalid_argument("trigger must be a non-empty sequence");
  }
  return tp.infoset(tp.sequence_infoset(trigger));
}

// Adds weight * (M_{trigger -> y} x - x) to out.
void add_deviation(const Treeplex& tp, int trigger, double weight,
                   const Eigen::VectorXd& continuation,
                   const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::VectorXd& out) {
  const InfoSet& j = trigger_infoset(tp, trigger);
  if (continuation.size() != j.sequence_end - j.first_sequence) {
    throw std::invalid_argument("continuation does not match the trigger's subtree");
  }
  out[trigger] -= weight * x[trigger];
  for (int s = tp.descendants_begin(trigger); s < tp.descendants_end(trigger); ++s) {
    out[s] -= weight * x[s];
  }
  const double mass = weight * x[trigger];
  if (mass == 0.0) return;
  for (int s = j.first_sequence; s < j.sequence_end; ++s) {
    out[s] += mass * continuation[s - j.first_sequence];
  }
}

void add_matrix(const Treeplex& tp, int trigger, double weight, const Eigen::VectorXd& y,
                std::vector<Eigen::Triplet<double>>& triplets) {
  const InfoSet& j = trigger_infoset(tp, trigger);
  if (y.size() != j.sequence_end - j.first_sequence) {
    throw std::invalid_argument("continuation does not match the trigger's subtree");
  }
  for (int c = 0; c < tp.num_sequences(); ++c) {
    if (!tp.precedes_or_equal(trigger, c)) triplets.emplace_back(c, c, weight);
  }
  for (int r = j.first_sequence; r < j.sequence_end; ++r) {
    const double v = y[r - j.first_sequence];
    if (v != 0.0) triplets.emplace_back(r, trigger, weight * v);
  }
}

}  // namespace

void ConvexTriggerDeviation::add(int trigger, double weight, Eigen::VectorXd continuation) {
  if (weight == 0.0) return;
  entries.push_back({trigger, weight, std::move(continuation)});
}

double ConvexTriggerDeviation::total_weight() const {
  double total = 0.0;
  for (const Entry& e : entries) total += e.weight;
  return total;
}

Eigen::SparseMatrix<double> build_matrix(const GameTree& game, const TriggerDeviation& d) {
  const Treeplex& tp = game.treeplex(d.player);
  std::vector<Eigen::Triplet<double>> triplets;
  add_matrix(tp, d.trigger, 1.0, d.continuation, triplets);
  Eigen::SparseMatrix<double> M(tp.num_sequences(), tp.num_sequences());
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

Eigen::SparseMatrix<double> build_matrix(const GameTree& game, const ConvexTriggerDeviation& phi) {
  const Treeplex& tp = game.treeplex(phi.player);
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& e : phi.entries) add_matrix(tp, e.trigger, e.weight, e.continuation, triplets);
  Eigen::SparseMatrix<double> M(tp.num_sequences(), tp.num_sequences());
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

Eigen::VectorXd apply_deviation(const GameTree& game, const TriggerDeviation& d,
                                const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Treeplex& tp = game.treeplex(d.player);
  if (x.size() != tp.num_sequences()) throw std::invalid_argument("apply_deviation: scope mismatch");
  Eigen::VectorXd out = x;
  add_deviation(tp, d.trigger, 1.0, d.continuation, x, out);
  return out;
}

Eigen::VectorXd apply_deviation(const GameTree& game, const ConvexTriggerDeviation& phi,
                                const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Treeplex& tp = game.treeplex(phi.player);
  if (x.size() != tp.num_sequences()) throw std::invalid_argument("apply_deviation: scope mismatch");
  Eigen::VectorXd out = phi.total_weight() * x;
  for (const auto& e : phi.entries) add_deviation(tp, e.trigger, e.weight, e.continuation, x, out);
  return out;
}

bool is_valid_deviation(const GameTree& game, const ConvexTriggerDeviation& phi, double tol) {
  const Treeplex& tp = game.treeplex(phi.player);
  for (const auto& e : phi.entries) {
    if (e.trigger <= kEmptySequence || e.trigger >= tp.num_sequences() || e.weight < 0.0) {
      return false;
    }
    const StrategyScope scope = StrategyScope::subtree(phi.player, tp.sequence_infoset(e.trigger));
    if (!is_sequence_form(game, {scope, e.continuation}, tol)) return false;
  }
  return std::abs(phi.total_weight() - 1.0) <= tol;
}

PartialFixedPoint initial_partial_fixed_point(const GameTree& game, int player) {
  const Treeplex& tp = game.treeplex(player);
  PartialFixedPoint x;
  x.player = player;
  x.trunk.assign(tp.num_infosets(), 0);
  x.values = Eigen::VectorXd::Zero(tp.num_sequences());
  x.values[kEmptySequence] = 1.0;
  return x;
}

bool is_partial_fixed_point(const GameTree& game, const ConvexTriggerDeviation& phi,
                            const PartialFixedPoint& x, double tol) {
  const Treeplex& tp = game.treeplex(x.player);
  if (std::abs(x.values[kEmptySequence] - 1.0) > tol || x.values.minCoeff() < -tol) return false;
  const Eigen::VectorXd image = apply_deviation(game, phi, x.values);
  for (int j = 0; j < tp.num_infosets(); ++j) {
    if (!x.trunk[j]) continue;
    const InfoSet& info = tp.infoset(j);
    if (info.parent_infoset != kNoInfoSet && !x.trunk[info.parent_infoset]) return false;
    double total = 0.0;
    for (int a = 0; a < info.num_actions(); ++a) {
      const int s = info.sequence(a);
      total += x.values[s];
      if (std::abs(image[s] - x.values[s]) > tol) return false;
    }
    if (std::abs(total - x.values[info.parent_sequence]) > tol) return false;
  }
  return true;
}

PartialFixedPoint extend(const GameTree& game, const ConvexTriggerDeviation& phi,
                         const PartialFixedPoint& x, int j_star, ExtendTrace* trace,
                         const StationaryOptions& options) {
  const Treeplex& tp = game.treeplex(x.player);
  if (phi.player != x.player) throw std::invalid_argument("extend: player mismatch");
  const InfoSet& info = tp.infoset(j_star);
  if (x.trunk[j_star]) throw std::invalid_argument("extend: infoset already in the trunk");
  if (info.parent_infoset != kNoInfoSet && !x.trunk[info.parent_infoset]) {
    throw std::invalid_argument("extend: parent infoset outside the trunk");
  }
  const int m = info.num_actions();
  const int sigma_p = info.parent_sequence;
  const double mass = x.values[sigma_p];

  // Weight of triggers on the path to sigma_p, and of each (j*, a).
  double path_weight = 0.0;
  Eigen::VectorXd own_weight = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(m, m);
  for (const auto& e : phi.entries) {
    const int j = tp.sequence_infoset(e.trigger);
    const int first = tp.infoset(j).first_sequence;
    if (tp.precedes_or_equal(e.trigger, sigma_p) && sigma_p != kEmptySequence) {
      path_weight += e.weight;
    }
    if (j == j_star) {
      const int ac = tp.sequence_action(e.trigger);
      own_weight[ac] += e.weight;
      for (int ar = 0; ar < m; ++ar) {
        W(ar, ac) += e.weight * e.continuation[info.sequence(ar) - first] * mass;
      }
    } else if (tp.infoset_precedes_or_equal(j, j_star)) {
      const double scale = e.weight * x.values[e.trigger];
      if (scale == 0.0) continue;
      for (int a = 0; a < m; ++a) r[a] += scale * e.continuation[info.sequence(a) - first];
    }
  }
  for (int ac = 0; ac < m; ++ac) {
    W.col(ac) += r;
    W(ac, ac) += (1.0 - path_weight - own_weight[ac]) * mass;
  }

  PartialFixedPoint out = x;
  out.trunk[j_star] = 1;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  if (mass != 0.0) {
    // Rounding leaves columns a few ulps off x[sigma_p] and entries at -0; with
    // x[sigma_p] itself at rounding level a column can vanish entirely.
    Eigen::MatrixXd S = W.cwiseMax(0.0);
    for (int c = 0; c < m; ++c) {
      if (std::abs(W.col(c).sum() - mass) > 1e-9) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "extend: column %d of W sums to %.17g instead of %.17g",
                      c, W.col(c).sum(), mass);
        throw NumericalError(msg);
      }
      const double total = S.col(c).sum();
      if (total > 0.0) {
        S.col(c) /= total;
      } else {
        S.col(c) = Eigen::VectorXd::Unit(m, c);
      }
    }
    b = stationary_distribution(S, options);
    for (int a = 0; a < m; ++a) out.values[info.sequence(a)] = mass * b[a];
  }
  if (trace) *trace = {r, W, b};
  return out;
}

SequenceFormStrategy fixed_point(const GameTree& game, const ConvexTriggerDeviation& phi,
                                 const StationaryOptions& options) {
  const Treeplex& tp = game.treeplex(phi.player);
  PartialFixedPoint x = initial_partial_fixed_point(game, phi.player);
  for (int j = 0; j < tp.num_infosets(); ++j) x = extend(game, phi, x, j, nullptr, options);
  return {StrategyScope::full(phi.player), std::move(x.values)};
}

double fixed_point_residual(const GameTree& game, const ConvexTriggerDeviation& phi,
                            const Eigen::Ref<const Eigen::VectorXd>& q) {
  return (apply_deviation(game, phi, q) - q).cwiseAbs().maxCoeff();
}

std::string format_matrix(const GameTree& game, int player, const Eigen::MatrixXd& M) {
  const Treeplex& tp = game.treeplex(player);
  auto label = [&](int s) {
    if (s == kEmptySequence) return std::string("{}");
    return tp.infoset(tp.sequence_infoset(s)).actions[tp.sequence_action(s)];
  };
  auto cell = [](double v) {
    char buf[32];
    if (v == std::round(v)) {
      std::snprintf(buf, sizeof buf, "%.0f", v == 0.0 ? 0.0 : v);
    } else {
      std::snprintf(buf, sizeof buf, "%.4g", v);
    }
    return std::string(buf);
  };
  std::size_t width = 1;
  for (int s = 0; s < tp.num_sequences(); ++s) width = std::max(width, label(s).size());
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) width = std::max(width, cell(M(r, c)).size());
  }
  auto pad = [&](const std::string& s) { return std::string(width - s.size(), ' ') + s; };
  std::ostringstream out;
  out << pad("") << " |";
  for (int c = 0; c < M.cols(); ++c) out << ' ' << pad(label(c));
  out << '\n';
  for (int r = 0; r < M.rows(); ++r) {
    out << pad(label(r)) << " |";
    for (int c = 0; c < M.cols(); ++c) out << ' ' << pad(cell(M(r, c)));
    out << '\n';
  }
  return out.str();
}

}  // namespace efce
