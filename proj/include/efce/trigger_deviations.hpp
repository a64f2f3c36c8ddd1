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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "efce/errors.hpp"
#include "efce/game.hpp"
#include "efce/strategies.hpp"

namespace efce {

// Trigger deviation sigma_hat -> y. `continuation` is indexed over
// Sigma_j of the trigger's infoset j (local indexing, as in
// StrategyScope::subtree).
struct TriggerDeviation {
  int player = 0;
  int trigger = kEmptySequence;
  Eigen::VectorXd continuation;
};

// Convex combination sum_k weight_k * f_{trigger_k -> continuation_k}.
struct ConvexTriggerDeviation {
  struct Entry {
    int trigger = kEmptySequence;
    double weight = 0.0;
    Eigen::VectorXd continuation;
  };

  int player = 0;
  std::vector<Entry> entries;

  // Entries with zero weight are dropped.
  void add(int trigger, double weight, Eigen::VectorXd continuation);
  double total_weight() const;
};

// Entries per the trigger-deviation rule: identity on columns not below the
// trigger, column sigma_hat carries y on rows in Sigma_j, zero elsewhere.
Eigen::SparseMatrix<double> build_matrix(const GameTree& game, const TriggerDeviation& d);
Eigen::SparseMatrix<double> build_matrix(const GameTree& game, const ConvexTriggerDeviation& phi);

// M x without building M.
Eigen::VectorXd apply_deviation(const GameTree& game, const TriggerDeviation& d,
                                const Eigen::Ref<const Eigen::VectorXd>& x);
// phi(x) = sum_k weight_k M_k x without building any matrix.
Eigen::VectorXd apply_deviation(const GameTree& game, const ConvexTriggerDeviation& phi,
                                const Eigen::Ref<const Eigen::VectorXd>& x);

// Structural checks: triggers are non-empty sequences of `player`,
// continuations lie in Q_j, weights are nonnegative and sum to 1.
bool is_valid_deviation(const GameTree& game, const ConvexTriggerDeviation& phi,
                        double tol = 1e-9);

struct StationaryOptions {
  double tolerance = 1e-10;
  long max_steps = 1000000;
};

namespace detail {

template <typename Scalar>
Scalar stationary_residual(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& W,
                           const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b) {
  return (W * b - b).cwiseAbs().maxCoeff();
}

}  // namespace detail

// b in the simplex with W b = b for a column-stochastic W. A direct solve
// of (W - I) b = 0 with the last equation replaced by sum(b) = 1 handles
// the irreducible case; otherwise power iteration on the lazy chain
// (W + I) / 2 from the uniform vector. Throws NumericalError if neither
// reaches |W b - b|_inf <= tolerance.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> stationary_distribution(
    const Eigen::MatrixBase<Derived>& matrix, const StationaryOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index m = matrix.rows();
  if (m == 0 || matrix.cols() != m) {
    throw std::invalid_argument("stationary_distribution: square non-empty matrix required");
  }
  const Mat W = matrix;
  for (Eigen::Index c = 0; c < m; ++c) {
    if (W.col(c).minCoeff() < Scalar(-1e-12) || !W.col(c).allFinite() ||
        std::abs(W.col(c).sum() - Scalar(1)) > Scalar(1e-9)) {
      throw std::invalid_argument("stationary_distribution: matrix is not column-stochastic");
    }
  }
  if (m == 1) return Vec::Ones(1);
  const Scalar tol = static_cast<Scalar>(options.tolerance);

  Mat A = W - Mat::Identity(m, m);
  A.row(m - 1).setOnes();
  Vec rhs = Vec::Zero(m);
  rhs[m - 1] = Scalar(1);
  // A singular system means several closed classes; leave those to stage 2.
  const Eigen::PartialPivLU<Mat> lu(A);
  Vec b = lu.solve(rhs);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const bool regular = pivots.minCoeff() > Scalar(1e-12) * pivots.maxCoeff();
  if (regular && b.allFinite() && b.minCoeff() >= Scalar(-1e-9)) {
    b = b.cwiseMax(Scalar(0));
    const Scalar total = b.sum();
    if (total > Scalar(0)) {
      b /= total;
      if (detail::stationary_residual(W, b) <= tol) return b;
    }
  }

  const Mat lazy = (W + Mat::Identity(m, m)) / Scalar(2);
  b = Vec::Constant(m, Scalar(1) / static_cast<Scalar>(m));
  // Once within tolerance, keep refining for as many steps again.
  const Scalar floor = Scalar(16) * std::numeric_limits<Scalar>::epsilon();
  Vec best = b;
  Scalar best_residual = detail::stationary_residual(W, b);
  long reached = -1;
  for (long step = 0; step <= options.max_steps; ++step) {
    const Scalar residual = detail::stationary_residual(W, b);
    if (residual < best_residual) {
      best = b;
      best_residual = residual;
    }
    if (reached < 0 && residual <= tol) reached = step;
    if (best_residual <= floor || (reached >= 0 && step >= 2 * reached + 16)) break;
    b = lazy * b;
    b /= b.sum();
  }
  if (best_residual <= tol) return best;
  throw NumericalError("stationary_distribution: no convergence after " +
                       std::to_string(options.max_steps) + " power steps");
}

// J-partial fixed point: `trunk[j]` marks the infosets in J, `values` is
// over the full Sigma of the player with values[empty] = 1.
struct PartialFixedPoint {
  int player = 0;
  std::vector<char> trunk;
  Eigen::VectorXd values;
};

// J empty, x = indicator of the empty sequence.
PartialFixedPoint initial_partial_fixed_point(const GameTree& game, int player);

// Sequence-form constraints and phi(x)[(j,a)] = x[(j,a)] at every j in J.
bool is_partial_fixed_point(const GameTree& game, const ConvexTriggerDeviation& phi,
                            const PartialFixedPoint& x, double tol = 1e-9);

// Intermediate quantities of one extension step, for inspection.
struct ExtendTrace {
  Eigen::VectorXd r;
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
};

// Adds infoset j_star to the trunk, filling x on the sequences of j_star.
// Requires j_star outside J with its parent infoset (if any) inside J.
PartialFixedPoint extend(const GameTree& game, const ConvexTriggerDeviation& phi,
                         const PartialFixedPoint& x, int j_star, ExtendTrace* trace = nullptr,
                         const StationaryOptions& options = {});

// Extends from the initial partial fixed point over every infoset in
// pre-order; the result q is in Q and satisfies phi(q) = q.
SequenceFormStrategy fixed_point(const GameTree& game, const ConvexTriggerDeviation& phi,
                                 const StationaryOptions& options = {});

// |phi(q) - q|_inf.
double fixed_point_residual(const GameTree& game, const ConvexTriggerDeviation& phi,
                            const Eigen::Ref<const Eigen::VectorXd>& q);

// Dense layout with sequence labels on both axes, one row per line.
std::string format_matrix(const GameTree& game, int player, const Eigen::MatrixXd& M);

}  // namespace efce
