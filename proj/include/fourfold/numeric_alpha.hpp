#pragma once

// Direct evaluation of the inf-max definition
//
//   alpha^2 = inf over positive b+-planes H of  max over classes a of (a+)^2,
//
// where a+ is the Q-orthogonal projection of a onto H. Positive planes are
// charted as graphs of linear maps L from a reference positive plane to its
// Q-complement. In the Q-orthonormal eigenbasis the chart domain is the open
// operator-norm unit ball and every (a+)^2 is a convex function of L.

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fourfold/form_space.hpp"

namespace fourfold {

struct GrassmannPoint {
  /// n x b+ basis of the positive plane, in the coordinates of the Gram matrix.
  Eigen::MatrixXd basis;
  /// b- x b+ chart coordinates (Q-orthonormal eigenbasis; operator norm < 1).
  Eigen::MatrixXd chart;
};

struct NumericOptions {
  double tolerance = 1e-6;
  int max_iter = 4000;
  std::uint64_t seed = 0;
  int starts = 16;
  /// Worker threads for the multi-start; 0 picks the hardware concurrency.
  int threads = 0;
};

struct NumericAlphaResult {
  double value = 0.0;
  GrassmannPoint witness;
  int iterations = 0;
  /// False when the starts disagree or the best start ran out of iterations.
  bool converged = true;
  /// Witness is close to the chart boundary: the infimum may not be attained.
  bool near_boundary = false;
};

NumericAlphaResult alpha_squared_numeric(const QuadraticFormSpace& space, const NumericOptions& opts = {});

struct OracleResult {
  double value = 0.0;
  /// False when the best point lies against the edge of the positive region.
  bool attained = true;
};

/// Largest b+ + b- accepted by the brute-force oracle.
inline constexpr int kOracleMaxDimension = 6;

/// Independent check of alpha_squared_numeric: tensor grid over the unscaled
/// eigenvector chart (grid_density points per axis), refined by central-cut
/// ellipsoid steps with finite-difference subgradients. Projections are
/// computed by solving the restricted Gram system directly.
OracleResult alpha_brute_oracle(const QuadraticFormSpace& space, int grid_density = 9);

/// (a+)^2 and (a-)^2 for the plane spanned by the columns of `basis`.
std::pair<double, double> projection_split(const QuadraticFormSpace& space, const Eigen::MatrixXd& basis,
                                           const IntVector& a);

/// max over classes of (a+)^2 at the given plane.
double inf_max_objective(const QuadraticFormSpace& space, const Eigen::MatrixXd& basis);

/// Per-class (a+)^2 and its gradient with respect to the chart point L
/// (b- x b+). `values` is empty when L is outside the chart domain.
struct ChartEvaluation {
  Eigen::VectorXd values;
  std::vector<Eigen::MatrixXd> gradients;
};

ChartEvaluation chart_objective(const QuadraticFormSpace& space, const Eigen::MatrixXd& l);

/// Basis (n x b+) of the positive plane at chart point L.
Eigen::MatrixXd chart_basis(const QuadraticFormSpace& space, const Eigen::MatrixXd& l);

}  // namespace fourfold
