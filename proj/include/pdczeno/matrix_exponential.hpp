#pragma once

#include <Eigen/Dense>

namespace pdczeno {

/// How exp(i*t*M) was evaluated.
enum class ExpMethod { eigendecomposition, scaling_and_squaring };

struct PhaseExponential {
  Eigen::Matrix3cd value;
  ExpMethod method = ExpMethod::eigendecomposition;
  double eigenvector_condition = 1.0;
};

/// Condition number above which the eigenvector route is abandoned.
inline constexpr double kEigenvectorConditionLimit = 1e4;

/// exp(i*t*M) for a real 3x3 generator M. Diagonalizes M when its eigenvector
/// matrix is well conditioned, otherwise falls back to Pade scaling and squaring.
[[nodiscard]] PhaseExponential exp_i(const Eigen::Matrix3d& generator, double t);

}  // namespace pdczeno
