#include "pdczeno/matrix_exponential.hpp"

#include <cmath>
#include <complex>

#include <unsupported/Eigen/MatrixFunctions>

#include "pdczeno/errors.hpp"

namespace pdczeno {

namespace {

using cd = std::complex<double>;

bool all_finite(const Eigen::Matrix3cd& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    if (!std::isfinite(m(k).real()) || !std::isfinite(m(k).imag())) return false;
  }
  return true;
}

}  // namespace

PhaseExponential exp_i(const Eigen::Matrix3d& generator, double t) {
  PhaseExponential out;
  if (t == 0.0 || generator.isZero(0.0)) {
    out.value = Eigen::Matrix3cd::Identity();
    return out;
  }

  Eigen::EigenSolver<Eigen::Matrix3d> solver(generator, true);
  if (solver.info() == Eigen::Success) {
    const Eigen::Matrix3cd vectors = solver.eigenvectors();
    const Eigen::JacobiSVD<Eigen::Matrix3cd> svd(vectors);
    const auto& sv = svd.singularValues();
    out.eigenvector_condition = sv(2) > 0.0 ? sv(0) / sv(2) : INFINITY;
    if (out.eigenvector_condition <= kEigenvectorConditionLimit) {
      Eigen::Vector3cd phases;
      for (int k = 0; k < 3; ++k) phases(k) = std::exp(cd(0.0, t) * solver.eigenvalues()(k));
      out.value = vectors * phases.asDiagonal() * vectors.inverse();
      out.method = ExpMethod::eigendecomposition;
      if (all_finite(out.value)) return out;
    }
  }

  // Defective or nearly defective generator (regime boundary D = 0).
  const Eigen::Matrix3cd scaled = cd(0.0, t) * generator.cast<cd>();
  out.value = scaled.exp();
  out.method = ExpMethod::scaling_and_squaring;
  if (!all_finite(out.value)) {
    throw NumericFailure("matrix exponential produced non-finite entries");
  }
  return out;
}

}  // namespace pdczeno
