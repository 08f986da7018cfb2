#pragma once

#include <Eigen/Dense>

#include "pdczeno/matrix_exponential.hpp"
#include "pdczeno/params.hpp"

namespace pdczeno {

/// Mode ordering shared by every map and occupation record.
enum Mode : int { kSignal = 0, kIdler = 1, kAuxiliary = 2 };

/// Rotating-frame generator: the vector v = (A_s^dagger, A_i, B) with
/// A_{s,i} = a_{s,i} e^{-i delta t/2}, B = b e^{-i delta t/2} obeys dv/dt = i M v,
///
///     M = [[ delta/2,  gamma,     0     ],
///          [ -gamma,  -delta/2,  -kappa ],
///          [   0,     -kappa,   -delta/2]].
///
/// The frame removes the e^{i delta t} pump phase so M is time independent.
struct GeneratorMatrix {
  Eigen::Matrix3d entries = Eigen::Matrix3d::Zero();
};

/// Output operators a_out = U a_in + V a_in^dagger in mode order (s, i, b).
struct BogoliubovMap {
  Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity();
  Eigen::Matrix3cd v = Eigen::Matrix3cd::Zero();

  [[nodiscard]] static BogoliubovMap identity() { return {}; }

  /// Map equal to applying `first`, then `second`.
  [[nodiscard]] static BogoliubovMap compose(const BogoliubovMap& second,
                                             const BogoliubovMap& first);

  /// Largest entry modulus across both blocks.
  [[nodiscard]] double max_abs() const;
};

/// Vacuum-seeded mean photon numbers.
struct ModeOccupations {
  double n_s = 0.0;
  double n_i = 0.0;
  double n_b = 0.0;

  /// n_s - n_i - n_b; pair production keeps this at zero for vacuum input.
  [[nodiscard]] double conservation_defect() const { return n_s - n_i - n_b; }
  /// Rounding-level negatives clamped to zero for reporting.
  [[nodiscard]] ModeOccupations clamped() const;
};

[[nodiscard]] GeneratorMatrix build_generator(const CouplerParams& params);

/// Exact map over [0, length] by exponentiating the rotating-frame generator.
[[nodiscard]] BogoliubovMap propagate_exact(const CouplerParams& params);

/// Exact map from the lab-frame operators at z = start to those at z = end.
/// The pump phase makes the dynamics non-autonomous, so segment maps compose
/// only when their endpoints chain: interval(b, c) o interval(a, b) = interval(a, c).
/// `params.length` is ignored.
[[nodiscard]] BogoliubovMap propagate_interval(const CouplerParams& params, double start,
                                               double end);

/// Independent oracle: adaptive Dormand-Prince integration of the lab-frame
/// equations with their explicit e^{i delta t} coefficients.
/// Throws NumericFailure when the step size underflows.
[[nodiscard]] BogoliubovMap propagate_ode(const CouplerParams& params, double step_tolerance);

/// n_alpha = sum_beta |V_{alpha beta}|^2.
[[nodiscard]] ModeOccupations vacuum_occupations(const BogoliubovMap& map);

/// max(|U U^dagger - V V^dagger - I|_max, |U V^T - (U V^T)^T|_max). Absolute;
/// rounding makes it grow like eps * |U|^2 for high-gain maps.
[[nodiscard]] double check_symplectic(const BogoliubovMap& map);

/// check_symplectic divided by max(1, |U|_max^2): the residual that stays at
/// rounding level regardless of gain.
[[nodiscard]] double check_symplectic_relative(const BogoliubovMap& map);

/// Convert a propagator for the adjoint-ordered vector (a_s^dagger, a_i, b),
/// i.e. v(end) = W v(start), into the uniform (U, V) convention.
[[nodiscard]] BogoliubovMap from_adjoint_vector_map(const Eigen::Matrix3cd& w);

}  // namespace pdczeno
