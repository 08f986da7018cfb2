#pragma once

#include <complex>

#include "pdczeno/core_dynamics.hpp"
#include "pdczeno/params.hpp"

namespace pdczeno {

/// Signal coupled to the dressed idler/auxiliary modes c = (a_i + b)/sqrt2 and
/// d = (a_i - b)/sqrt2. Each channel is a two-mode squeezer of strength
/// gamma/sqrt2 with its own effective mismatch.
struct DressedParams {
  double gamma_eff = 0.0;   ///< gamma / sqrt2
  double mismatch_c = 0.0;  ///< delta + kappa
  double mismatch_d = 0.0;  ///< delta - kappa
  double omega_shift = 0.0; ///< dressed energies are omega_i +- omega_shift
};

/// Dressed description of `params`. Any sign of kappa is accepted; flipping
/// it swaps the two channels.
[[nodiscard]] DressedParams dressed_channels(double gamma, double kappa, double delta);

[[nodiscard]] DressedParams to_dressed(const CouplerParams& params);

/// Full result of propagating in the dressed basis.
struct DressedEvolution {
  /// Bogoliubov map in mode order (s, c, d); c and d are expressed in the
  /// same lab frame as core_dynamics uses for a_i and b.
  BogoliubovMap map_scd;
  double n_c = 0.0;
  double n_d = 0.0;
  std::complex<double> cross_cd{};  ///< <c^dagger d> on vacuum
  /// n_s, plus n_i and n_b rebuilt by inverting the dressed-mode rotation.
  ModeOccupations occupations;
};

/// Propagates the (s, c, d) system over `length` in its own rotating frame,
/// with channel phases e^{i(delta +- kappa) t}.
[[nodiscard]] DressedEvolution propagate_channels(const DressedParams& dressed, double length);

[[nodiscard]] DressedEvolution propagate_dressed_full(const CouplerParams& params);

/// Occupations (s, i, b) computed entirely in the dressed picture.
[[nodiscard]] ModeOccupations propagate_dressed(const CouplerParams& params);

/// Effective couplings of resonant continuous probing (gamma/sqrt2) and of
/// rectangular quasi-phase-matching (2 gamma/pi).
struct EffectiveCouplings {
  double resonant = 0.0;
  double qpm = 0.0;
};

/// Throws InvalidParameter unless gamma > 0.
[[nodiscard]] EffectiveCouplings qpm_comparison(double gamma);

}  // namespace pdczeno
