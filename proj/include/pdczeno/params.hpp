#pragma once

namespace pdczeno {

/// Physical knobs of the probed downconverter. All rates are inverse lengths;
/// only the products gamma*length, kappa*length, delta*length are physical.
struct CouplerParams {
  double gamma = 0.0;   ///< nonlinear (pump-absorbed) coupling, >= 0
  double kappa = 0.0;   ///< idler/auxiliary linear coupling, >= 0
  double delta = 0.0;   ///< phase mismatch, any sign
  double length = 0.0;  ///< interaction length, >= 0

  /// (c*gamma, c*kappa, c*delta, length/c); observables are invariant.
  [[nodiscard]] CouplerParams rescaled(double c) const {
    return {gamma * c, kappa * c, delta * c, length / c};
  }
};

/// Numeric acceptance thresholds used by invariant checks.
struct Tolerances {
  double symplectic = 1e-10;
  double physical = 1e-10;
};

/// Throws InvalidParameter on non-finite fields or negative gamma/kappa/length.
void validate(const CouplerParams& params);

}  // namespace pdczeno
