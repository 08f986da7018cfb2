#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

#include "pdczeno/params.hpp"

namespace pdczeno {

/// Monic cubic lambda^3 + c2 lambda^2 + c1 lambda + c0.
struct CubicCoefficients {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  [[nodiscard]] std::complex<double> evaluate(std::complex<double> x) const {
    return ((x + c2) * x + c1) * x + c0;
  }
};

enum class Regime { oscillatory, hyperbolic, boundary };

[[nodiscard]] std::string_view to_string(Regime regime);

/// Coupling strengths where the dynamics switches character; kappa1 >= kappa2.
struct BoundaryKappas {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

struct RegimeReport {
  CubicCoefficients coefficients;
  double discriminant = 0.0;
  std::array<std::complex<double>, 3> roots{};
  Regime regime = Regime::boundary;
  /// Weak-gamma estimate; empty when its inner radicand is negative.
  std::optional<BoundaryKappas> boundary_kappas;
};

/// Signal-mode characteristic cubic for a_s ~ e^{i lambda t}, in the
/// published sign convention:
///   lambda^3 + 2 delta lambda^2 + (delta^2 - kappa^2 + gamma^2) lambda + delta gamma^2.
/// Its roots are eig(M) - delta/2 for the rotating-frame generator M.
/// Throws DomainError at kappa == 0.
[[nodiscard]] CubicCoefficients characteristic_cubic(const CouplerParams& params);

/// Same cubic under lambda -> -lambda, i.e. the exponents Δ/2 - eig(M) that
/// the rotating-frame generator assigns to a_s. Defined for every kappa.
[[nodiscard]] CubicCoefficients generator_cubic(const CouplerParams& params);

/// Depressed-cubic discriminant D = (q/2)^2 + (p/3)^3 after lambda = mu - c2/3.
/// D < 0 iff three distinct real roots.
[[nodiscard]] double cubic_discriminant(const CubicCoefficients& coeffs);

/// Scale-aware degeneracy threshold 1e-12 * max(1, |p|^3, q^2).
[[nodiscard]] double discriminant_tolerance(const CubicCoefficients& coeffs);

/// All three roots: trigonometric form when D < 0, Cardano otherwise.
[[nodiscard]] std::array<std::complex<double>, 3> cubic_roots(const CubicCoefficients& coeffs);

/// Second-order-in-gamma expansion of the discriminant:
///   D ~ -(kappa^2/27) [(kappa^2 - delta^2)^2 - (5 delta^2 + 3 kappa^2) gamma^2].
[[nodiscard]] double discriminant_weak_gamma(const CouplerParams& params);

/// kappa_{1,2} = sqrt(delta^2 + 3/2 gamma^2 +- sqrt(8) |delta| gamma), the zeros of
/// the weak-gamma discriminant. Throws DomainError if kappa_2 is undefined.
[[nodiscard]] BoundaryKappas regime_boundaries(double gamma, double delta);

/// Scan step used by boundary_exact: window / kBoundaryScanCells.
inline constexpr int kBoundaryScanCells = 4096;

/// Zeros of the exact discriminant as a function of kappa, bracketed on
/// (0, |delta| + 4 gamma + 1] and bisected to 1e-10. Throws NotFound when the
/// hyperbolic band cannot be bracketed.
[[nodiscard]] BoundaryKappas boundary_exact(double gamma, double delta);

[[nodiscard]] RegimeReport classify_regime(const CouplerParams& params);

}  // namespace pdczeno
