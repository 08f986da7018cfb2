#pragma once

#include <string_view>

namespace pdczeno {

/// Which analytic branch produced a closed-form value.
enum class Branch { trigonometric, hyperbolic, threshold };

[[nodiscard]] std::string_view to_string(Branch branch);

struct ClosedFormResult {
  double n_s = 0.0;
  Branch branch = Branch::trigonometric;
};

/// Relative half-width of the threshold window around a vanishing frequency,
/// |omega^2| <= kThresholdWindow * gamma^2, where the series form is used.
inline constexpr double kThresholdWindow = 1e-6;

/// Phase-matched, uncoupled growth sinh^2(gamma L).
[[nodiscard]] double n_s_matched(double gamma, double length);

/// Phase-matched signal occupation with idler coupling kappa. With
/// chi^2 = kappa^2 - gamma^2:
///   n_s = gamma^2 sin^2(chi L)/chi^2 + kappa^2 gamma^2 (1 - cos chi L)^2 / chi^4,
/// continued to sinh/cosh for kappa < gamma and to its Taylor series near
/// kappa = gamma (where it equals gamma^2 L^2 + gamma^4 L^4 / 4).
[[nodiscard]] ClosedFormResult n_s_coupled_matched(double gamma, double kappa, double length);

/// Strong-coupling envelope (4 gamma^2 / kappa^2) sin^2(kappa L / 2).
/// Throws DomainError for kappa == 0.
[[nodiscard]] double n_s_strong_coupling_asymptote(double gamma, double kappa, double length);

/// Large-mismatch envelope (4 gamma^2 / delta^2) sin^2(delta L / 2).
/// Throws DomainError for delta == 0.
[[nodiscard]] double n_s_large_mismatch_asymptote(double gamma, double delta, double length);

/// Exact uncoupled, mismatched solution gamma^2 sinh^2(g L) / g^2 with
/// g^2 = gamma^2 - delta^2/4; trigonometric once |delta| > 2 gamma.
[[nodiscard]] ClosedFormResult n_s_mismatched_uncoupled(double gamma, double delta, double length);

}  // namespace pdczeno
