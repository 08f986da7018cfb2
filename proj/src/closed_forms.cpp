#include "pdczeno/closed_forms.hpp"

#include <cmath>
#include <string>

#include "pdczeno/errors.hpp"

namespace pdczeno {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw InvalidParameter(message);
}

// Solutions of x'' = -omega_sq x share two kernels:
//   sine(omega_sq, L)   = sin(omega L) / omega
//   versine(omega_sq, L) = (1 - cos(omega L)) / omega^2
// continued to omega_sq < 0 and expanded in y = omega_sq L^2 near zero.
struct Kernels {
  double sine;
  double versine;
  Branch branch;
};

Kernels kernels(double omega_sq, double length, double window) {
  if (std::abs(omega_sq) <= window) {
    const double y = omega_sq * length * length;
    const double sine = length * (1.0 - y / 6.0 + y * y / 120.0 - y * y * y / 5040.0);
    const double versine =
        length * length * (0.5 - y / 24.0 + y * y / 720.0 - y * y * y / 40320.0);
    return {sine, versine, Branch::threshold};
  }
  if (omega_sq > 0.0) {
    const double omega = std::sqrt(omega_sq);
    const double half = std::sin(0.5 * omega * length);
    return {std::sin(omega * length) / omega, 2.0 * half * half / omega_sq,
            Branch::trigonometric};
  }
  const double eta = std::sqrt(-omega_sq);
  const double half = std::sinh(0.5 * eta * length);
  // (cosh - 1) / eta^2 keeps the sign of the trigonometric versine.
  return {std::sinh(eta * length) / eta, 2.0 * half * half / -omega_sq, Branch::hyperbolic};
}

}  // namespace

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::trigonometric:
      return "trigonometric";
    case Branch::hyperbolic:
      return "hyperbolic";
    case Branch::threshold:
      return "threshold";
  }
  return "unknown";
}

double n_s_matched(double gamma, double length) {
  require(gamma >= 0.0 && length >= 0.0, "gamma and length must be non-negative");
  const double s = std::sinh(gamma * length);
  return s * s;
}

ClosedFormResult n_s_coupled_matched(double gamma, double kappa, double length) {
  require(gamma >= 0.0 && kappa >= 0.0 && length >= 0.0,
          "gamma, kappa and length must be non-negative");
  const double chi_sq = (kappa - gamma) * (kappa + gamma);
  const Kernels k = kernels(chi_sq, length, kThresholdWindow * gamma * gamma);
  const double n = gamma * gamma * k.sine * k.sine +
                   kappa * kappa * gamma * gamma * k.versine * k.versine;
  return {n, k.branch};
}

double n_s_strong_coupling_asymptote(double gamma, double kappa, double length) {
  if (kappa == 0.0) throw DomainError("strong-coupling asymptote needs kappa != 0");
  const double s = std::sin(0.5 * kappa * length);
  return 4.0 * gamma * gamma / (kappa * kappa) * s * s;
}

double n_s_large_mismatch_asymptote(double gamma, double delta, double length) {
  if (delta == 0.0) throw DomainError("large-mismatch asymptote needs delta != 0");
  const double s = std::sin(0.5 * delta * length);
  return 4.0 * gamma * gamma / (delta * delta) * s * s;
}

ClosedFormResult n_s_mismatched_uncoupled(double gamma, double delta, double length) {
  require(gamma >= 0.0 && length >= 0.0, "gamma and length must be non-negative");
  require(std::isfinite(delta), "delta must be finite");
  // Oscillation frequency squared: delta^2/4 - gamma^2 (negative means growth).
  const double half = 0.5 * delta;
  const double omega_sq = (half - gamma) * (half + gamma);
  const Kernels k = kernels(omega_sq, length, kThresholdWindow * gamma * gamma);
  return {gamma * gamma * k.sine * k.sine, k.branch};
}

}  // namespace pdczeno
