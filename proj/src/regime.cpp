#include "pdczeno/regime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pdczeno/errors.hpp"

namespace pdczeno {

namespace {

using cd = std::complex<double>;

struct Depressed {
  double p;
  double q;
  double shift;  // lambda = mu - shift
};

Depressed depress(const CubicCoefficients& c) {
  const double shift = c.c2 / 3.0;
  const double p = c.c1 - c.c2 * c.c2 / 3.0;
  const double q = 2.0 * c.c2 * c.c2 * c.c2 / 27.0 - c.c2 * c.c1 / 3.0 + c.c0;
  return {p, q, shift};
}

cd newton_polish(const CubicCoefficients& c, cd x) {
  for (int it = 0; it < 2; ++it) {
    const cd f = c.evaluate(x);
    const cd df = (3.0 * x + 2.0 * c.c2) * x + c.c1;
    if (std::abs(df) == 0.0) break;
    const cd next = x - f / df;
    if (std::abs(c.evaluate(next)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::oscillatory:
      return "oscillatory";
    case Regime::hyperbolic:
      return "hyperbolic";
    case Regime::boundary:
      return "boundary";
  }
  return "unknown";
}

CubicCoefficients characteristic_cubic(const CouplerParams& params) {
  validate(params);
  if (params.kappa == 0.0) {
    throw DomainError("characteristic cubic requires kappa != 0; use the closed forms at kappa = 0");
  }
  const double g2 = params.gamma * params.gamma;
  const double d = params.delta;
  const double k2 = params.kappa * params.kappa;
  return {2.0 * d, d * d - k2 + g2, d * g2};
}

CubicCoefficients generator_cubic(const CouplerParams& params) {
  validate(params);
  const double g2 = params.gamma * params.gamma;
  const double d = params.delta;
  const double k2 = params.kappa * params.kappa;
  return {-2.0 * d, d * d - k2 + g2, -d * g2};
}

double cubic_discriminant(const CubicCoefficients& coeffs) {
  const Depressed dep = depress(coeffs);
  const double half_q = 0.5 * dep.q;
  const double third_p = dep.p / 3.0;
  return half_q * half_q + third_p * third_p * third_p;
}

double discriminant_tolerance(const CubicCoefficients& coeffs) {
  const Depressed dep = depress(coeffs);
  return 1e-12 * std::max({1.0, std::abs(dep.p * dep.p * dep.p), dep.q * dep.q});
}

std::array<cd, 3> cubic_roots(const CubicCoefficients& coeffs) {
  const Depressed dep = depress(coeffs);
  const double disc = cubic_discriminant(coeffs);
  std::array<cd, 3> roots;
  if (disc < 0.0) {
    // Casus irreducibilis: p < 0 is guaranteed.
    const double r = 2.0 * std::sqrt(-dep.p / 3.0);
    const double arg = std::clamp(3.0 * dep.q / (dep.p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots[k] = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - dep.shift;
    }
  } else {
    const double sq = std::sqrt(disc);
    const double a = std::cbrt(-0.5 * dep.q + sq);
    const double b = std::cbrt(-0.5 * dep.q - sq);
    const cd omega(-0.5, std::sqrt(3.0) / 2.0);
    roots[0] = a + b - dep.shift;
    roots[1] = omega * a + std::conj(omega) * b - dep.shift;
    roots[2] = std::conj(omega) * a + omega * b - dep.shift;
  }
  for (auto& r : roots) r = newton_polish(coeffs, r);
  return roots;
}

double discriminant_weak_gamma(const CouplerParams& params) {
  const double k2 = params.kappa * params.kappa;
  const double d2 = params.delta * params.delta;
  const double g2 = params.gamma * params.gamma;
  const double gap = k2 - d2;
  return -(k2 / 27.0) * (gap * gap - (5.0 * d2 + 3.0 * k2) * g2);
}

BoundaryKappas regime_boundaries(double gamma, double delta) {
  const double base = delta * delta + 1.5 * gamma * gamma;
  const double split = std::sqrt(8.0) * std::abs(delta) * gamma;
  if (base - split < 0.0) {
    throw DomainError("lower boundary undefined: delta^2 + 1.5 gamma^2 - sqrt(8)|delta|gamma < 0");
  }
  return {std::sqrt(base + split), std::sqrt(base - split)};
}

BoundaryKappas boundary_exact(double gamma, double delta) {
  if (!(gamma > 0.0) || delta == 0.0 || !std::isfinite(gamma) || !std::isfinite(delta)) {
    throw InvalidParameter("boundary_exact needs gamma > 0 and delta != 0");
  }
  auto disc_at = [&](double kappa) {
    return cubic_discriminant(characteristic_cubic({gamma, kappa, delta, 0.0}));
  };
  const double window = std::abs(delta) + 4.0 * gamma + 1.0;
  const double step = window / kBoundaryScanCells;

  auto bisect = [&](double lo, double hi) {
    double f_lo = disc_at(lo);
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = disc_at(mid);
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  // First entry into D > 0 is kappa_2, the following exit is kappa_1.
  std::optional<double> lower;
  double prev_k = step;
  double prev_d = disc_at(prev_k);
  for (int cell = 2; cell <= kBoundaryScanCells; ++cell) {
    const double k = step * cell;
    const double d = disc_at(k);
    if (!lower && prev_d <= 0.0 && d > 0.0) {
      lower = bisect(prev_k, k);
    } else if (lower && prev_d > 0.0 && d <= 0.0) {
      return {bisect(prev_k, k), *lower};
    }
    prev_k = k;
    prev_d = d;
  }
  throw NotFound("no hyperbolic band found in the kappa scan window");
}

RegimeReport classify_regime(const CouplerParams& params) {
  RegimeReport report;
  report.coefficients = characteristic_cubic(params);
  report.discriminant = cubic_discriminant(report.coefficients);
  report.roots = cubic_roots(report.coefficients);
  const double tol = discriminant_tolerance(report.coefficients);
  if (report.discriminant < -tol) {
    report.regime = Regime::oscillatory;
  } else if (report.discriminant > tol) {
    report.regime = Regime::hyperbolic;
  } else {
    report.regime = Regime::boundary;
  }
  try {
    report.boundary_kappas = regime_boundaries(params.gamma, params.delta);
  } catch (const DomainError&) {
    report.boundary_kappas.reset();
  }
  return report;
}

}  // namespace pdczeno
