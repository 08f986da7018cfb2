#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pdczeno/core_dynamics.hpp"
#include "pdczeno/errors.hpp"
#include "pdczeno/regime.hpp"

using namespace pdczeno;

namespace {

std::vector<std::complex<double>> sorted(std::array<std::complex<double>, 3> roots) {
  std::vector<std::complex<double>> v(roots.begin(), roots.end());
  std::sort(v.begin(), v.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

double n_s(double gamma, double kappa, double delta, double length) {
  return vacuum_occupations(propagate_exact({gamma, kappa, delta, length})).n_s;
}

}  // namespace

TEST_CASE("characteristic cubic coefficients") {
  SUBCASE("no nonlinearity factors as lambda (lambda + 4)(lambda + 6)") {
    const auto c = characteristic_cubic({0.0, 1.0, 5.0, 1.0});
    CHECK(c.c2 == 10.0);
    CHECK(c.c1 == 24.0);
    CHECK(c.c0 == 0.0);
    const auto roots = sorted(cubic_roots(c));
    CHECK(roots[0].real() == doctest::Approx(-6.0).epsilon(1e-12));
    CHECK(roots[1].real() == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(std::abs(roots[2]) < 1e-12);
    CHECK(cubic_discriminant(c) < 0.0);
  }
  SUBCASE("resonant point") {
    const auto c = characteristic_cubic({0.5, 5.0, 5.0, 1.0});
    CHECK(c.c2 == 10.0);
    CHECK(c.c1 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(c.c0 == doctest::Approx(1.25).epsilon(1e-15));
  }
  CHECK_THROWS_AS(characteristic_cubic({0.5, 0.0, 5.0, 1.0}), DomainError);
}

TEST_CASE("cubic discriminant conventions") {
  // (x)(x + 4)(x + 6) = x^3 + 10 x^2 + 24 x
  CHECK(cubic_discriminant({10.0, 24.0, 0.0}) < 0.0);
  CHECK(cubic_discriminant({0.0, 0.0, 0.0}) == 0.0);
  CHECK(cubic_discriminant({0.0, 1.0, 0.0}) == doctest::Approx(1.0 / 27.0).epsilon(1e-15));
  // Shifted triple root (x - 2)^3 also sits on D = 0.
  CHECK(std::abs(cubic_discriminant({-6.0, 12.0, -8.0})) < 1e-12);
}

TEST_CASE("property: roots solve the cubic") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int draw = 0; draw < 2000; ++draw) {
    const CubicCoefficients c{u(rng), u(rng), u(rng)};
    for (const auto& r : cubic_roots(c)) CHECK(std::abs(c.evaluate(r)) <= 1e-9);
  }
  std::uniform_real_distribution<double> pos(0.01, 10.0);
  for (int draw = 0; draw < 1000; ++draw) {
    const CouplerParams p{pos(rng), pos(rng), u(rng), 1.0};
    const auto report = classify_regime(p);
    for (const auto& r : report.roots) CHECK(std::abs(report.coefficients.evaluate(r)) <= 1e-9);
  }
}

TEST_CASE("property: published roots are the negated generator-cubic roots") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.01, 10.0);
  std::uniform_real_distribution<double> any(-10.0, 10.0);
  for (int draw = 0; draw < 500; ++draw) {
    const CouplerParams p{pos(rng), pos(rng), any(rng), 1.0};
    auto published = cubic_roots(characteristic_cubic(p));
    auto mirrored = cubic_roots(generator_cubic(p));
    for (auto& r : mirrored) r = -r;
    const auto a = sorted(published);
    const auto b = sorted(mirrored);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-9 * std::max(1.0, std::abs(a[k])));
    CHECK(cubic_discriminant(characteristic_cubic(p)) ==
          doctest::Approx(cubic_discriminant(generator_cubic(p))).epsilon(1e-12));
  }
}

TEST_CASE("weak-gamma discriminant") {
  SUBCASE("gamma = 0 equals the exact discriminant") {
    for (double k : {1.0, 3.0, 7.0}) {
      const CouplerParams p{0.0, k, 5.0, 1.0};
      const double approx = discriminant_weak_gamma(p);
      CHECK(approx <= 0.0);
      CHECK(approx == doctest::Approx(cubic_discriminant(characteristic_cubic(p))).epsilon(1e-12));
    }
  }
  SUBCASE("resonant value") {
    CHECK(discriminant_weak_gamma({0.5, 5.0, 5.0, 1.0}) ==
          doctest::Approx(25.0 / 27.0 * 50.0).epsilon(1e-14));
  }
  SUBCASE("truncation error is fourth order") {
    auto error = [](double g) {
      const CouplerParams p{g, 4.0, 5.0, 1.0};
      return std::abs(cubic_discriminant(characteristic_cubic(p)) - discriminant_weak_gamma(p));
    };
    const double ratio = error(0.5) / error(0.25);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
  }
}

TEST_CASE("regime boundaries") {
  const auto b = regime_boundaries(0.5, 5.0);
  CHECK(b.kappa1 == doctest::Approx(5.6961449956848424).epsilon(1e-14));
  CHECK(b.kappa2 == doctest::Approx(4.278309501208921).epsilon(1e-14));
  CHECK(b.kappa1 >= b.kappa2);
  const auto tiny = regime_boundaries(1e-9, 3.0);
  CHECK(tiny.kappa1 == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(tiny.kappa2 == doctest::Approx(3.0).epsilon(1e-8));
  // Dropping the gamma^2 term: delta +- sqrt2 gamma.
  CHECK(std::abs(b.kappa1 - (5.0 + std::sqrt(2.0) * 0.5)) < 0.02);
  CHECK(std::abs(b.kappa2 - (5.0 - std::sqrt(2.0) * 0.5)) < 0.02);
  CHECK(regime_boundaries(0.5, -5.0).kappa1 == b.kappa1);
  CHECK_THROWS_AS(regime_boundaries(1.0, 1.0), DomainError);
}

TEST_CASE("exact boundaries by bisection") {
  const auto weak = regime_boundaries(0.5, 5.0);
  const auto exact = boundary_exact(0.5, 5.0);
  CHECK(std::abs(exact.kappa1 - weak.kappa1) / weak.kappa1 < 0.01);
  CHECK(std::abs(exact.kappa2 - weak.kappa2) / weak.kappa2 < 0.01);
  // Independent scipy brentq on the same discriminant.
  CHECK(exact.kappa1 == doctest::Approx(5.695782184051273).epsilon(1e-9));
  CHECK(exact.kappa2 == doctest::Approx(4.27886628177947).epsilon(1e-9));

  const auto weak_small = regime_boundaries(0.05, 5.0);
  const auto exact_small = boundary_exact(0.05, 5.0);
  CHECK(std::abs(exact_small.kappa1 - weak_small.kappa1) / weak_small.kappa1 < 1e-4);
  CHECK(std::abs(exact_small.kappa2 - weak_small.kappa2) / weak_small.kappa2 < 1e-4);

  const double eps = 1e-3;
  auto regime_at = [](double k) { return classify_regime({0.5, k, 5.0, 1.0}).regime; };
  CHECK(regime_at(exact.kappa2 - eps) == Regime::oscillatory);
  CHECK(regime_at(exact.kappa2 + eps) == Regime::hyperbolic);
  CHECK(regime_at(0.5 * (exact.kappa1 + exact.kappa2)) == Regime::hyperbolic);
  CHECK(regime_at(exact.kappa1 - eps) == Regime::hyperbolic);
  CHECK(regime_at(exact.kappa1 + eps) == Regime::oscillatory);

  CHECK_THROWS_AS(boundary_exact(0.0, 5.0), InvalidParameter);
  CHECK_THROWS_AS(boundary_exact(0.5, 0.0), InvalidParameter);
  // Gamma comparable to delta: no hyperbolic band closes inside the window.
  CHECK_THROWS_AS(boundary_exact(5.0, 0.5), NotFound);
}

TEST_CASE("classify_regime") {
  CHECK(classify_regime({0.5, 5.0, 5.0, 1.0}).regime == Regime::hyperbolic);
  const auto low = classify_regime({0.5, 2.0, 5.0, 1.0});
  CHECK(low.regime == Regime::oscillatory);
  CHECK(low.discriminant < 0.0);
  const auto high = classify_regime({0.5, 8.0, 5.0, 1.0});
  CHECK(high.regime == Regime::oscillatory);
  CHECK(high.discriminant < 0.0);
  REQUIRE(low.boundary_kappas.has_value());
  CHECK(low.boundary_kappas->kappa1 == doctest::Approx(5.6961449956848424));
  CHECK_THROWS_AS(classify_regime({0.5, 0.0, 5.0, 1.0}), DomainError);
  CHECK(to_string(Regime::hyperbolic) == "hyperbolic");
}

TEST_CASE("regime tag matches the observed dynamics") {
  const double g = 0.5;
  const double d = 5.0;
  SUBCASE("hyperbolic: eventually monotone growth") {
    for (double k : {4.6, 5.0, 5.4}) {
      REQUIRE(classify_regime({g, k, d, 1.0}).regime == Regime::hyperbolic);
      const double end = 10.0 / g;
      double previous = n_s(g, k, d, 0.5 * end);
      for (int j = 1; j <= 100; ++j) {
        const double v = n_s(g, k, d, 0.5 * end + 0.005 * end * j);
        CHECK(v > previous);
        previous = v;
      }
    }
  }
  SUBCASE("oscillatory: bounded and returns below half of its maximum") {
    for (double k : {1.0, 3.0, 7.0, 9.0}) {
      REQUIRE(classify_regime({g, k, d, 1.0}).regime == Regime::oscillatory);
      std::vector<double> values;
      for (int j = 0; j <= 2000; ++j) values.push_back(n_s(g, k, d, 0.01 * j));
      const auto peak = std::max_element(values.begin(), values.end());
      CHECK(*peak < 1.0);
      CHECK(std::any_of(peak, values.end(), [&](double v) { return v < 0.5 * *peak; }));
    }
  }
}
