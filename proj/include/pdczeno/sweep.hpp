#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pdczeno/params.hpp"

namespace pdczeno {

enum class Axis { gamma, kappa, delta, length };

[[nodiscard]] std::string_view to_string(Axis axis);
/// Throws InvalidParameter for unknown names.
[[nodiscard]] Axis parse_axis(std::string_view name);

struct AxisSpec {
  Axis parameter = Axis::kappa;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  /// min + (max - min) * index / (count - 1); endpoints are exact.
  [[nodiscard]] double at(std::size_t index) const;
};

enum class Engine { numeric, closed_form_when_applicable };

[[nodiscard]] std::string_view to_string(Engine engine);
[[nodiscard]] Engine parse_engine(std::string_view name);

struct SweepSpec {
  CouplerParams fixed;
  AxisSpec axis1;
  AxisSpec axis2{Axis::length, 0.0, 1.0, 2};
  Engine engine = Engine::numeric;
};

/// Throws InvalidParameter unless count >= 2, min < max, axes distinct and
/// every grid point is a valid CouplerParams.
void validate(const SweepSpec& spec);

/// How a grid cell was obtained.
enum class CellSource { exact, closed_form, failed };

[[nodiscard]] std::string_view to_string(CellSource source);

struct SweepGrid {
  SweepSpec spec;
  /// n_s, row-major: index = i1 * axis2.count + i2. Failed cells hold NaN.
  std::vector<double> values;
  std::vector<CellSource> provenance;
  std::size_t failures = 0;

  [[nodiscard]] double at(std::size_t i1, std::size_t i2) const {
    return values[i1 * spec.axis2.count + i2];
  }
};

/// Parameters of cell (i1, i2).
[[nodiscard]] CouplerParams cell_params(const SweepSpec& spec, std::size_t i1, std::size_t i2);

/// n_s for one parameter set under the given engine, plus where it came from.
struct CellValue {
  double n_s;
  CellSource source;
};
[[nodiscard]] CellValue evaluate_cell(const CouplerParams& params, Engine engine);

/// Evaluates every cell on `threads` workers (0 = hardware concurrency).
/// Each cell is a pure function written to its own slot, so the result is
/// bit-identical for any worker count.
[[nodiscard]] SweepGrid sweep_2d(const SweepSpec& spec, unsigned threads = 0);

struct RidgePoint {
  double delta = 0.0;
  double kappa_opt = 0.0;
  double n_s_max = 0.0;
  /// Set when max/min over the coarse scan is below 1 + 1e-9.
  bool flat_landscape = false;
};

/// Coarse samples over kappa in [0, 2 delta] used before golden-section refinement.
inline constexpr std::size_t kRidgeScanPoints = 401;
inline constexpr double kRidgeKappaTolerance = 1e-6;

/// For each delta, the kappa maximizing n_s at fixed (gamma, length).
[[nodiscard]] std::vector<RidgePoint> find_anti_zeno_ridge(double gamma, double length,
                                                           std::span<const double> deltas,
                                                           unsigned threads = 0);

struct RidgeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least-squares line kappa_opt(delta). Throws InsufficientPoints below 3 points.
[[nodiscard]] RidgeFit ridge_linearity(std::span<const RidgePoint> points);

}  // namespace pdczeno
