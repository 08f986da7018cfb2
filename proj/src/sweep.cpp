#include "pdczeno/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "pdczeno/closed_forms.hpp"
#include "pdczeno/core_dynamics.hpp"
#include "pdczeno/errors.hpp"

namespace pdczeno {

namespace {

void set_axis(CouplerParams& params, Axis axis, double value) {
  switch (axis) {
    case Axis::gamma:
      params.gamma = value;
      break;
    case Axis::kappa:
      params.kappa = value;
      break;
    case Axis::delta:
      params.delta = value;
      break;
    case Axis::length:
      params.length = value;
      break;
  }
}

unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

// Runs body(index) for index in [0, count) over `threads` workers.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned workers = resolve_threads(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

double n_s_exact(const CouplerParams& params) {
  return vacuum_occupations(propagate_exact(params)).n_s;
}

void check_axis(const AxisSpec& axis, const char* name) {
  const std::string label(name);
  if (axis.count < 2) throw InvalidParameter(label + " needs count >= 2");
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || !(axis.min < axis.max)) {
    throw InvalidParameter(label + " needs finite min < max");
  }
  if (axis.parameter != Axis::delta && axis.min < 0.0) {
    throw InvalidParameter(label + " range must be non-negative for " +
                           std::string(to_string(axis.parameter)));
  }
}

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::gamma:
      return "gamma";
    case Axis::kappa:
      return "kappa";
    case Axis::delta:
      return "delta";
    case Axis::length:
      return "length";
  }
  return "unknown";
}

Axis parse_axis(std::string_view name) {
  for (Axis a : {Axis::gamma, Axis::kappa, Axis::delta, Axis::length}) {
    if (name == to_string(a)) return a;
  }
  throw InvalidParameter("unknown axis parameter '" + std::string(name) + "'");
}

std::string_view to_string(Engine engine) {
  return engine == Engine::numeric ? "numeric" : "closed_form_when_applicable";
}

Engine parse_engine(std::string_view name) {
  if (name == "numeric") return Engine::numeric;
  if (name == "closed_form_when_applicable") return Engine::closed_form_when_applicable;
  throw InvalidParameter("unknown sweep engine '" + std::string(name) + "'");
}

std::string_view to_string(CellSource source) {
  switch (source) {
    case CellSource::exact:
      return "exact";
    case CellSource::closed_form:
      return "closed_form";
    case CellSource::failed:
      return "failed";
  }
  return "unknown";
}

double AxisSpec::at(std::size_t index) const {
  if (index + 1 == count) return max;
  return min + (max - min) * static_cast<double>(index) / static_cast<double>(count - 1);
}

void validate(const SweepSpec& spec) {
  check_axis(spec.axis1, "axis1");
  check_axis(spec.axis2, "axis2");
  if (spec.axis1.parameter == spec.axis2.parameter) {
    throw InvalidParameter("sweep axes must vary distinct parameters");
  }
  validate(cell_params(spec, 0, 0));
  validate(cell_params(spec, spec.axis1.count - 1, spec.axis2.count - 1));
}

CouplerParams cell_params(const SweepSpec& spec, std::size_t i1, std::size_t i2) {
  CouplerParams p = spec.fixed;
  set_axis(p, spec.axis1.parameter, spec.axis1.at(i1));
  set_axis(p, spec.axis2.parameter, spec.axis2.at(i2));
  return p;
}

CellValue evaluate_cell(const CouplerParams& params, Engine engine) {
  if (engine == Engine::closed_form_when_applicable) {
    if (params.delta == 0.0) {
      return {n_s_coupled_matched(params.gamma, params.kappa, params.length).n_s,
              CellSource::closed_form};
    }
    if (params.kappa == 0.0) {
      return {n_s_mismatched_uncoupled(params.gamma, params.delta, params.length).n_s,
              CellSource::closed_form};
    }
  }
  return {n_s_exact(params), CellSource::exact};
}

SweepGrid sweep_2d(const SweepSpec& spec, unsigned threads) {
  validate(spec);
  SweepGrid grid;
  grid.spec = spec;
  const std::size_t cells = spec.axis1.count * spec.axis2.count;
  grid.values.assign(cells, 0.0);
  grid.provenance.assign(cells, CellSource::exact);

  parallel_for(cells, threads, [&](std::size_t index) {
    const std::size_t i1 = index / spec.axis2.count;
    const std::size_t i2 = index % spec.axis2.count;
    try {
      const CellValue cell = evaluate_cell(cell_params(spec, i1, i2), spec.engine);
      if (!std::isfinite(cell.n_s)) throw NumericFailure("non-finite cell value");
      grid.values[index] = std::max(cell.n_s, 0.0);
      grid.provenance[index] = cell.source;
    } catch (const std::exception&) {
      grid.values[index] = std::numeric_limits<double>::quiet_NaN();
      grid.provenance[index] = CellSource::failed;
    }
  });

  grid.failures = static_cast<std::size_t>(
      std::count(grid.provenance.begin(), grid.provenance.end(), CellSource::failed));
  return grid;
}

namespace {

RidgePoint ridge_at(double gamma, double length, double delta) {
  auto n_s_of = [&](double kappa) { return n_s_exact({gamma, kappa, delta, length}); };

  const double hi = 2.0 * delta;
  const double step = hi / static_cast<double>(kRidgeScanPoints - 1);
  std::size_t best = 0;
  double best_value = -1.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < kRidgeScanPoints; ++j) {
    const double v = n_s_of(step * static_cast<double>(j));
    if (v > best_value) {
      best_value = v;
      best = j;
    }
    lowest = std::min(lowest, v);
  }

  RidgePoint point;
  point.delta = delta;
  point.flat_landscape = !(best_value > lowest * (1.0 + 1e-9));

  // Golden-section search inside the bracket around the coarse maximum.
  double a = step * static_cast<double>(best == 0 ? 0 : best - 1);
  double b = step * static_cast<double>(std::min(best + 1, kRidgeScanPoints - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = n_s_of(x1);
  double f2 = n_s_of(x2);
  while (b - a > kRidgeKappaTolerance) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = n_s_of(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = n_s_of(x1);
    }
  }
  const double refined = 0.5 * (a + b);
  const double refined_value = n_s_of(refined);
  if (refined_value >= best_value) {
    point.kappa_opt = refined;
    point.n_s_max = refined_value;
  } else {
    point.kappa_opt = step * static_cast<double>(best);
    point.n_s_max = best_value;
  }
  return point;
}

}  // namespace

std::vector<RidgePoint> find_anti_zeno_ridge(double gamma, double length,
                                             std::span<const double> deltas, unsigned threads) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidParameter("ridge needs gamma > 0");
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidParameter("ridge needs length > 0");
  for (double d : deltas) {
    if (!(d > 0.0) || !std::isfinite(d)) throw InvalidParameter("ridge needs every delta > 0");
  }
  std::vector<RidgePoint> points(deltas.size());
  parallel_for(deltas.size(), threads,
               [&](std::size_t i) { points[i] = ridge_at(gamma, length, deltas[i]); });
  return points;
}

RidgeFit ridge_linearity(std::span<const RidgePoint> points) {
  if (points.size() < 3) throw InsufficientPoints("ridge fit needs at least 3 points");
  const double n = static_cast<double>(points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& p : points) {
    mean_x += p.delta;
    mean_y += p.kappa_opt;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& p : points) {
    sxx += (p.delta - mean_x) * (p.delta - mean_x);
    sxy += (p.delta - mean_x) * (p.kappa_opt - mean_y);
  }
  if (sxx == 0.0) throw InsufficientPoints("ridge fit needs at least two distinct deltas");
  RidgeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  for (const auto& p : points) {
    fit.max_residual =
        std::max(fit.max_residual, std::abs(p.kappa_opt - (fit.slope * p.delta + fit.intercept)));
  }
  return fit;
}

}  // namespace pdczeno
