#include "pdczeno/core_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace pdczeno {

namespace {

using cd = std::complex<double>;

// Lab-frame operators are R(t)^-1 times rotated ones, R = diag(e^{i d t/2}, e^{-i d t/2}, e^{-i d t/2}).
Eigen::Vector3cd frame_phases(double delta, double t) {
  const cd half = std::exp(cd(0.0, 0.5 * delta * t));
  return {half, std::conj(half), std::conj(half)};
}

double max_abs_of(const Eigen::Matrix3cd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

BogoliubovMap BogoliubovMap::compose(const BogoliubovMap& second, const BogoliubovMap& first) {
  BogoliubovMap out;
  out.u = second.u * first.u + second.v * first.v.conjugate();
  out.v = second.u * first.v + second.v * first.u.conjugate();
  return out;
}

double BogoliubovMap::max_abs() const { return std::max(max_abs_of(u), max_abs_of(v)); }

ModeOccupations ModeOccupations::clamped() const {
  return {std::max(n_s, 0.0), std::max(n_i, 0.0), std::max(n_b, 0.0)};
}

GeneratorMatrix build_generator(const CouplerParams& params) {
  validate(params);
  const double g = params.gamma;
  const double k = params.kappa;
  const double h = 0.5 * params.delta;
  GeneratorMatrix m;
  m.entries << h, g, 0.0,
              -g, -h, -k,
              0.0, -k, -h;
  return m;
}

BogoliubovMap from_adjoint_vector_map(const Eigen::Matrix3cd& w) {
  // Row 0 describes a_s^dagger; conjugating it gives a_s in terms of
  // (a_s, a_i^dagger, b^dagger). Rows 1, 2 describe a_i and b directly.
  BogoliubovMap map;
  map.u.setZero();
  map.v.setZero();
  map.u(kSignal, kSignal) = std::conj(w(0, 0));
  map.v(kSignal, kIdler) = std::conj(w(0, 1));
  map.v(kSignal, kAuxiliary) = std::conj(w(0, 2));
  for (int row : {kIdler, kAuxiliary}) {
    map.v(row, kSignal) = w(row, 0);
    map.u(row, kIdler) = w(row, 1);
    map.u(row, kAuxiliary) = w(row, 2);
  }
  return map;
}

BogoliubovMap propagate_interval(const CouplerParams& params, double start, double end) {
  CouplerParams checked = params;
  checked.length = 0.0;
  const GeneratorMatrix generator = build_generator(checked);
  const Eigen::Matrix3cd rotated = exp_i(generator.entries, end - start).value;
  const Eigen::Vector3cd at_start = frame_phases(params.delta, start);
  const Eigen::Vector3cd at_end = frame_phases(params.delta, end);
  const Eigen::Matrix3cd lab =
      at_end.cwiseInverse().asDiagonal() * rotated * at_start.asDiagonal();
  return from_adjoint_vector_map(lab);
}

BogoliubovMap propagate_exact(const CouplerParams& params) {
  validate(params);
  if (params.length == 0.0) return BogoliubovMap::identity();
  return propagate_interval(params, 0.0, params.length);
}

ModeOccupations vacuum_occupations(const BogoliubovMap& map) {
  const Eigen::Vector3d rows = map.v.cwiseAbs2().rowwise().sum();
  return {rows(kSignal), rows(kIdler), rows(kAuxiliary)};
}

double check_symplectic(const BogoliubovMap& map) {
  const Eigen::Matrix3cd commutator =
      map.u * map.u.adjoint() - map.v * map.v.adjoint() - Eigen::Matrix3cd::Identity();
  const Eigen::Matrix3cd cross = map.u * map.v.transpose();
  const Eigen::Matrix3cd asymmetry = cross - cross.transpose();
  return std::max(max_abs_of(commutator), max_abs_of(asymmetry));
}

double check_symplectic_relative(const BogoliubovMap& map) {
  const double scale = std::max(1.0, std::pow(map.max_abs(), 2));
  return check_symplectic(map) / scale;
}

}  // namespace pdczeno
