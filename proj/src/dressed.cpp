#include "pdczeno/dressed.hpp"

#include <cmath>
#include <numbers>

#include "pdczeno/errors.hpp"
#include "pdczeno/matrix_exponential.hpp"

namespace pdczeno {

namespace {

using cd = std::complex<double>;

enum DressedMode : int { kS = 0, kC = 1, kD = 2 };

}  // namespace

DressedParams dressed_channels(double gamma, double kappa, double delta) {
  return {gamma / std::numbers::sqrt2, delta + kappa, delta - kappa, kappa};
}

DressedParams to_dressed(const CouplerParams& params) {
  validate(params);
  return dressed_channels(params.gamma, params.kappa, params.delta);
}

DressedEvolution propagate_channels(const DressedParams& dressed, double length) {
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw InvalidParameter("length must be finite and non-negative");
  }
  // Interaction picture w.r.t. kappa (c^dagger c - d^dagger d):
  //   H = g a_s^dagger c^dagger e^{i mc t} + g a_s^dagger d^dagger e^{i md t} + h.c.
  // Rotating frame S = a_s^dagger e^{i ts t}, C = c e^{i tc t}, D = d e^{i td t}
  // with ts - tc = mc and ts - td = md. Choose ts = (mc + md)/4 so the frame
  // phases are symmetric; any ts works.
  const double g = dressed.gamma_eff;
  const double mc = dressed.mismatch_c;
  const double md = dressed.mismatch_d;
  const double ts = 0.25 * (mc + md);
  const double tc = ts - mc;
  const double td = ts - md;

  Eigen::Matrix3d generator;
  generator << ts, g, g,
              -g, tc, 0.0,
              -g, 0.0, td;
  const Eigen::Matrix3cd rotated = exp_i(generator, length).value;

  // Back to interaction-picture operators, then to the lab frame of the
  // undressed problem (c_lab = c_int e^{-i kappa t}, d_lab = d_int e^{+i kappa t}).
  const double shift = dressed.omega_shift;
  const Eigen::Vector3cd out_phase(std::exp(cd(0.0, -ts * length)),
                                   std::exp(cd(0.0, -(tc + shift) * length)),
                                   std::exp(cd(0.0, -(td - shift) * length)));
  const Eigen::Matrix3cd w = out_phase.asDiagonal() * rotated;

  DressedEvolution out;
  out.map_scd = from_adjoint_vector_map(w);
  const auto& v = out.map_scd.v;
  out.n_c = v.row(kC).squaredNorm();
  out.n_d = v.row(kD).squaredNorm();
  // <c^dagger d> = sum_beta conj(V_c beta) V_d beta
  out.cross_cd = (v.row(kC).conjugate().cwiseProduct(v.row(kD))).sum();

  const double mean = 0.5 * (out.n_c + out.n_d);
  out.occupations.n_s = v.row(kS).squaredNorm();
  out.occupations.n_i = mean + out.cross_cd.real();
  out.occupations.n_b = mean - out.cross_cd.real();
  return out;
}

DressedEvolution propagate_dressed_full(const CouplerParams& params) {
  return propagate_channels(to_dressed(params), params.length);
}

ModeOccupations propagate_dressed(const CouplerParams& params) {
  return propagate_dressed_full(params).occupations;
}

EffectiveCouplings qpm_comparison(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidParameter("qpm_comparison needs gamma > 0");
  }
  return {gamma / std::numbers::sqrt2, 2.0 * gamma / std::numbers::pi};
}

}  // namespace pdczeno
