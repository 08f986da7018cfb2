// Lab-frame integration of the linearized Heisenberg equations. Shares no
// code with the rotating-frame propagator beyond the (U, V) adapter.

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "pdczeno/core_dynamics.hpp"
#include "pdczeno/errors.hpp"

namespace pdczeno {

namespace {

namespace odeint = boost::numeric::odeint;
using cd = std::complex<double>;

// 3x3 complex propagator stored as 9 real parts followed by 9 imaginary parts.
using State = std::array<double, 18>;

struct LabFrameSystem {
  double gamma;
  double kappa;
  double delta;

  // d/dt (a_s^dagger, a_i, b) = i K(t) (a_s^dagger, a_i, b)
  void operator()(const State& x, State& dxdt, double t) const {
    const cd pump = std::exp(cd(0.0, delta * t));
    cd k[3][3] = {{0.0, gamma * std::conj(pump), 0.0},
                  {-gamma * pump, 0.0, -kappa},
                  {0.0, -kappa, 0.0}};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        cd acc = 0.0;
        for (int m = 0; m < 3; ++m) {
          acc += k[r][m] * cd(x[3 * m + c], x[9 + 3 * m + c]);
        }
        acc *= cd(0.0, 1.0);
        dxdt[3 * r + c] = acc.real();
        dxdt[9 + 3 * r + c] = acc.imag();
      }
    }
  }
};

}  // namespace

BogoliubovMap propagate_ode(const CouplerParams& params, double step_tolerance) {
  validate(params);
  if (!(step_tolerance > 0.0) || !std::isfinite(step_tolerance)) {
    throw InvalidParameter("step_tolerance must be positive");
  }
  if (params.length == 0.0) return BogoliubovMap::identity();

  State x{};
  x[0] = x[4] = x[8] = 1.0;
  const LabFrameSystem system{params.gamma, params.kappa, params.delta};
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(step_tolerance,
                                                                             step_tolerance);

  const double end = params.length;
  const double min_step = 1e-14 * end;
  double t = 0.0;
  double dt = std::min(end, 1e-3 * end + 1e-3);
  while (t < end) {
    if (t + dt > end) dt = end - t;
    const auto result = stepper.try_step(system, x, t, dt);
    if (result == odeint::fail && dt < min_step) {
      throw NumericFailure("adaptive integrator step size underflow at t = " + std::to_string(t));
    }
  }

  Eigen::Matrix3cd w;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) w(r, c) = cd(x[3 * r + c], x[9 + 3 * r + c]);
  }
  return from_adjoint_vector_map(w);
}

}  // namespace pdczeno
