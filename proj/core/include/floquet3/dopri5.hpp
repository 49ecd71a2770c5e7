#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "floquet3/error.hpp"

namespace floquet3 {

/// Step-size control for the embedded Dormand-Prince 5(4) pair.
struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-10;
  double initial_step = 0.0;  ///< 0 picks 1/20 of the interval
  long max_steps = 1'000'000;
};

template <class State>
struct OdeResult {
  State y;
  long steps = 0;
  long rejected = 0;
  /// Sum over accepted steps of the max-norm local error estimate.
  double local_error_sum = 0.0;
};

/// Integrates y' = f(t, y) from t0 to t1 with the Dormand-Prince 5(4) pair
/// (FSAL, local extrapolation). State is any Eigen dense type; the error norm
/// is the entrywise max of |err| / (atol + rtol * max(|y|, |y_new|)).
///
/// Throws IntegrationError on step-size underflow or when max_steps is hit.
template <class State, class Rhs>
OdeResult<State> dopri5(Rhs&& f, double t0, double t1, State y0,
                        const StepControl& ctl) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeResult<State> out;
  out.y = std::move(y0);
  if (t1 == t0) return out;

  const double span = t1 - t0;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = ctl.initial_step > 0 ? dir * ctl.initial_step : span / 20.0;
  double t = t0;
  State k1 = f(t, out.y);
  bool last_rejected = false;

  while (dir * (t1 - t) > 0) {
    if (out.steps + out.rejected >= ctl.max_steps) {
      throw IntegrationError("stiff/degenerate integration: step cap " +
                             std::to_string(ctl.max_steps) + " reached at t=" +
                             std::to_string(t));
    }
    if (dir * (t + h - t1) > 0) h = t1 - t;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
      throw IntegrationError("stiff/degenerate integration: step size underflow at t=" +
                             std::to_string(t));
    }
    const State& y = out.y;
    State k2 = f(t + c2 * h, State(y + h * (a21 * k1)));
    State k3 = f(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
    State k4 = f(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    State k5 = f(t + c5 * h,
                 State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    State k6 = f(t + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                       a64 * k4 + a65 * k5)));
    State y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State k7 = f(t + h, y_new);
    State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const auto scale = (ctl.atol + ctl.rtol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array());
    double err_norm = (err.cwiseAbs().array() / scale).maxCoeff();
    if (!std::isfinite(err_norm)) err_norm = 1e10;

    if (err_norm <= 1.0) {
      t += h;
      out.y = std::move(y_new);
      k1 = std::move(k7);
      ++out.steps;
      out.local_error_sum += err.cwiseAbs().maxCoeff();
      double grow = err_norm > 0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
      grow = std::clamp(grow, 0.2, last_rejected ? 1.0 : 5.0);
      h *= grow;
      last_rejected = false;
    } else {
      ++out.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
      last_rejected = true;
    }
  }
  return out;
}

}  // namespace floquet3
