#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "kerrosc/error.hpp"

namespace kerrosc::ode {

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

struct Tolerances {
  double rtol = 1e-8;
  double atol = 1e-10;
};

/// Dormand-Prince 5(4) embedded pair with standard step-size control.
///
/// `State` needs vector-space arithmetic (Eigen types work). `norm(err, y0, y1)` returns
/// the scaled error (accept when <= 1). `after_step(y)` may project the accepted state,
/// e.g. restore Hermiticity. `h` is the step-size suggestion, updated in place so
/// consecutive calls reuse it.
template <class State, class Rhs, class ErrorNorm, class AfterStep>
State integrate_to(State y, double t0, double t1, double& h, Rhs&& rhs, ErrorNorm&& norm,
                   AfterStep&& after_step, StepStats& stats, long max_steps = 10'000'000) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  // b - b_hat (5th minus 4th order weights).
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  double t = t0;
  if (t1 <= t0) return y;
  if (!(h > 0.0)) h = std::min(1e-3, t1 - t0);

  long steps = 0;
  while (t < t1) {
    if (++steps > max_steps) {
      throw Error(ErrorKind::StepSizeUnderflow, "step budget exhausted at t=" + std::to_string(t));
    }
    const bool last = t + h >= t1;
    const double step = last ? t1 - t : h;
    if (step < 1e-14 * std::max(1.0, std::abs(t))) {
      throw Error(ErrorKind::StepSizeUnderflow, "step size " + std::to_string(step) +
                                                    " underflow at t=" + std::to_string(t));
    }

    const State k1 = rhs(t, y);
    const State k2 = rhs(t + c2 * step, State(y + step * (a21 * k1)));
    const State k3 = rhs(t + c3 * step, State(y + step * (a31 * k1 + a32 * k2)));
    const State k4 = rhs(t + c4 * step, State(y + step * (a41 * k1 + a42 * k2 + a43 * k3)));
    const State k5 =
        rhs(t + c5 * step, State(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const State k6 = rhs(t + step, State(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                                                     a65 * k5)));
    State y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State k7 = rhs(t + step, y_new);
    stats.evaluations += 7;

    const State err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scaled = norm(err, y, y_new);
    if (!std::isfinite(scaled)) {
      throw Error(ErrorKind::StepSizeUnderflow, "non-finite error estimate at t=" + std::to_string(t));
    }

    const double factor =
        scaled == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(scaled, -0.2), 0.2, 5.0);
    if (scaled <= 1.0) {
      t = last ? t1 : t + step;
      after_step(y_new);
      y = std::move(y_new);
      ++stats.accepted;
      // A step clipped to hit t1 says little about the natural step size.
      if (!last) h = step * factor;
    } else {
      ++stats.rejected;
      h = step * std::max(0.2, factor);
    }
  }
  return y;
}

}  // namespace kerrosc::ode
