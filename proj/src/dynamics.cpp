#include "kerrosc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kerrosc/ode.hpp"

namespace kerrosc {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty() || times_.front() != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "time grid must start at 0");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1]) || !std::isfinite(times_[i])) {
      throw Error(ErrorKind::InvalidArgument, "time grid must be strictly increasing");
    }
  }
}

TimeGrid TimeGrid::uniform(double t_max, int count) {
  if (count < 2 || !(t_max > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "uniform grid needs t_max > 0 and count >= 2");
  }
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i) t[i] = t_max * static_cast<double>(i) / (count - 1);
  t.back() = t_max;
  return TimeGrid(std::move(t));
}

CMatrix liouvillian_apply(const CMatrix& rho, const OscillatorParams& params) {
  const int dim = static_cast<int>(rho.rows());
  if (rho.cols() != dim) {
    throw Error(ErrorKind::DimensionMismatch, "density matrix must be square");
  }
  const Complex p = params.pump;
  const Complex pc = std::conj(p);
  const double g = params.kerr;
  const double loss = params.loss;

  std::vector<double> sq(dim + 1);
  for (int k = 0; k <= dim; ++k) sq[k] = std::sqrt(static_cast<double>(k));

  CMatrix out(dim, dim);
  for (int n = 0; n < dim; ++n) {
    const double hn = g * n * (n - 1.0);
    for (int m = 0; m < dim; ++m) {
      const Complex r = rho(m, n);
      const double hm = g * m * (m - 1.0);
      Complex d = Complex(0.0, -(hm - hn)) * r - loss * static_cast<double>(m + n) * r;
      // p [a^dag, rho] - p* [a, rho]
      Complex pump_term = 0.0;
      if (m > 0) pump_term += p * sq[m] * rho(m - 1, n);
      if (n + 1 < dim) pump_term -= p * sq[n + 1] * rho(m, n + 1);
      if (m + 1 < dim) pump_term -= pc * sq[m + 1] * rho(m + 1, n);
      if (n > 0) pump_term += pc * sq[n] * rho(m, n - 1);
      d += pump_term;
      if (m + 1 < dim && n + 1 < dim) d += 2.0 * loss * sq[m + 1] * sq[n + 1] * rho(m + 1, n + 1);
      out(m, n) = d;
    }
  }
  return out;
}

CMatrix liouvillian_apply(const DensityMatrix& rho, const OscillatorParams& params) {
  return liouvillian_apply(rho.matrix(), params);
}

Trajectory evolve(const DensityMatrix& rho0, const OscillatorParams& params, const TimeGrid& grid,
                  const EvolveOptions& options) {
  params.validate();
  if (!(options.rtol > 0.0) || !(options.atol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "rtol and atol must be positive");
  }

  const double rtol = options.rtol;
  const double atol = options.atol;
  auto rhs = [&params](double, const CMatrix& y) { return liouvillian_apply(y, params); };
  // Max norm rather than RMS: with dim^2 mostly tiny elements an RMS lets the few large ones
  // carry errors far above rtol, which shows up as negative eigenvalues of near-pure states.
  auto norm = [rtol, atol](const CMatrix& err, const CMatrix& y0, const CMatrix& y1) {
    const auto scale = (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array());
    return (err.cwiseAbs().array() / scale).maxCoeff();
  };

  double max_trace_error = 0.0;
  auto after_step = [&max_trace_error](CMatrix& y) {
    max_trace_error = std::max(max_trace_error, std::abs(y.trace() - 1.0));
    y = hermitize_and_renormalize(y).matrix();
  };

  Trajectory traj{grid, {}, {}};
  traj.states.reserve(grid.size());
  traj.diagnostics.reserve(grid.size());

  auto record = [&](const DensityMatrix& state, const ode::StepStats& stats, long prev_accepted,
                    long prev_rejected, double t) {
    const double tail = tail_mass(state, options.tail_margin);
    if (tail > options.tail_limit) {
      throw Error(ErrorKind::CutoffExceeded, "tail mass " + std::to_string(tail) + " at t=" +
                                                 std::to_string(t) + " exceeds " +
                                                 std::to_string(options.tail_limit) +
                                                 "; increase the Fock cutoff");
    }
    StepDiagnostics diag;
    diag.trace_error = max_trace_error;
    diag.tail_mass = tail;
    diag.steps = stats.accepted - prev_accepted;
    diag.rejected = stats.rejected - prev_rejected;
    traj.states.push_back(state);
    traj.diagnostics.push_back(diag);
  };

  ode::StepStats stats;
  record(rho0, stats, 0, 0, 0.0);

  CMatrix y = rho0.matrix();
  double h = 0.0;
  const auto& times = grid.times();
  for (std::size_t i = 1; i < times.size(); ++i) {
    const long acc = stats.accepted;
    const long rej = stats.rejected;
    max_trace_error = 0.0;
    y = ode::integrate_to(std::move(y), times[i - 1], times[i], h, rhs, norm, after_step, stats);
    record(DensityMatrix(y), stats, acc, rej, times[i]);
  }
  return traj;
}

StateVector kerr_lossless_evolve(const StateVector& psi0, double kerr, double t) {
  // exp(-i k(k-1) G t) = exp(-i j theta) with j = k(k-1)/2 and theta = 2Gt reduced mod 2 pi,
  // so t = pi/G lands on exact multiples of 2 pi.
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double theta = std::fmod(2.0 * kerr * t, two_pi);
  CVector c = psi0.amplitudes();
  for (int k = 0; k < c.size(); ++k) {
    const double j = 0.5 * k * (k - 1.0);
    const double angle = std::fmod(j * theta, two_pi);
    c(k) *= std::polar(1.0, -angle);
  }
  return StateVector::normalized(std::move(c));
}

Complex linear_damping_amplitude(Complex alpha0, const OscillatorParams& params, double t) {
  if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "t must be >= 0");
  const double g = params.loss;
  if (g == 0.0) return alpha0 + params.pump * t;
  const double decay = std::exp(-g * t);
  return alpha0 * decay + (params.pump / g) * (-std::expm1(-g * t));
}

namespace {

Complex amplitude_rate(Complex alpha, const OscillatorParams& params) {
  return params.pump - Complex(0.0, 2.0 * params.kerr) * std::norm(alpha) * alpha -
         params.loss * alpha;
}

template <class Rhs>
std::vector<CVector> integrate_small(CVector y0, const TimeGrid& grid, double rtol, Rhs rhs) {
  if (!(rtol > 0.0)) throw Error(ErrorKind::InvalidArgument, "rtol must be positive");
  const double atol = rtol * 1e-3;
  auto norm = [rtol, atol](const CVector& err, const CVector& y0, const CVector& y1) {
    const auto scale = (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array());
    return (err.cwiseAbs().array() / scale).maxCoeff();
  };
  auto no_projection = [](CVector&) {};

  std::vector<CVector> out;
  out.reserve(grid.size());
  out.push_back(y0);
  ode::StepStats stats;
  double h = 0.0;
  const auto& times = grid.times();
  for (std::size_t i = 1; i < times.size(); ++i) {
    y0 = ode::integrate_to(std::move(y0), times[i - 1], times[i], h, rhs, norm, no_projection,
                           stats);
    out.push_back(y0);
  }
  return out;
}

}  // namespace

SemiclassicalPath classical_path(Complex alpha0, const OscillatorParams& params,
                                 const TimeGrid& grid, double rtol) {
  params.validate();
  CVector y0(1);
  y0(0) = alpha0;
  auto rhs = [&params](double, const CVector& y) {
    CVector d(1);
    d(0) = amplitude_rate(y(0), params);
    return d;
  };
  const auto states = integrate_small(std::move(y0), grid, rtol, rhs);
  SemiclassicalPath path{grid, {}, {}, {}};
  for (const auto& s : states) path.alpha.push_back(s(0));
  return path;
}

SemiclassicalPath linearized_noise_path(Complex alpha0, double B0, Complex C0,
                                        const OscillatorParams& params, const TimeGrid& grid,
                                        double rtol) {
  params.validate();
  if (!(B0 >= 0.0)) throw Error(ErrorKind::InvalidArgument, "B0 must be >= 0");
  CVector y0(3);
  y0 << alpha0, B0, C0;
  auto rhs = [&params](double, const CVector& y) {
    const Complex alpha = y(0);
    const double B = y(1).real();
    const Complex C = y(2);
    const Complex gamma = params.loss + Complex(0.0, 4.0 * params.kerr * std::norm(alpha));
    const Complex delta = Complex(0.0, 2.0 * params.kerr) * alpha * alpha;
    CVector d(3);
    d(0) = amplitude_rate(alpha, params);
    d(1) = -2.0 * gamma.real() * B - 2.0 * (std::conj(delta) * C).real();
    d(2) = -delta * (1.0 + 2.0 * B) - 2.0 * gamma * C;
    return d;
  };
  const auto states = integrate_small(std::move(y0), grid, rtol, rhs);
  SemiclassicalPath path{grid, {}, {}, {}};
  for (const auto& s : states) {
    path.alpha.push_back(s(0));
    path.noise_B.push_back(s(1).real());
    path.noise_C.push_back(s(2));
  }
  return path;
}

}  // namespace kerrosc
