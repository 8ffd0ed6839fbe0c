#pragma once

#include <vector>

#include "kerrosc/fock.hpp"

namespace kerrosc {

/// Strictly increasing output times starting at 0.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  /// `count` equally spaced points on [0, t_max].
  static TimeGrid uniform(double t_max, int count);

  const std::vector<double>& times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  double back() const { return times_.back(); }

 private:
  std::vector<double> times_;
};

struct StepDiagnostics {
  double trace_error = 0.0;  ///< largest |Tr rho - 1| seen before renormalization
  double tail_mass = 0.0;
  long steps = 0;  ///< accepted steps since the previous output time
  long rejected = 0;
};

struct Trajectory {
  TimeGrid grid;
  std::vector<DensityMatrix> states;
  std::vector<StepDiagnostics> diagnostics;
};

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  int tail_margin = 5;
  double tail_limit = 1e-6;
};

/// drho/dt = -i[H, rho] + gamma0 (2 a rho a^dag - a^dag a rho - rho a^dag a).
///
/// Evaluated element-wise in O(dim^2); identical to the dense product with the truncated
/// operators.
CMatrix liouvillian_apply(const CMatrix& rho, const OscillatorParams& params);
CMatrix liouvillian_apply(const DensityMatrix& rho, const OscillatorParams& params);

/// Integrates the master equation, recording the state at every grid time.
/// Throws CutoffExceeded if the tail mass of an output exceeds options.tail_limit.
Trajectory evolve(const DensityMatrix& rho0, const OscillatorParams& params, const TimeGrid& grid,
                  const EvolveOptions& options = {});

/// Lossless, unpumped Kerr evolution: c_k -> c_k exp(-i k(k-1) G t).
StateVector kerr_lossless_evolve(const StateVector& psi0, double kerr, double t);

/// Coherent amplitude for linear damping (G = 0):
/// alpha0 e^{-gamma0 t} + (p/gamma0)(1 - e^{-gamma0 t}), alpha0 + p t for gamma0 = 0.
Complex linear_damping_amplitude(Complex alpha0, const OscillatorParams& params, double t);

struct SemiclassicalPath {
  TimeGrid grid;
  std::vector<Complex> alpha;
  std::vector<double> noise_B;   ///< empty for classical_path
  std::vector<Complex> noise_C;  ///< empty for classical_path
};

/// d alpha/dt = p - 2iG|alpha|^2 alpha - gamma0 alpha.
SemiclassicalPath classical_path(Complex alpha0, const OscillatorParams& params,
                                 const TimeGrid& grid, double rtol = 1e-10);

/// The amplitude equation together with the linearized noise moments
///   dB/dt = -(gamma + gamma*) B - (delta* C + delta C*)
///   dC/dt = -delta (1 + 2B) - 2 gamma C
/// where gamma = gamma0 + 4iG|alpha|^2 and delta = 2iG alpha^2 follow alpha(t).
SemiclassicalPath linearized_noise_path(Complex alpha0, double B0, Complex C0,
                                        const OscillatorParams& params, const TimeGrid& grid,
                                        double rtol = 1e-10);

}  // namespace kerrosc
