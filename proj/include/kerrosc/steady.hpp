#pragma once

#include "kerrosc/fock.hpp"
#include "kerrosc/special.hpp"

namespace kerrosc {

/// Parameters of the exact steady state of the pumped Kerr oscillator:
/// epsilon = -i p / G, lambda = -i gamma0 / G and the normalization
/// C = Gamma(lambda*) Gamma(lambda) / 0F2(lambda*, lambda, 2|epsilon|^2).
struct SteadyParams {
  Complex epsilon;
  Complex lambda;
  Complex log_norm_C;  ///< ln C; C itself under/overflows for small G
  double norm_series_cancellation;  ///< max term / |sum| of the normalization series

  Complex norm_C() const { return std::exp(log_norm_C); }
};

SteadyParams steady_params(const OscillatorParams& params);

/// <n|rho_ss|m> = C eps^n eps*^m / sqrt(n! m!) 0F2(lambda* + m, lambda + n, |eps|^2)
///                / (Gamma(lambda* + m) Gamma(lambda + n)),
/// assembled in log space.
Complex steady_element(int n, int m, const SteadyParams& sp);

struct SteadyAssembly {
  CMatrix raw;                 ///< elements before hermitization or renormalization
  double raw_trace_error;      ///< |Tr raw - 1|
  double tail_mass;            ///< diagonal weight beyond n_cut
  double max_cancellation;     ///< worst max-term/|sum| over all 0F2 evaluations
};

SteadyAssembly assemble_steady(const OscillatorParams& params, const FockCutoff& cutoff);

/// Exact steady state, hermitized and renormalized. Throws KerrZero for G = 0 and
/// CutoffTooSmall when more than 1e-8 of the diagonal lies beyond n_cut.
DensityMatrix steady_density(const OscillatorParams& params, const FockCutoff& cutoff);

/// <(a^dag)^m a^n>_ss = C eps*^m eps^n 0F2(lambda* + m, lambda + n, 2|eps|^2)
///                      / (Gamma(lambda* + m) Gamma(lambda + n)).
Complex steady_moment(int m, int n, const OscillatorParams& params);

}  // namespace kerrosc
