#include "kerrosc/steady.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kerrosc {

namespace {

void require_kerr(const OscillatorParams& params) {
  params.validate();
  if (params.kerr == 0.0) {
    throw Error(ErrorKind::KerrZero,
                "the exact steady state needs G != 0; for G = 0 the steady state is the coherent "
                "state |p/gamma0> (linear_damping_amplitude)");
  }
}

// exp(log_prefactor) * value, guarding the exp against a -inf log for eps = 0.
Complex scaled(Complex log_prefactor, Complex value) {
  if (!std::isfinite(log_prefactor.real()) && log_prefactor.real() < 0) return 0.0;
  return std::exp(log_prefactor) * value;
}

// (n + m) ln|eps| + i (n - m) arg eps: the log of eps^n eps*^m.
Complex log_eps_power(const SteadyParams& sp, int n, int m) {
  if (n + m == 0) return 0.0;
  const double mag = std::abs(sp.epsilon);
  if (mag == 0.0) return Complex(-INFINITY, 0.0);
  return Complex((n + m) * std::log(mag), (n - m) * std::arg(sp.epsilon));
}

}  // namespace

SteadyParams steady_params(const OscillatorParams& params) {
  require_kerr(params);
  SteadyParams sp{};
  const Complex i(0.0, 1.0);
  sp.epsilon = -i * params.pump / params.kerr;
  sp.lambda = -i * params.loss / params.kerr;
  const auto series = hyper_0f2_sum(std::conj(sp.lambda), sp.lambda, 2.0 * std::norm(sp.epsilon));
  sp.log_norm_C = complex_log_gamma(std::conj(sp.lambda)) + complex_log_gamma(sp.lambda) -
                  std::log(series.value);
  sp.norm_series_cancellation = series.max_term / std::abs(series.value);
  return sp;
}

Complex steady_element(int n, int m, const SteadyParams& sp) {
  const Complex a = std::conj(sp.lambda) + static_cast<double>(m);
  const Complex b = sp.lambda + static_cast<double>(n);
  const auto series = hyper_0f2_sum(a, b, std::norm(sp.epsilon));
  const Complex log_pref = sp.log_norm_C + log_eps_power(sp, n, m) -
                           0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0)) -
                           complex_log_gamma(a) - complex_log_gamma(b);
  return scaled(log_pref, series.value);
}

SteadyAssembly assemble_steady(const OscillatorParams& params, const FockCutoff& cutoff) {
  const SteadyParams sp = steady_params(params);
  const int dim = cutoff.dim();
  SteadyAssembly out;
  out.raw = CMatrix(dim, dim);
  out.max_cancellation = sp.norm_series_cancellation;
  const double z = std::norm(sp.epsilon);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      const Complex a = std::conj(sp.lambda) + static_cast<double>(m);
      const Complex b = sp.lambda + static_cast<double>(n);
      const auto series = hyper_0f2_sum(a, b, z);
      const Complex log_pref = sp.log_norm_C + log_eps_power(sp, n, m) -
                               0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0)) -
                               complex_log_gamma(a) - complex_log_gamma(b);
      out.raw(n, m) = scaled(log_pref, series.value);
      if (std::abs(series.value) > 0.0) {
        out.max_cancellation =
            std::max(out.max_cancellation, series.max_term / std::abs(series.value));
      }
    }
  }
  out.raw_trace_error = std::abs(out.raw.trace() - 1.0);

  // Diagonal weight past the cutoff, summed until the terms are negligible.
  double tail = 0.0;
  for (int n = dim; n < dim + 400; ++n) {
    const double w = steady_element(n, n, sp).real();
    tail += w;
    if (n > dim + 5 && std::abs(w) < 1e-20) break;
  }
  out.tail_mass = tail;
  return out;
}

DensityMatrix steady_density(const OscillatorParams& params, const FockCutoff& cutoff) {
  const SteadyAssembly assembly = assemble_steady(params, cutoff);
  if (assembly.tail_mass > kTailMassLimit) {
    throw Error(ErrorKind::CutoffTooSmall,
                "steady state has diagonal weight " + std::to_string(assembly.tail_mass) +
                    " beyond n_cut=" + std::to_string(cutoff.n_cut()));
  }
  if (assembly.raw_trace_error > 1e-8 + assembly.tail_mass) {
    throw Error(ErrorKind::NonconvergenceWithinMaxTerms,
                "steady-state normalization off by " + std::to_string(assembly.raw_trace_error) +
                    "; parameters exceed double-precision range of the series");
  }
  return hermitize_and_renormalize(assembly.raw);
}

Complex steady_moment(int m, int n, const OscillatorParams& params) {
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidArgument, "moment orders must be >= 0");
  const SteadyParams sp = steady_params(params);
  const Complex a = std::conj(sp.lambda) + static_cast<double>(m);
  const Complex b = sp.lambda + static_cast<double>(n);
  const auto series = hyper_0f2_sum(a, b, 2.0 * std::norm(sp.epsilon));
  // eps*^m eps^n = conj-order of the matrix element's eps^n eps*^m.
  const Complex log_pref = sp.log_norm_C + log_eps_power(sp, n, m) - complex_log_gamma(a) -
                           complex_log_gamma(b);
  return scaled(log_pref, series.value);
}

}  // namespace kerrosc
