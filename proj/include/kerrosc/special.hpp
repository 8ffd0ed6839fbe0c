#pragma once

#include <complex>

namespace kerrosc {

using Complex = std::complex<double>;

/// ln Gamma(z) for complex z, up to a multiple of 2 pi i (exponentiate to use it).
/// Lanczos (g = 7) with reflection for Re z < 1/2.
Complex complex_log_gamma(Complex z);

Complex complex_gamma(Complex z);

struct HypergeometricSum {
  Complex value;
  int terms;
  double max_term;  ///< largest |term| seen; max_term / |value| flags cancellation
};

/// 0F2(; a, b; z) = sum_k z^k / (k! (a)_k (b)_k) for real z >= 0, with running Pochhammer
/// products and compensated summation. Throws NonconvergenceWithinMaxTerms after 1e5 terms.
HypergeometricSum hyper_0f2_sum(Complex a, Complex b, double z);

inline Complex hyper_0f2(Complex a, Complex b, double z) { return hyper_0f2_sum(a, b, z).value; }

}  // namespace kerrosc
