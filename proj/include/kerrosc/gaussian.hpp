#pragma once

#include <string>
#include <vector>

#include "kerrosc/fock.hpp"

namespace kerrosc {

/// Gaussian state given by its mean amplitude and noise moments
/// B = <a^dag a> - |<a>|^2 and C = <a^2> - <a>^2.
struct GaussianState {
  Complex alpha;
  double B;
  Complex C;
};

struct LinearizedCoeffs {
  Complex gamma_eff;  ///< gamma0 + 4 i G |alpha|^2
  Complex delta_eff;  ///< 2 i G alpha^2
  bool stable;        ///< |gamma| > |delta|
};

/// Stationary classical amplitude. Solves I (gamma0^2 + 4 G^2 I^2) = |p|^2 for the
/// intensity, then alpha = p / (gamma0 + 2 i G I).
Complex classical_steady_amplitude(const OscillatorParams& params);

LinearizedCoeffs linearized_coeffs(Complex alpha, const OscillatorParams& params);

/// Fixed point of the linearized noise equations: 2B = |delta|^2 / (|gamma|^2 - |delta|^2),
/// 2C = -delta gamma* / (|gamma|^2 - |delta|^2). `alpha` of the result is zero.
GaussianState steady_noise_moments(const LinearizedCoeffs& coeffs);

/// |gamma| / (|gamma| + |delta|).
double gaussian_squeeze_S(const LinearizedCoeffs& coeffs);

/// sqrt((B + 1/2)^2 - |C|^2) - 1/2.
double gaussian_x(const GaussianState& gs);

/// p_k = x^k / (1 + x)^{k+1} for k = 0..k_max.
std::vector<double> gaussian_weights(double x, int k_max);

struct EntropyPurity {
  double entropy;
  double purity;
};

EntropyPurity gaussian_entropy_purity(double x);

struct GaussianNoise {
  double S;
  double F;
  bool vacuum_limit;  ///< |alpha|^2 + B == 0; F is reported as 1
};

/// S = 1 + 2(B - |C|), F = 1 + 2B + (C alpha*^2 + C* alpha^2) / (|alpha|^2 + B).
GaussianNoise gaussian_S_F(const GaussianState& gs);

/// Large-pump limit where gamma0 is negligible and |gamma| = 2|delta|.
struct StrongPumpEstimate {
  double S;
  double F;
  double x;
  double linear_entropy;
  double entropy;
  std::vector<double> weights;  ///< p0, p1, p2
};

StrongPumpEstimate strong_pump_estimate();

struct ComparisonRow {
  std::string quantity;
  double exact;
  double gaussian;
  double difference;  ///< |exact - gaussian|
};

struct GaussianComparison {
  Complex alpha;
  LinearizedCoeffs coeffs;
  GaussianState gaussian;
  std::vector<ComparisonRow> rows;  ///< E, L, S, F, n, p0..p5

  const ComparisonRow& row(const std::string& quantity) const;
};

/// Exact steady state against its Gaussian approximation. Exact weights are the
/// eigenvalues of rho_ss in descending order.
GaussianComparison gaussian_vs_exact_report(const OscillatorParams& params, const FockCutoff& cutoff);

}  // namespace kerrosc
