#include "kerrosc/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kerrosc/error.hpp"

namespace kerrosc {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// ln sin(pi z), written to avoid overflow of sin for large |Im z|.
Complex log_sin_pi(Complex z) {
  const Complex i(0.0, 1.0);
  if (z.imag() > 5.0) {
    return -i * kPi * z + std::log(Complex(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * kPi * z));
  }
  if (z.imag() < -5.0) {
    return i * kPi * z + std::log(Complex(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * i * kPi * z));
  }
  return std::log(std::sin(kPi * z));
}

Complex lanczos_log_gamma(Complex z) {
  // Valid for Re z >= 1/2.
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

Complex complex_log_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorKind::PoleAtNonpositiveInteger,
                "Gamma has a pole at " + std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
  }
  return lanczos_log_gamma(z);
}

Complex complex_gamma(Complex z) {
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 171.0) {
    return std::tgamma(z.real());
  }
  return std::exp(complex_log_gamma(z));
}

HypergeometricSum hyper_0f2_sum(Complex a, Complex b, double z) {
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    throw Error(ErrorKind::PoleAtNonpositiveInteger, "0F2 parameter is a nonpositive integer");
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw Error(ErrorKind::InvalidArgument, "0F2 argument must be finite and >= 0");
  }
  constexpr int kMaxTerms = 100000;

  // Neumaier-compensated sum, real and imaginary parts separately.
  double sum_re = 1.0, comp_re = 0.0;
  double sum_im = 0.0, comp_im = 0.0;
  auto add = [](double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  };

  Complex term = 1.0;
  double max_term = 1.0;
  int small_run = 0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const Complex denom = static_cast<double>(k + 1) * (a + static_cast<double>(k)) *
                          (b + static_cast<double>(k));
    const Complex ratio = z / denom;
    term *= ratio;
    add(sum_re, comp_re, term.real());
    add(sum_im, comp_im, term.imag());
    const double mag = std::abs(term);
    max_term = std::max(max_term, mag);
    if (!std::isfinite(mag)) break;

    const double partial = std::abs(Complex(sum_re + comp_re, sum_im + comp_im));
    // Only count toward termination once the terms are shrinking for good.
    if (mag <= 1e-16 * partial && std::abs(ratio) < 1.0) {
      if (++small_run >= 3) {
        return {Complex(sum_re + comp_re, sum_im + comp_im), k + 2, max_term};
      }
    } else {
      small_run = 0;
    }
  }
  throw Error(ErrorKind::NonconvergenceWithinMaxTerms,
              "0F2 series did not converge (z=" + std::to_string(z) + ")");
}

}  // namespace kerrosc
