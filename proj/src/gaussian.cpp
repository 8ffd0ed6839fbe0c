#include "kerrosc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kerrosc/measures.hpp"
#include "kerrosc/steady.hpp"

namespace kerrosc {

Complex classical_steady_amplitude(const OscillatorParams& params) {
  params.validate();
  const double p2 = std::norm(params.pump);
  if (p2 == 0.0) return 0.0;
  const double g0 = params.loss;
  const double G = params.kerr;
  if (g0 == 0.0 && G == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "a pumped oscillator without loss or Kerr term has no steady state");
  }
  const auto f = [&](double I) { return I * (g0 * g0 + 4.0 * G * G * I * I) - p2; };
  const auto df = [&](double I) { return g0 * g0 + 12.0 * G * G * I * I; };

  // Both terms of the cubic are increasing, so each alone bounds the root from above.
  double hi = std::numeric_limits<double>::infinity();
  if (g0 > 0.0) hi = p2 / (g0 * g0);
  if (G != 0.0) hi = std::min(hi, std::cbrt(p2 / (4.0 * G * G)));
  double lo = 0.0;
  double I = 0.5 * hi;
  for (int it = 0; it < 200; ++it) {
    const double v = f(I);
    if (v == 0.0) break;
    if (v > 0.0) {
      hi = I;
    } else {
      lo = I;
    }
    double next = I - v / df(I);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - I) <= 1e-16 * std::max(1.0, I)) {
      I = next;
      break;
    }
    I = next;
  }
  return params.pump / Complex(g0, 2.0 * G * I);
}

LinearizedCoeffs linearized_coeffs(Complex alpha, const OscillatorParams& params) {
  const Complex i(0.0, 1.0);
  LinearizedCoeffs c;
  c.gamma_eff = params.loss + 4.0 * i * params.kerr * std::norm(alpha);
  c.delta_eff = 2.0 * i * params.kerr * alpha * alpha;
  c.stable = std::abs(c.gamma_eff) > std::abs(c.delta_eff);
  return c;
}

GaussianState steady_noise_moments(const LinearizedCoeffs& coeffs) {
  const double gap = std::norm(coeffs.gamma_eff) - std::norm(coeffs.delta_eff);
  if (!(gap > 0.0)) {
    throw Error(ErrorKind::UnstableLinearization,
                "|gamma| <= |delta|; the linearized noise has no stationary solution");
  }
  return {0.0, 0.5 * std::norm(coeffs.delta_eff) / gap,
          -0.5 * coeffs.delta_eff * std::conj(coeffs.gamma_eff) / gap};
}

double gaussian_squeeze_S(const LinearizedCoeffs& coeffs) {
  const double g = std::abs(coeffs.gamma_eff);
  const double d = std::abs(coeffs.delta_eff);
  return g / (g + d);
}

double gaussian_x(const GaussianState& gs) {
  const double det = (gs.B + 0.5) * (gs.B + 0.5) - std::norm(gs.C);
  if (gs.B < 0.0 || det < 0.25 - 1e-12) {
    throw Error(ErrorKind::UnphysicalMoments,
                "(B + 1/2)^2 - |C|^2 = " + std::to_string(det) + " is below 1/4");
  }
  return std::max(std::sqrt(std::max(det, 0.25)) - 0.5, 0.0);
}

std::vector<double> gaussian_weights(double x, int k_max) {
  if (!(x >= 0.0)) throw Error(ErrorKind::InvalidArgument, "x must be >= 0");
  if (k_max < 0) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 0");
  std::vector<double> p(k_max + 1);
  const double ratio = x / (1.0 + x);
  double w = 1.0 / (1.0 + x);
  for (int k = 0; k <= k_max; ++k) {
    p[k] = w;
    w *= ratio;
  }
  return p;
}

EntropyPurity gaussian_entropy_purity(double x) {
  if (!(x >= 0.0)) throw Error(ErrorKind::InvalidArgument, "x must be >= 0");
  const double e = x == 0.0 ? 0.0 : (1.0 + x) * std::log1p(x) - x * std::log(x);
  return {e, 1.0 / (1.0 + 2.0 * x)};
}

GaussianNoise gaussian_S_F(const GaussianState& gs) {
  GaussianNoise out;
  out.S = 1.0 + 2.0 * (gs.B - std::abs(gs.C));
  const double n = std::norm(gs.alpha) + gs.B;
  if (n <= 0.0) {
    out.F = 1.0;
    out.vacuum_limit = true;
    return out;
  }
  const Complex a2 = gs.alpha * gs.alpha;
  out.F = 1.0 + 2.0 * gs.B + 2.0 * (gs.C * std::conj(a2)).real() / n;
  out.vacuum_limit = false;
  return out;
}

StrongPumpEstimate strong_pump_estimate() {
  // With |gamma| = 2|delta| and gamma, delta in quadrature: 2B = 1/3, |2C| = 2/3.
  const GaussianState gs{1.0, 1.0 / 6.0, Complex(0.0, 1.0 / 3.0)};
  StrongPumpEstimate out;
  out.S = 1.0 + 2.0 * (gs.B - std::abs(gs.C));
  // F -> 1 + 2B + 2 Re(C alpha*^2) / |alpha|^2 with C alpha*^2 = -|alpha|^2 / 3.
  out.F = 1.0 + 2.0 * gs.B - 2.0 / 3.0;
  out.x = gaussian_x(gs);
  const auto ep = gaussian_entropy_purity(out.x);
  out.entropy = ep.entropy;
  out.linear_entropy = 1.0 - ep.purity;
  out.weights = gaussian_weights(out.x, 2);
  return out;
}

const ComparisonRow& GaussianComparison::row(const std::string& quantity) const {
  for (const auto& r : rows) {
    if (r.quantity == quantity) return r;
  }
  throw Error(ErrorKind::InvalidArgument, "no comparison row '" + quantity + "'");
}

GaussianComparison gaussian_vs_exact_report(const OscillatorParams& params, const FockCutoff& cutoff) {
  if (params.kerr == 0.0) throw Error(ErrorKind::KerrZero, "comparison needs G != 0");
  GaussianComparison out;
  out.alpha = classical_steady_amplitude(params);
  out.coeffs = linearized_coeffs(out.alpha, params);
  out.gaussian = steady_noise_moments(out.coeffs);
  out.gaussian.alpha = out.alpha;

  const DensityMatrix rho = steady_density(params, cutoff);
  const auto spectrum = spectral_decomposition(rho);
  const auto mix = linear_entropy_and_purity(rho);
  const MomentSet mom = moments(rho);

  const double x = gaussian_x(out.gaussian);
  const auto ep = gaussian_entropy_purity(x);
  const auto sf = gaussian_S_F(out.gaussian);
  const auto weights = gaussian_weights(x, 5);

  auto add = [&](std::string name, double exact, double gauss) {
    out.rows.push_back({std::move(name), exact, gauss, std::abs(exact - gauss)});
  };
  add("E", von_neumann_entropy(spectrum.weights), ep.entropy);
  add("L", mix.linear_entropy, 1.0 - ep.purity);
  add("S", squeezing_from_moments(mom.B, mom.C), sf.S);
  add("F", fano(rho).value, sf.F);
  add("n", mom.mean_n, std::norm(out.alpha) + out.gaussian.B);
  for (int k = 0; k <= 5; ++k) {
    const double exact = k < static_cast<int>(spectrum.weights.size()) ? spectrum.weights[k] : 0.0;
    add("p" + std::to_string(k), exact, weights[k]);
  }
  return out;
}

}  // namespace kerrosc
