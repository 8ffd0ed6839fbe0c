#include "kerrosc/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace kerrosc {

namespace {

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

Eigen::MatrixXd decoherence_times(const std::vector<Complex>& alphas, double loss) {
  if (!(loss > 0.0)) throw Error(ErrorKind::InvalidArgument, "loss must be > 0");
  const int n = static_cast<int>(alphas.size());
  Eigen::MatrixXd tau = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double sep = std::norm(alphas[i] - alphas[k]);
      if (sep == 0.0) {
        throw Error(ErrorKind::ZeroSeparation,
                    "components " + std::to_string(i) + " and " + std::to_string(k) + " coincide");
      }
      tau(i, k) = tau(k, i) = 1.0 / (2.0 * loss * sep);
    }
  }
  return tau;
}

double kitten_linear_entropy_approx(double alpha_mag, double loss, double t) {
  require_nonnegative(t, "t");
  return 2.0 / 3.0 * -std::expm1(-6.0 * loss * alpha_mag * alpha_mag * t);
}

std::vector<double> fock_damping_distribution(int n, double loss, double t) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be >= 0");
  require_nonnegative(t, "t");
  require_nonnegative(loss, "loss");
  const double q = std::exp(-2.0 * loss * t);
  std::vector<double> p(n + 1, 0.0);
  if (q == 1.0) {
    p[n] = 1.0;
    return p;
  }
  if (q == 0.0) {
    p[0] = 1.0;
    return p;
  }
  const double log_q = -2.0 * loss * t;
  const double log_1mq = std::log(-std::expm1(log_q));
  const double lfn = std::lgamma(n + 1.0);
  for (int k = 0; k <= n; ++k) {
    p[k] = std::exp(lfn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * log_q +
                    (n - k) * log_1mq);
  }
  return p;
}

FockEntropyPeak fock_max_linear_entropy(int n, double loss) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (!(loss > 0.0)) throw Error(ErrorKind::InvalidArgument, "loss must be > 0");
  const double log_central = std::lgamma(2.0 * n + 1.0) - 2.0 * std::lgamma(n + 1.0) -
                             n * std::log(4.0);
  return {1.0 - std::exp(log_central), 1.0 - 1.0 / std::sqrt(std::numbers::pi * n),
          std::log(2.0) / (2.0 * loss)};
}

std::vector<double> coherent_damped_distribution(Complex alpha, double loss, double t,
                                                 const FockCutoff& cutoff) {
  require_nonnegative(t, "t");
  require_nonnegative(loss, "loss");
  const Complex damped = alpha * std::exp(-loss * t);
  const double tail = coherent_tail_mass(damped, cutoff.n_cut());
  if (tail >= kTailMassLimit) {
    throw Error(ErrorKind::CutoffTooSmall, "Poisson tail " + std::to_string(tail) +
                                               " beyond n_cut=" + std::to_string(cutoff.n_cut()));
  }
  const double mean = std::norm(damped);
  std::vector<double> p(cutoff.dim(), 0.0);
  if (mean == 0.0) {
    p[0] = 1.0;
    return p;
  }
  const double log_mean = std::log(mean);
  for (int k = 0; k < cutoff.dim(); ++k) {
    p[k] = std::exp(k * log_mean - mean - std::lgamma(k + 1.0));
  }
  return p;
}

}  // namespace kerrosc
