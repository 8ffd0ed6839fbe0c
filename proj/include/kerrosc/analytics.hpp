#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kerrosc/fock.hpp"

namespace kerrosc {

/// tau_ik = 1 / (2 gamma0 |alpha_i - alpha_k|^2); the diagonal is +inf.
Eigen::MatrixXd decoherence_times(const std::vector<Complex>& alphas, double loss);

/// Short-time linear entropy of the three-component kitten, (2/3)(1 - exp(-6 gamma0 |alpha|^2 t)).
double kitten_linear_entropy_approx(double alpha_mag, double loss, double t);

/// Binomial photon distribution of |n> after damping for time t, success probability
/// exp(-2 gamma0 t). Length n + 1.
std::vector<double> fock_damping_distribution(int n, double loss, double t);

struct FockEntropyPeak {
  double exact;     ///< 1 - (2n)! / (2^n n!)^2
  double stirling;  ///< 1 - 1 / sqrt(pi n)
  double t_star;    ///< ln 2 / (2 gamma0)
};

FockEntropyPeak fock_max_linear_entropy(int n, double loss);

/// Poisson weights with mean |alpha|^2 exp(-2 gamma0 t), truncated to the cutoff.
std::vector<double> coherent_damped_distribution(Complex alpha, double loss, double t,
                                                 const FockCutoff& cutoff);

}  // namespace kerrosc
