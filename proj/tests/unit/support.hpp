#pragma once

#include <random>

#include "kerrosc/dynamics.hpp"
#include "kerrosc/fock.hpp"

namespace testsupport {

using kerrosc::CMatrix;
using kerrosc::Complex;

// Random full-rank density matrix: G G^dag / Tr with Gaussian G, weighted toward low photon numbers.
inline kerrosc::DensityMatrix random_density(int dim, std::mt19937& rng, double decay = 0.4) {
  std::normal_distribution<double> nd;
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(nd(rng), nd(rng)) * std::exp(-decay * i);
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return kerrosc::DensityMatrix(rho);
}

// Master-equation right-hand side from dense operator products.
inline CMatrix dense_liouvillian(const CMatrix& rho, const kerrosc::OscillatorParams& p) {
  const int dim = static_cast<int>(rho.rows());
  const CMatrix a = kerrosc::annihilation_matrix(kerrosc::FockCutoff(dim - 1));
  const CMatrix ad = a.adjoint();
  const Complex i(0.0, 1.0);
  const CMatrix H = i * (p.pump * ad - std::conj(p.pump) * a) + p.kerr * ad * ad * a * a;
  const CMatrix n = ad * a;
  return -i * (H * rho - rho * H) + p.loss * (2.0 * a * rho * ad - n * rho - rho * n);
}

// Tr(rho (a^dag)^m a^n) from dense products.
inline Complex matrix_moment(const kerrosc::DensityMatrix& rho, int m, int n) {
  const CMatrix a = kerrosc::annihilation_matrix(kerrosc::FockCutoff(rho.dim() - 1));
  CMatrix op = CMatrix::Identity(rho.dim(), rho.dim());
  for (int k = 0; k < m; ++k) op = op * a.adjoint();
  for (int k = 0; k < n; ++k) op = op * a;
  return (rho.matrix() * op).trace();
}

}  // namespace testsupport
