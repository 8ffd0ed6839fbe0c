#include "kerrosc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace kerrosc {

namespace {

struct EigenPairs {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;
};

EigenPairs hermitian_eigen(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigSolverFailure, "Hermitian eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix hermitian_sqrt(const CMatrix& m) {
  const auto eig = hermitian_eigen(m);
  const Eigen::VectorXd roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "states have dimensions " + std::to_string(a.dim()) +
                                                  " and " + std::to_string(b.dim()));
  }
}

}  // namespace

MomentSet moments(const DensityMatrix& rho) {
  Complex a1 = 0.0;
  Complex a2 = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  for (int k = 0; k < rho.dim(); ++k) {
    const double p = rho(k, k).real();
    n1 += k * p;
    n2 += static_cast<double>(k) * k * p;
    if (k >= 1) a1 += std::sqrt(static_cast<double>(k)) * rho(k, k - 1);
    if (k >= 2) a2 += std::sqrt(static_cast<double>(k) * (k - 1)) * rho(k, k - 2);
  }
  return {a1, n1, n2, n1 - std::norm(a1), a2 - a1 * a1};
}

FanoFactor fano(const DensityMatrix& rho) {
  const MomentSet m = moments(rho);
  if (m.mean_n < 1e-12) return {1.0, true};
  return {(m.mean_n2 - m.mean_n * m.mean_n) / m.mean_n, false};
}

double squeezing_from_moments(double B, Complex C) { return 1.0 + 2.0 * (B - std::abs(C)); }

double squeezing(const DensityMatrix& rho) {
  const MomentSet m = moments(rho);
  return squeezing_from_moments(m.B, m.C);
}

std::vector<double> photon_distribution(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  double total = 0.0;
  for (int k = 0; k < rho.dim(); ++k) {
    const double v = rho(k, k).real();
    if (v < -1e-10) {
      throw Error(ErrorKind::NegativeDiagonal,
                  "rho(" + std::to_string(k) + "," + std::to_string(k) + ") = " + std::to_string(v));
    }
    p[k] = std::max(v, 0.0);
    total += p[k];
  }
  for (double& v : p) v /= total;
  return p;
}

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho) {
  const auto eig = hermitian_eigen(rho.matrix());
  SpectralDecomposition out;
  const int dim = rho.dim();
  out.weights.reserve(dim);
  out.eigenstates.reserve(dim);
  for (int i = dim - 1; i >= 0; --i) {
    out.weights.push_back(std::clamp(eig.values(i), 0.0, 1.0));
    out.eigenstates.push_back(StateVector::normalized(eig.vectors.col(i)));
  }
  return out;
}

double min_eigenvalue(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigSolverFailure, "Hermitian eigendecomposition did not converge");
  }
  return solver.eigenvalues()(0);
}

double von_neumann_entropy(const std::vector<double>& weights) {
  double e = 0.0;
  for (double p : weights) {
    if (p > kEigenvalueFloor) e -= p * std::log(p);
  }
  return std::max(e, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(spectral_decomposition(rho).weights);
}

Mixedness linear_entropy_and_purity(const DensityMatrix& rho) {
  // Tr rho^2 = sum_mn |rho_mn|^2 for Hermitian rho.
  const double purity = rho.matrix().squaredNorm();
  return {1.0 - purity, purity};
}

ChaoticReference chaotic_reference(double mean_n, int count) {
  if (!(mean_n >= 0.0)) throw Error(ErrorKind::InvalidArgument, "mean_n must be >= 0");
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be >= 1");
  ChaoticReference out;
  out.weights.resize(count);
  const double ratio = mean_n / (1.0 + mean_n);
  double w = 1.0 / (1.0 + mean_n);
  for (int k = 0; k < count; ++k) {
    out.weights[k] = w;
    w *= ratio;
  }
  if (mean_n == 0.0) {
    out.entropy = 0.0;
    out.linear_entropy = 0.0;
  } else {
    out.entropy = (1.0 + mean_n) * std::log1p(mean_n) - mean_n * std::log(mean_n);
    out.linear_entropy = 2.0 * mean_n / (1.0 + 2.0 * mean_n);
  }
  return out;
}

LinearEntropyBound max_linear_entropy_bound(double mean_n) {
  if (!(mean_n >= 0.0)) throw Error(ErrorKind::InvalidArgument, "mean_n must be >= 0");
  LinearEntropyBound out;
  const double n = mean_n;
  out.l_max = 1.0 - (1.0 + 2.0 * n) / ((1.0 + 3.0 * n) * (1.0 + 1.5 * n));
  const double top = 1.0 + 3.0 * n;
  for (int k = 0; k < top; ++k) {
    out.weights.push_back(2.0 / (2.0 + 3.0 * n) * (1.0 - k / top));
  }
  return out;
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  // Tr sqrt(sqrt(sigma) rho sqrt(sigma)) is the trace norm of sqrt(rho) sqrt(sigma); the
  // singular values avoid taking square roots of round-off sized eigenvalues.
  const CMatrix x = hermitian_sqrt(rho.matrix()) * hermitian_sqrt(sigma.matrix());
  Eigen::JacobiSVD<CMatrix> svd(x);
  const double fidelity_root = svd.singularValues().sum();
  return std::clamp(2.0 - 2.0 * fidelity_root, 0.0, 2.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const auto rho_eig = hermitian_eigen(rho.matrix());
  double rho_log_rho = 0.0;
  for (int i = 0; i < rho_eig.values.size(); ++i) {
    const double p = rho_eig.values(i);
    if (p > kEigenvalueFloor) rho_log_rho += p * std::log(p);
  }

  const auto sig = hermitian_eigen(sigma.matrix());
  double rho_log_sigma = 0.0;
  double unsupported = 0.0;
  for (int k = 0; k < sig.values.size(); ++k) {
    const auto v = sig.vectors.col(k);
    const double w = v.dot(rho.matrix() * v).real();
    if (sig.values(k) < kEigenvalueFloor) {
      unsupported += std::max(w, 0.0);
    } else {
      rho_log_sigma += w * std::log(sig.values(k));
    }
  }
  if (unsupported > 1e-6) {
    throw Error(ErrorKind::SupportMismatch,
                "rho has weight " + std::to_string(unsupported) +
                    " outside the numerical support of sigma");
  }
  return rho_log_rho - rho_log_sigma;
}

}  // namespace kerrosc
