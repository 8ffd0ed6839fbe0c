#pragma once

#include <vector>

#include "kerrosc/fock.hpp"

namespace kerrosc {

/// First and second moments of a state.
struct MomentSet {
  Complex mean_a;   ///< <a>
  double mean_n;    ///< <a^dag a>
  double mean_n2;   ///< <(a^dag a)^2>
  double B;         ///< <a^dag a> - |<a>|^2
  Complex C;        ///< <a^2> - <a>^2
};

MomentSet moments(const DensityMatrix& rho);

struct FanoFactor {
  double value;
  bool vacuum_limit;  ///< <n> < 1e-12; value is reported as 1
};

FanoFactor fano(const DensityMatrix& rho);

/// Minimum over theta of Var(a e^{-i theta} + a^dag e^{i theta}) = 1 + 2(B - |C|).
double squeezing(const DensityMatrix& rho);
double squeezing_from_moments(double B, Complex C);

/// Diagonal of rho, clipped at -1e-10 and renormalized.
std::vector<double> photon_distribution(const DensityMatrix& rho);

struct SpectralDecomposition {
  std::vector<double> weights;          ///< descending
  std::vector<StateVector> eigenstates;  ///< matching weights
};

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho);

/// Smallest eigenvalue (no clipping); used to check positivity.
double min_eigenvalue(const DensityMatrix& rho);

inline constexpr double kEigenvalueFloor = 1e-12;

double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const std::vector<double>& weights);

struct Mixedness {
  double linear_entropy;
  double purity;
};

/// Purity Tr rho^2 from the matrix elements; linear entropy 1 - purity.
Mixedness linear_entropy_and_purity(const DensityMatrix& rho);

struct ChaoticReference {
  std::vector<double> weights;
  double entropy;
  double linear_entropy;
};

/// Thermal state with mean photon number `mean_n`: weights n^k / (1+n)^{k+1} for
/// k < count, E = -ln[n^n / (1+n)^{1+n}], L = 2n / (1 + 2n).
ChaoticReference chaotic_reference(double mean_n, int count);

struct LinearEntropyBound {
  double l_max;
  std::vector<double> weights;  ///< arithmetic-descending distribution reaching l_max
};

/// L_max = 1 - (1 + 2n) / ((1 + 3n)(1 + 3n/2)); weights 2/(2+3n) (1 - k/(1+3n)) for the
/// k where they are positive.
LinearEntropyBound max_linear_entropy_bound(double mean_n);

/// 2 - 2 Tr sqrt(sqrt(sigma) rho sqrt(sigma)).
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr rho (ln rho - ln sigma). Throws SupportMismatch when rho puts more than 1e-6 of
/// weight on eigenvectors of sigma with eigenvalue below kEigenvalueFloor.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace kerrosc
