#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kerrosc/error.hpp"

namespace kerrosc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Truncation of the Fock space to |0>..|n_cut>.
class FockCutoff {
 public:
  explicit FockCutoff(int n_cut);

  int n_cut() const noexcept { return n_cut_; }
  int dim() const noexcept { return n_cut_ + 1; }

  friend bool operator==(const FockCutoff&, const FockCutoff&) = default;

 private:
  int n_cut_;
};

/// ceil(n + 10 sqrt(n + 1) + 10) for an initial mean photon number n.
FockCutoff default_cutoff(double mean_photon_number);

/// Normalized pure state in the truncated Fock basis.
class StateVector {
 public:
  /// Rescales `amplitudes` to unit norm; throws ZeroNorm for a null vector.
  static StateVector normalized(CVector amplitudes);

  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](int k) const { return amplitudes_(k); }

  Complex inner(const StateVector& other) const;

 private:
  explicit StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {}

  CVector amplitudes_;
};

/// Hermitian, unit-trace matrix in the truncated Fock basis.
///
/// Construction checks shape, Hermiticity (1e-10) and trace (1e-9). Positivity is
/// not checked here since it needs a diagonalization; see measures::min_eigenvalue.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix elements);

  int dim() const noexcept { return static_cast<int>(elements_.rows()); }
  const CMatrix& matrix() const noexcept { return elements_; }
  Complex operator()(int m, int n) const { return elements_(m, n); }

 private:
  CMatrix elements_;
};

/// Pump p, Kerr constant G and loss rate gamma0 of
/// H = i(p a^dag - p* a) + G a^dag^2 a^2 with zero-temperature damping.
struct OscillatorParams {
  Complex pump{0.0, 0.0};
  double kerr = 0.0;
  double loss = 0.0;

  void validate() const;
};

inline constexpr double kTailMassLimit = 1e-8;

StateVector coherent_state(Complex alpha, const FockCutoff& cutoff);
StateVector fock_state(int n, const FockCutoff& cutoff);

struct CoherentComponent {
  Complex weight;
  Complex alpha;
};

/// Normalized sum_i w_i |alpha_i>, normalized with the exact coherent overlaps.
StateVector coherent_superposition(const std::vector<CoherentComponent>& components,
                                   const FockCutoff& cutoff);

/// 1 / sqrt(sum_ik w_i* w_k <alpha_i|alpha_k>), computed in closed form.
double superposition_normalization(const std::vector<CoherentComponent>& components);

/// <alpha|beta> = exp(-(|alpha|^2 + |beta|^2)/2 + alpha* beta).
Complex coherent_overlap(Complex alpha, Complex beta);

/// Probability mass of |alpha> beyond n_cut (exact Poisson tail).
double coherent_tail_mass(Complex alpha, int n_cut);

DensityMatrix density_from_pure(const StateVector& psi);

/// Diagonal state with the given photon-number weights (renormalized).
DensityMatrix diagonal_state(const std::vector<double>& weights, const FockCutoff& cutoff);

/// Truncated annihilation operator: (a)_{n-1,n} = sqrt(n).
CMatrix annihilation_matrix(const FockCutoff& cutoff);

/// (rho + rho^dag)/2 / Tr. Throws DriftTooLarge when the input is more than 1e-6 from
/// Hermitian or unit trace.
DensityMatrix hermitize_and_renormalize(const CMatrix& rho);

/// Sum of the last `margin` diagonal entries.
double tail_mass(const DensityMatrix& rho, int margin);

}  // namespace kerrosc
