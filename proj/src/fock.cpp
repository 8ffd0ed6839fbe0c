#include "kerrosc/fock.hpp"

#include <cmath>
#include <string>

namespace kerrosc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::DriftTooLarge: return "DriftTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::CutoffExceeded: return "CutoffExceeded";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::NegativeDiagonal: return "NegativeDiagonal";
    case ErrorKind::EigSolverFailure: return "EigSolverFailure";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::SParamOutOfRange: return "SParamOutOfRange";
    case ErrorKind::NonpositiveKs: return "NonpositiveKs";
    case ErrorKind::PoleAtNonpositiveInteger: return "PoleAtNonpositiveInteger";
    case ErrorKind::NonconvergenceWithinMaxTerms: return "NonconvergenceWithinMaxTerms";
    case ErrorKind::KerrZero: return "KerrZero";
    case ErrorKind::UnstableLinearization: return "UnstableLinearization";
    case ErrorKind::UnphysicalMoments: return "UnphysicalMoments";
    case ErrorKind::ZeroSeparation: return "ZeroSeparation";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

FockCutoff::FockCutoff(int n_cut) : n_cut_(n_cut) {
  if (n_cut < 1) {
    throw Error(ErrorKind::InvalidArgument, "Fock cutoff must be >= 1, got " + std::to_string(n_cut));
  }
}

FockCutoff default_cutoff(double mean_photon_number) {
  if (!(mean_photon_number >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "mean photon number must be >= 0");
  }
  const double n = mean_photon_number;
  return FockCutoff(static_cast<int>(std::ceil(n + 10.0 * std::sqrt(n + 1.0) + 10.0)));
}

StateVector StateVector::normalized(CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::ZeroNorm, "state vector has zero or non-finite norm");
  }
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) {
    throw Error(ErrorKind::DimensionMismatch, "inner product of states with different dimensions");
  }
  return amplitudes_.dot(other.amplitudes_);
}

DensityMatrix::DensityMatrix(CMatrix elements) : elements_(std::move(elements)) {
  if (elements_.rows() != elements_.cols() || elements_.rows() < 2) {
    throw Error(ErrorKind::DimensionMismatch, "density matrix must be square with dim >= 2");
  }
  const double herm = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "density matrix not Hermitian (max deviation " +
                                                std::to_string(herm) + ")");
  }
  const Complex tr = elements_.trace();
  if (std::abs(tr - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "density matrix trace differs from 1 by " +
                                                std::to_string(std::abs(tr - 1.0)));
  }
}

void OscillatorParams::validate() const {
  if (!std::isfinite(pump.real()) || !std::isfinite(pump.imag())) {
    throw Error(ErrorKind::InvalidArgument, "pump must be finite");
  }
  if (!std::isfinite(kerr)) {
    throw Error(ErrorKind::InvalidArgument, "kerr must be finite");
  }
  if (!(loss >= 0.0) || !std::isfinite(loss)) {
    throw Error(ErrorKind::InvalidArgument, "loss must be finite and >= 0");
  }
}

namespace {

// c_k of |alpha> by c_{k+1} = c_k alpha / sqrt(k+1), without truncation renormalization.
CVector coherent_amplitudes(Complex alpha, int dim) {
  CVector c(dim);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int k = 0; k + 1 < dim; ++k) {
    c(k + 1) = c(k) * alpha / std::sqrt(static_cast<double>(k + 1));
  }
  return c;
}

void require_cutoff(Complex alpha, const FockCutoff& cutoff) {
  const double tail = coherent_tail_mass(alpha, cutoff.n_cut());
  if (tail >= kTailMassLimit) {
    throw Error(ErrorKind::CutoffTooSmall,
                "coherent amplitude |alpha|=" + std::to_string(std::abs(alpha)) +
                    " leaves tail mass " + std::to_string(tail) + " beyond n_cut=" +
                    std::to_string(cutoff.n_cut()));
  }
}

}  // namespace

double coherent_tail_mass(Complex alpha, int n_cut) {
  const double mean = std::norm(alpha);
  if (mean == 0.0) return 0.0;
  // Poisson weights by recurrence in log space up to n_cut, then sum the tail forward
  // until the terms stop contributing.
  double log_w = -mean;
  const double log_mean = std::log(mean);
  for (int k = 1; k <= n_cut + 1; ++k) log_w += log_mean - std::log(static_cast<double>(k));
  double tail = 0.0;
  for (int k = n_cut + 1;; ++k) {
    const double w = std::exp(log_w);
    tail += w;
    if (k > mean && w < 1e-18 * std::max(tail, 1e-300)) break;
    if (k > n_cut + 100000) break;
    log_w += log_mean - std::log(static_cast<double>(k + 1));
  }
  return tail;
}

StateVector coherent_state(Complex alpha, const FockCutoff& cutoff) {
  require_cutoff(alpha, cutoff);
  return StateVector::normalized(coherent_amplitudes(alpha, cutoff.dim()));
}

StateVector fock_state(int n, const FockCutoff& cutoff) {
  if (n < 0 || n > cutoff.n_cut()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "Fock index " + std::to_string(n) + " outside 0.." + std::to_string(cutoff.n_cut()));
  }
  CVector c = CVector::Zero(cutoff.dim());
  c(n) = 1.0;
  return StateVector::normalized(std::move(c));
}

Complex coherent_overlap(Complex alpha, Complex beta) {
  return std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)) + std::conj(alpha) * beta);
}

namespace {

double superposition_norm_squared(const std::vector<CoherentComponent>& components) {
  Complex total = 0.0;
  for (const auto& ci : components) {
    for (const auto& ck : components) {
      total += std::conj(ci.weight) * ck.weight * coherent_overlap(ci.alpha, ck.alpha);
    }
  }
  return total.real();
}

}  // namespace

double superposition_normalization(const std::vector<CoherentComponent>& components) {
  if (components.empty()) {
    throw Error(ErrorKind::InvalidArgument, "superposition needs at least one component");
  }
  double weight_scale = 0.0;
  for (const auto& c : components) weight_scale += std::norm(c.weight);
  const double n2 = superposition_norm_squared(components);
  if (!(n2 > 1e-14 * weight_scale)) {
    throw Error(ErrorKind::ZeroNorm, "coherent components cancel");
  }
  return 1.0 / std::sqrt(n2);
}

StateVector coherent_superposition(const std::vector<CoherentComponent>& components,
                                   const FockCutoff& cutoff) {
  const double norm = superposition_normalization(components);
  CVector sum = CVector::Zero(cutoff.dim());
  for (const auto& c : components) {
    require_cutoff(c.alpha, cutoff);
    sum += c.weight * coherent_amplitudes(c.alpha, cutoff.dim());
  }
  // The analytic constant is exact for the untruncated state; the final rescale only
  // absorbs the (sub-1e-8) truncated tail.
  return StateVector::normalized(norm * sum);
}

DensityMatrix density_from_pure(const StateVector& psi) {
  const CVector& c = psi.amplitudes();
  CMatrix rho = c * c.adjoint();
  return hermitize_and_renormalize(rho);
}

DensityMatrix diagonal_state(const std::vector<double>& weights, const FockCutoff& cutoff) {
  if (static_cast<int>(weights.size()) > cutoff.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "more weights than Fock levels");
  }
  CMatrix rho = CMatrix::Zero(cutoff.dim(), cutoff.dim());
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < 0.0) throw Error(ErrorKind::InvalidArgument, "negative weight");
    rho(k, k) = weights[k];
    total += weights[k];
  }
  if (!(total > 0.0)) throw Error(ErrorKind::ZeroNorm, "weights sum to zero");
  rho /= total;
  return DensityMatrix(std::move(rho));
}

CMatrix annihilation_matrix(const FockCutoff& cutoff) {
  CMatrix a = CMatrix::Zero(cutoff.dim(), cutoff.dim());
  for (int n = 1; n < cutoff.dim(); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

DensityMatrix hermitize_and_renormalize(const CMatrix& rho) {
  if (rho.rows() != rho.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "density matrix must be square");
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const Complex tr = rho.trace();
  if (!(herm < 1e-6) || !(std::abs(tr - 1.0) < 1e-6)) {
    throw Error(ErrorKind::DriftTooLarge, "Hermiticity drift " + std::to_string(herm) +
                                              ", trace drift " + std::to_string(std::abs(tr - 1.0)));
  }
  CMatrix out = 0.5 * (rho + rho.adjoint());
  out /= out.trace().real();
  return DensityMatrix(std::move(out));
}

double tail_mass(const DensityMatrix& rho, int margin) {
  if (margin <= 0 || margin >= rho.dim()) {
    throw Error(ErrorKind::InvalidArgument, "tail margin must be in (0, dim)");
  }
  double sum = 0.0;
  for (int k = rho.dim() - margin; k < rho.dim(); ++k) sum += rho(k, k).real();
  return sum;
}

}  // namespace kerrosc
