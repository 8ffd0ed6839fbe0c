#pragma once

#include <vector>

#include "kerrosc/fock.hpp"
#include "kerrosc/gaussian.hpp"

namespace kerrosc {

/// L_n^k(x) by upward recurrence in n.
double associated_laguerre(int n, int k, double x);

/// <n| T^(s)(beta) |m> of the Cahill-Glauber operator, s in [-1, 1 - 1e-9].
Complex cg_matrix_element(int n, int m, Complex beta, double s);

struct QuasiGrid {
  double s = 0.0;
  std::vector<double> re_axis;
  std::vector<double> im_axis;
  std::vector<std::vector<double>> values;  ///< values[i][j] at beta = re_axis[j] + i im_axis[i]
  double max_imag_residue = 0.0;            ///< largest |Im W| discarded on assembly

  double max_value() const;
  double min_value() const;
  /// Riemann sum of the values times the cell area.
  double integral() const;
};

/// Uniform axis of `count` points from lo to hi inclusive.
std::vector<double> uniform_axis(double lo, double hi, int count);

/// W^(s)(beta) = (1/pi) sum_mn rho_mn <n|T^(s)(beta)|m> on the grid. Rows are evaluated in
/// parallel; the thread count comes from KERROSC_THREADS (default: hardware concurrency).
QuasiGrid quasidistribution(const DensityMatrix& rho, double s, const std::vector<double>& re_axis,
                            const std::vector<double>& im_axis);

/// K_s = (1/2 - s/2 + B)^2 - |C|^2.
double gaussian_K(const GaussianState& gs, double s);

/// Closed-form quasidistribution of a Gaussian state. Throws NonpositiveKs when K_s <= 0.
QuasiGrid gaussian_quasidistribution(const GaussianState& gs, double s,
                                     const std::vector<double>& re_axis,
                                     const std::vector<double>& im_axis);

/// Number of worker threads for grid evaluation.
int grid_thread_count();

}  // namespace kerrosc
