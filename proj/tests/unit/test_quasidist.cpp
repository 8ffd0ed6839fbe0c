#include <cmath>
#include <numbers>
#include <tuple>

#include <doctest.h>

#include "kerrosc/dynamics.hpp"
#include "kerrosc/gaussian.hpp"
#include "kerrosc/quasidist.hpp"
#include "kerrosc/steady.hpp"

using namespace kerrosc;

namespace {

constexpr double kPi = std::numbers::pi;

// L_n^k(x) = sum_i (-1)^i C(n+k, n-i) x^i / i!, in long double since the sum cancels.
double laguerre_sum(int n, int k, double x) {
  long double s = 0.0L;
  for (int i = 0; i <= n; ++i) {
    long double term = 1.0L;
    for (int j = 0; j < n - i; ++j) term = term * (n + k - j) / (j + 1);
    for (int j = 1; j <= i; ++j) term = term * x / j;
    s += (i % 2 ? -term : term);
  }
  return static_cast<double>(s);
}

// Element from the closed form with Laguerre polynomials, for n <= m.
Complex element_oracle(int n, int m, Complex beta, double s) {
  const double b2 = std::norm(beta);
  const int k = m - n;
  const double pref = std::pow(2.0 / (1.0 - s), k + 1) * std::exp(-2.0 * b2 / (1.0 - s)) *
                      std::sqrt(std::tgamma(n + 1.0) / std::tgamma(m + 1.0));
  const double lag = std::pow((s + 1.0) / (s - 1.0), n) * laguerre_sum(n, k, 4.0 * b2 / (1.0 - s * s));
  return pref * lag * std::pow(std::conj(beta), k);
}

DensityMatrix coherent_rho(Complex a, int n_cut) { return density_from_pure(coherent_state(a, FockCutoff(n_cut))); }

}  // namespace

TEST_CASE("associated laguerre") {
  CHECK(associated_laguerre(0, 3, 2.7) == 1.0);
  CHECK(std::abs(associated_laguerre(1, 3, 2.7) - (1.0 + 3.0 - 2.7)) < 1e-15);
  CHECK(std::abs(associated_laguerre(3, 2, 1.5) - laguerre_sum(3, 2, 1.5)) < 1e-13);
  for (int n : {5, 9, 14}) {
    for (double x : {0.1, 3.0, 12.0}) CHECK(std::abs(associated_laguerre(n, 4, x) - laguerre_sum(n, 4, x)) < 1e-9 * (1.0 + std::abs(laguerre_sum(n, 4, x))));
  }
  CHECK_THROWS_AS(associated_laguerre(-1, 0, 1.0), Error);
}

TEST_CASE("matrix elements") {
  const Complex beta(0.7, -0.4);
  CHECK(std::abs(cg_matrix_element(0, 0, beta, 0.0) - 2.0 * std::exp(-2.0 * std::norm(beta))) < 1e-15);

  for (auto [n, m] : {std::pair{0, 0}, std::pair{2, 5}, std::pair{4, 1}, std::pair{7, 7}}) {
    const Complex husimi = std::exp(-std::norm(beta)) * std::pow(beta, n) * std::pow(std::conj(beta), m) /
                           std::sqrt(std::tgamma(n + 1.0) * std::tgamma(m + 1.0));
    CHECK(std::abs(cg_matrix_element(n, m, beta, -1.0) - husimi) < 1e-14);
  }
  for (double s : {-0.5, 0.0, 0.3}) {
    for (auto [n, m] : {std::pair{1, 4}, std::pair{3, 3}, std::pair{6, 2}}) {
      const Complex want = n <= m ? element_oracle(n, m, beta, s) : std::conj(element_oracle(m, n, beta, s));
      CHECK(std::abs(cg_matrix_element(n, m, beta, s) - want) < 1e-12);
    }
  }
  CHECK_THROWS_AS(cg_matrix_element(0, 0, beta, 1.0), Error);
  CHECK_THROWS_AS(cg_matrix_element(0, 0, beta, -1.5), Error);
}

TEST_CASE("husimi branch is continuous with s > -1") {
  const Complex beta(1.3, 0.8);
  for (auto [n, m] : {std::pair{0, 0}, std::pair{3, 6}, std::pair{8, 2}}) {
    const Complex at = cg_matrix_element(n, m, beta, -1.0);
    const Complex near = cg_matrix_element(n, m, beta, -1.0 + 1e-10);
    CHECK(std::abs(near - at) < 1e-8);
    // Difference quotient is bounded as the step shrinks.
    const Complex step = cg_matrix_element(n, m, beta, -1.0 + 1e-6);
    CHECK(std::abs(step - at) / 1e-6 < 100.0);
  }
}

TEST_CASE("coherent states match the gaussian closed form") {
  const Complex alpha(1.5, -1.0);
  const auto rho = coherent_rho(alpha, 40);
  const auto axis = uniform_axis(-4.0, 4.0, 17);
  for (double s : {-1.0, -0.5, 0.0}) {
    const auto exact = quasidistribution(rho, s, axis, axis);
    const auto gauss = gaussian_quasidistribution({alpha, 0.0, 0.0}, s, axis, axis);
    double worst = 0.0;
    for (std::size_t i = 0; i < axis.size(); ++i) {
      for (std::size_t j = 0; j < axis.size(); ++j) {
        const Complex b(axis[j], axis[i]);
        const double closed = 2.0 / (kPi * (1.0 - s)) * std::exp(-2.0 * std::norm(b - alpha) / (1.0 - s));
        worst = std::max(worst, std::abs(exact.values[i][j] - closed));
        worst = std::max(worst, std::abs(gauss.values[i][j] - closed));
      }
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("reference values") {
  const std::vector<double> origin{0.0};
  const auto vac = quasidistribution(coherent_rho(0.0, 10), 0.0, origin, origin);
  CHECK(std::abs(vac.values[0][0] - 2.0 / kPi) < 1e-14);
  for (double s : {-1.0, -0.6, 0.5}) {
    CHECK(std::abs(quasidistribution(coherent_rho(0.0, 10), s, origin, origin).values[0][0] - 2.0 / (kPi * (1.0 - s))) < 1e-14);
  }
  const auto f9 = quasidistribution(density_from_pure(fock_state(9, FockCutoff(20))), 0.0, origin, origin);
  CHECK(std::abs(f9.values[0][0] + 2.0 / kPi) < 1e-13);
}

TEST_CASE("grids of physical states") {
  const FockCutoff cut(40);
  const auto axis = uniform_axis(-9.0, 9.0, 91);
  const auto psi = kerr_lossless_evolve(coherent_state(3.0, cut), 1.0, kPi / 2.0);
  const auto rho = density_from_pure(psi);

  const auto q = quasidistribution(rho, -1.0, axis, axis);
  CHECK(q.min_value() >= -1e-12);
  CHECK(std::abs(q.integral() - 1.0) < 1e-6);
  CHECK(q.max_imag_residue < 1e-12);
  // Two lobes on the imaginary axis at +-3i.
  const auto at = [&](double re, double im) {
    return quasidistribution(rho, -1.0, {re}, {im}).values[0][0];
  };
  CHECK(at(0.0, 3.0) > 10.0 * at(3.0, 0.0));
  CHECK(at(0.0, -3.0) > 10.0 * at(-3.0, 0.0));
  CHECK(std::abs(at(0.0, 3.0) - at(0.0, -3.0)) < 1e-10);

  const auto w = quasidistribution(rho, 0.0, axis, axis);
  CHECK(std::abs(w.integral() - 1.0) < 1e-6);
  CHECK(w.min_value() < -0.01);  // interference fringes

  // Marginal <n> from the Wigner function: <|beta|^2>_W = <n> + 1/2.
  double m2 = 0.0;
  const double cell = (axis[1] - axis[0]) * (axis[1] - axis[0]);
  for (std::size_t i = 0; i < axis.size(); ++i) {
    for (std::size_t j = 0; j < axis.size(); ++j) m2 += (axis[i] * axis[i] + axis[j] * axis[j]) * w.values[i][j] * cell;
  }
  CHECK(std::abs(m2 - 9.5) < 1e-4);
}

TEST_CASE("thread count does not change results") {
  const auto rho = steady_density({5.0, 0.2, 1.0}, FockCutoff(40));
  const auto axis = uniform_axis(-4.0, 4.0, 21);
  setenv("KERROSC_THREADS", "1", 1);
  CHECK(grid_thread_count() == 1);
  const auto one = quasidistribution(rho, 0.0, axis, axis);
  setenv("KERROSC_THREADS", "4", 1);
  CHECK(grid_thread_count() == 4);
  const auto four = quasidistribution(rho, 0.0, axis, axis);
  unsetenv("KERROSC_THREADS");
  CHECK(one.values == four.values);
}

TEST_CASE("gaussian approximation of the steady Wigner function") {
  const OscillatorParams p{5.0, 0.2, 1.0};
  GaussianState gs = steady_noise_moments(linearized_coeffs(Complex(1.0, -2.0), p));
  gs.alpha = Complex(1.0, -2.0);
  const auto axis = uniform_axis(-5.0, 5.0, 101);
  const auto exact = quasidistribution(steady_density(p, FockCutoff(40)), 0.0, axis, axis);
  const auto approx = gaussian_quasidistribution(gs, 0.0, axis, axis);
  CHECK(std::abs(approx.max_value() / exact.max_value() - 1.0) < 0.05);
  CHECK(std::abs(approx.integral() - 1.0) < 1e-6);
  CHECK(approx.min_value() >= 0.0);

  bool nonpositive = false;
  try {
    gaussian_quasidistribution(gs, 1.0, axis, axis);
  } catch (const Error& e) {
    nonpositive = e.kind() == ErrorKind::NonpositiveKs;
  }
  CHECK(nonpositive);
}

TEST_CASE("uniform axis") {
  const auto a = uniform_axis(-1.0, 1.0, 5);
  CHECK(a.size() == 5);
  CHECK(a.front() == -1.0);
  CHECK(a.back() == 1.0);
  CHECK(a[2] == 0.0);
  CHECK_THROWS_AS(uniform_axis(2.0, 2.0, 1), Error);
}
