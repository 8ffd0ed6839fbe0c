#include "kerrosc/quasidist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

namespace kerrosc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_s(double s) {
  if (!(s >= -1.0 && s <= 1.0 - 1e-9)) {
    throw Error(ErrorKind::SParamOutOfRange,
                "s = " + std::to_string(s) + " outside [-1, 1 - 1e-9]; s = 1 is not evaluated");
  }
}

// Matrix elements f(n, k) = <n|T|n+k> for n = 0..count-1 at fixed k >= 0.
//
// For s > -1 the product ((s+1)/(s-1))^n L_n^k(4|beta|^2/(1-s^2)) is carried as a single
// recurrence in y = (s+1)/(s-1) and x*y = -4|beta|^2/(1-s)^2, which stays finite as s -> -1
// where y -> 0 and x -> infinity.
class ElementColumn {
 public:
  ElementColumn(Complex beta, double s) : beta_(beta), s_(s), b2_(std::norm(beta)) {
    husimi_ = (s == -1.0);
    if (!husimi_) {
      y_ = (s + 1.0) / (s - 1.0);
      xy_ = -4.0 * b2_ / ((1.0 - s) * (1.0 - s));
    }
  }

  void fill(int k, int count, std::vector<Complex>& out) const {
    out.assign(count, 0.0);
    if (count <= 0) return;
    if (b2_ == 0.0 && k > 0) return;  // beta*^k vanishes

    // Leading factor at n = 0, in log space.
    double log_mag;
    if (husimi_) {
      log_mag = -b2_ - 0.5 * std::lgamma(k + 1.0);
    } else {
      log_mag = (k + 1.0) * std::log(2.0 / (1.0 - s_)) - 2.0 * b2_ / (1.0 - s_) -
                0.5 * std::lgamma(k + 1.0);
    }
    if (k > 0) log_mag += k * 0.5 * std::log(b2_);
    const double phase = k > 0 ? -k * std::arg(beta_) : 0.0;
    const Complex lead = std::polar(std::exp(log_mag), phase);

    if (husimi_) {
      // e^{-|b|^2} b^n b*^(n+k) / sqrt(n! (n+k)!)
      Complex v = lead;
      for (int n = 0; n < count; ++n) {
        out[n] = v;
        v *= b2_ / std::sqrt((n + 1.0) * (n + 1.0 + k));
      }
      return;
    }

    double ratio = 1.0;  // sqrt(k! n! / (n+k)!)
    double q_prev = 0.0;
    double q = 1.0;
    for (int n = 0; n < count; ++n) {
      out[n] = lead * (ratio * q);
      const double q_next =
          (((2.0 * n + 1.0 + k) * y_ - xy_) * q - (n + k) * y_ * y_ * q_prev) / (n + 1.0);
      q_prev = q;
      q = q_next;
      ratio *= std::sqrt((n + 1.0) / (n + 1.0 + k));
    }
  }

 private:
  Complex beta_;
  double s_;
  double b2_;
  bool husimi_ = false;
  double y_ = 0.0;
  double xy_ = 0.0;
};

Complex quasi_point(const CMatrix& rho, Complex beta, double s, std::vector<Complex>& scratch) {
  const int dim = static_cast<int>(rho.rows());
  const ElementColumn column(beta, s);
  Complex total = 0.0;
  for (int k = 0; k < dim; ++k) {
    const int count = dim - k;
    column.fill(k, count, scratch);
    for (int n = 0; n < count; ++n) {
      const Complex f = scratch[n];
      total += rho(n + k, n) * f;
      if (k > 0) total += rho(n, n + k) * std::conj(f);
    }
  }
  return total / kPi;
}

template <typename PointFn>
void fill_grid(QuasiGrid& grid, PointFn point) {
  const int rows = static_cast<int>(grid.im_axis.size());
  const int cols = static_cast<int>(grid.re_axis.size());
  grid.values.assign(rows, std::vector<double>(cols, 0.0));
  const int threads = std::max(1, std::min(grid_thread_count(), rows));
  std::vector<double> residues(threads, 0.0);

  auto work = [&](int worker) {
    std::vector<Complex> scratch;
    for (int i = worker; i < rows; i += threads) {
      for (int j = 0; j < cols; ++j) {
        const Complex w = point(Complex(grid.re_axis[j], grid.im_axis[i]), scratch);
        grid.values[i][j] = w.real();
        residues[worker] = std::max(residues[worker], std::abs(w.imag()));
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  grid.max_imag_residue = *std::max_element(residues.begin(), residues.end());
}

}  // namespace

double associated_laguerre(int n, int k, double x) {
  if (n < 0 || n + k < 0) {
    throw Error(ErrorKind::InvalidOrder, "L_n^k needs n >= 0 and n + k >= 0 (n=" +
                                             std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + k - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex cg_matrix_element(int n, int m, Complex beta, double s) {
  require_s(s);
  if (n < 0 || m < 0) throw Error(ErrorKind::IndexOutOfRange, "Fock indices must be >= 0");
  if (m < n) return std::conj(cg_matrix_element(m, n, beta, s));
  std::vector<Complex> column;
  ElementColumn(beta, s).fill(m - n, n + 1, column);
  return column[n];
}

double QuasiGrid::max_value() const {
  double v = -INFINITY;
  for (const auto& row : values) v = std::max(v, *std::max_element(row.begin(), row.end()));
  return v;
}

double QuasiGrid::min_value() const {
  double v = INFINITY;
  for (const auto& row : values) v = std::min(v, *std::min_element(row.begin(), row.end()));
  return v;
}

double QuasiGrid::integral() const {
  if (re_axis.size() < 2 || im_axis.size() < 2) return 0.0;
  const double dre = (re_axis.back() - re_axis.front()) / (re_axis.size() - 1);
  const double dim = (im_axis.back() - im_axis.front()) / (im_axis.size() - 1);
  double total = 0.0;
  for (const auto& row : values) {
    for (double v : row) total += v;
  }
  return total * dre * dim;
}

std::vector<double> uniform_axis(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) {
    throw Error(ErrorKind::InvalidArgument, "axis needs count >= 2 and hi > lo");
  }
  std::vector<double> axis(count);
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) axis[i] = lo + i * step;
  axis.back() = hi;
  return axis;
}

QuasiGrid quasidistribution(const DensityMatrix& rho, double s, const std::vector<double>& re_axis,
                            const std::vector<double>& im_axis) {
  require_s(s);
  QuasiGrid grid;
  grid.s = s;
  grid.re_axis = re_axis;
  grid.im_axis = im_axis;
  const CMatrix& m = rho.matrix();
  fill_grid(grid, [&](Complex beta, std::vector<Complex>& scratch) {
    return quasi_point(m, beta, s, scratch);
  });
  return grid;
}

double gaussian_K(const GaussianState& gs, double s) {
  const double a = 0.5 - 0.5 * s + gs.B;
  return a * a - std::norm(gs.C);
}

QuasiGrid gaussian_quasidistribution(const GaussianState& gs, double s,
                                     const std::vector<double>& re_axis,
                                     const std::vector<double>& im_axis) {
  if (!(s >= -1.0 && s <= 1.0)) {
    throw Error(ErrorKind::SParamOutOfRange, "s = " + std::to_string(s) + " outside [-1, 1]");
  }
  const double K = gaussian_K(gs, s);
  if (!(K > 0.0)) {
    throw Error(ErrorKind::NonpositiveKs,
                "K_s = " + std::to_string(K) + " <= 0 at s = " + std::to_string(s) +
                    "; the state has no regular quasidistribution here");
  }
  QuasiGrid grid;
  grid.s = s;
  grid.re_axis = re_axis;
  grid.im_axis = im_axis;
  const double norm = 1.0 / (kPi * std::sqrt(K));
  const double radial = (1.0 - s + 2.0 * gs.B) / (2.0 * K);
  const Complex cross = std::conj(gs.C) / (2.0 * K);
  fill_grid(grid, [&](Complex beta, std::vector<Complex>&) {
    const Complex d = beta - gs.alpha;
    return Complex(norm * std::exp(-radial * std::norm(d) + 2.0 * (cross * d * d).real()), 0.0);
  });
  return grid;
}

int grid_thread_count() {
  if (const char* env = std::getenv("KERROSC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace kerrosc
