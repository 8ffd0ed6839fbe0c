// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "kerrosc/analytics.hpp"
#include "kerrosc/dynamics.hpp"
#include "kerrosc/gaussian.hpp"
#include "kerrosc/measures.hpp"
#include "kerrosc/output.hpp"
#include "kerrosc/quasidist.hpp"
#include "kerrosc/scenario.hpp"
#include "kerrosc/special.hpp"
#include "kerrosc/steady.hpp"

using namespace kerrosc;

namespace {

constexpr double kPi = std::numbers::pi;
const OscillatorParams kReference{5.0, 0.2, 1.0};
const std::filesystem::path kScenarios = std::filesystem::path(KERROSC_SOURCE_DIR) / "scenarios";

// Accumulates named checks for one criterion and remembers the first failure.
class Check {
 public:
  void near(const std::string& what, double got, double want, double tol) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s=%.6g (want %.6g +- %.1e)", what.c_str(), got, want, tol);
    record(std::abs(got - want) <= tol, buf);
  }
  void below(const std::string& what, double got, double limit) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s=%.3e (limit %.1e)", what.c_str(), got, limit);
    record(got < limit, buf);
  }
  void that(const std::string& what, bool ok) { record(ok, what); }

  bool ok() const { return ok_; }
  const std::string& detail() const { return ok_ ? last_ : first_failure_; }

 private:
  void record(bool ok, const std::string& msg) {
    if (!ok && ok_) first_failure_ = msg;
    ok_ = ok_ && ok;
    last_ = msg;
  }
  bool ok_ = true;
  std::string last_;
  std::string first_failure_;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<double> column(const std::string& name) const {
    std::size_t idx = 0;
    while (idx < columns.size() && columns[idx] != name) ++idx;
    if (idx == columns.size()) throw std::runtime_error("no column " + name);
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r[idx]);
    return out;
  }
};

Table read_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  Table t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
    t.rows.push_back(row);
  }
  return t;
}

std::filesystem::path run_bundled(const std::string& name) {
  const auto r = validate_config(read_text_file(kScenarios / (name + ".yaml")));
  if (!r.config) throw std::runtime_error("scenario " + name + " does not validate");
  const auto dir = std::filesystem::temp_directory_path() / ("kerrosc_acceptance_" + name);
  std::filesystem::remove_all(dir);
  run_scenario(*r.config, dir);
  return dir;
}

std::size_t argmax(const std::vector<double>& v) { return std::max_element(v.begin(), v.end()) - v.begin(); }
std::size_t argmin(const std::vector<double>& v) { return std::min_element(v.begin(), v.end()) - v.begin(); }

GaussianState reference_gaussian() {
  GaussianState gs = steady_noise_moments(linearized_coeffs(Complex(1.0, -2.0), kReference));
  gs.alpha = Complex(1.0, -2.0);
  return gs;
}

std::vector<CoherentComponent> kitten(double r) {
  std::vector<CoherentComponent> out;
  for (int k = -1; k <= 1; ++k) out.push_back({1.0, std::polar(r, 2.0 * kPi * k / 3.0)});
  return out;
}

// --- independent oracles --------------------------------------------------------------

// Brute-force minimum of Var(a e^{-i th} + h.c.) built from dense operator products.
double squeezing_scan(const DensityMatrix& rho) {
  const CMatrix a = annihilation_matrix(FockCutoff(rho.dim() - 1));
  const CMatrix ad = a.adjoint();
  const Complex ma = (rho.matrix() * a).trace();
  const Complex ma2 = (rho.matrix() * a * a).trace();
  const Complex mad2 = (rho.matrix() * ad * ad).trace();
  // <a a^dag> through [a, a^dag] = 1; the truncated product is wrong on the edge.
  const double mn = (rho.matrix() * ad * a).trace().real();
  const double aad = mn + 1.0;
  auto var = [&](double th) {
    const Complex e = std::polar(1.0, -th);
    const double x2 = (ma2 * e * e + mad2 * std::conj(e * e)).real() + mn + aad;
    const double x1 = 2.0 * (ma * e).real();
    return x2 - x1 * x1;
  };
  const int points = 10000;
  const double h = kPi / points;
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    if (var(i * h) < var(best)) best = i * h;
  }
  double lo = best - h, hi = best + h;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 80; ++it) {
    const double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
    if (var(c) < var(d)) hi = d; else lo = c;
  }
  return var(0.5 * (lo + hi));
}

Complex matrix_moment(const DensityMatrix& rho, int m, int n) {
  const CMatrix a = annihilation_matrix(FockCutoff(rho.dim() - 1));
  CMatrix op = CMatrix::Identity(rho.dim(), rho.dim());
  for (int k = 0; k < m; ++k) op = op * a.adjoint();
  for (int k = 0; k < n; ++k) op = op * a;
  return (rho.matrix() * op).trace();
}

long double direct_0f2(long double a, long double b, long double z, int terms) {
  long double sum = 0.0L;
  for (int k = 0; k < terms; ++k) {
    long double t = 1.0L;
    for (int j = 0; j < k; ++j) t *= z / ((j + 1) * (a + j) * (b + j));
    sum += t;
  }
  return sum;
}

// --- criteria -------------------------------------------------------------------------

Check criterion1() {
  Check c;
  const auto rho = steady_density(kReference, FockCutoff(40));
  c.near("E", von_neumann_entropy(rho), 0.278, 0.005);
  c.near("L", linear_entropy_and_purity(rho).linear_entropy, 0.135, 0.005);
  c.near("n", moments(rho).mean_n, 5.13, 0.05);
  c.near("F", fano(rho).value, 0.69, 0.01);
  c.near("S", squeezing(rho), 0.72, 0.01);
  return c;
}

Check criterion2() {
  Check c;
  const auto sd = spectral_decomposition(steady_density(kReference, FockCutoff(40)));
  c.near("p0", sd.weights[0], 0.928, 0.005);
  c.near("p1", sd.weights[1], 0.068, 0.005);
  c.near("p2", sd.weights[2], 0.004, 0.005);
  c.near("S0", squeezing(density_from_pure(sd.eigenstates[0])), 0.60, 0.02);
  return c;
}

Check criterion3() {
  Check c;
  const auto co = linearized_coeffs(classical_steady_amplitude(kReference), kReference);
  c.below("|gamma-(1+4i)|", std::abs(co.gamma_eff - Complex(1.0, 4.0)), 1e-12);
  c.below("|delta-(1.6-1.2i)|", std::abs(co.delta_eff - Complex(1.6, -1.2)), 1e-12);
  const auto gs = reference_gaussian();
  const auto sf = gaussian_S_F(gs);
  const double x = gaussian_x(gs);
  const auto ep = gaussian_entropy_purity(x);
  const auto w = gaussian_weights(x, 2);
  c.near("S", sf.S, 0.673, 0.001);
  c.near("F", sf.F, 0.711, 0.001);
  c.near("x", x, 0.072, 0.001);
  c.near("L", 1.0 - ep.purity, 0.126, 0.001);
  c.near("E", ep.entropy, 0.263, 0.001);
  c.near("p0", w[0], 0.933, 0.001);
  c.near("p1", w[1], 0.062, 0.001);
  c.near("p2", w[2], 0.004, 0.001);
  return c;
}

Check criterion4() {
  Check c;
  const auto sp = strong_pump_estimate();
  c.near("S", sp.S, 2.0 / 3.0, 1e-12);
  c.near("F", sp.F, 2.0 / 3.0, 1e-12);
  c.near("x", sp.x, std::sqrt(3.0) / 3.0 - 0.5, 1e-12);
  c.near("L", sp.linear_entropy, 1.0 - std::sqrt(3.0) / 2.0, 1e-12);
  c.near("E", sp.entropy, 0.278, 0.001);
  c.near("p0", sp.weights[0], 0.928, 0.001);
  c.near("p1", sp.weights[1], 0.067, 0.001);
  c.near("p2", sp.weights[2], 0.005, 0.001);
  return c;
}

Check criterion5() {
  Check c;
  const Complex a = classical_steady_amplitude(kReference);
  c.below("|alpha-(1-2i)|", std::abs(a - Complex(1.0, -2.0)), 1e-10);
  return c;
}

Check criterion6(const std::filesystem::path& fig3) {
  Check c;
  const auto t = read_csv(fig3 / "timeseries_coherent.csv");
  const auto time = t.column("t");
  const auto E = t.column("E"), L = t.column("L"), S = t.column("S"), F = t.column("F");
  const auto ie = argmax(E);
  c.near("E_peak", E[ie], 0.57, 0.02);
  c.near("t(E_peak)", time[ie], 0.87, 0.05);
  c.near("L_peak", L[argmax(L)], 0.31, 0.02);
  const auto is = argmin(S);
  c.near("S_min", S[is], 0.52, 0.02);
  c.near("t(S_min)", time[is], 0.18, 0.03);
  double worst = 0.0;
  for (double f : F) worst = std::max(worst, std::abs(f - 1.0));
  c.below("max|F-1|", worst, 1e-6);
  return c;
}

Check criterion7(const std::filesystem::path& fig3) {
  Check c;
  const auto peak = fock_max_linear_entropy(9, 1.0);
  c.near("L_max", peak.exact, 0.8145, 0.0005);
  c.near("L_stirling", peak.stirling, 0.812, 0.001);

  const auto t = read_csv(fig3 / "timeseries_fock.csv");
  const auto time = t.column("t");
  const auto L = t.column("L"), E = t.column("E");
  const auto il = argmax(L);
  c.near("L_peak", L[il], 0.815, 0.01);
  c.near("t(L_peak)", time[il], 0.347, 0.01);
  std::size_t is = 0;
  for (std::size_t i = 0; i < time.size(); ++i) {
    if (std::abs(time[i] - peak.t_star) < std::abs(time[is] - peak.t_star)) is = i;
  }
  c.near("E(t*)", E[is], 1.823, 0.02);

  const FockCutoff cut(20);
  double worst = 0.0;
  for (double G : {0.0, 0.2}) {
    const auto tr = evolve(density_from_pure(fock_state(9, cut)), {0.0, G, 1.0}, TimeGrid::uniform(2.0, 21));
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
      const auto want = fock_damping_distribution(9, 1.0, tr.grid.times()[i]);
      const auto got = photon_distribution(tr.states[i]);
      for (int k = 0; k <= 9; ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
    }
  }
  c.below("max|diag-binomial|", worst, 1e-8);
  return c;
}

Check criterion8(const std::filesystem::path& fig10) {
  // Sampled every 0.1. Once both distances reach the double-precision floor the values
  // fluctuate by ~1e-14, so "decrease" allows 1e-12 of round-off.
  Check c;
  for (const std::string label : {"coherent", "fock", "kitten"}) {
    const auto t = read_csv(fig10 / ("distance_" + label + ".csv"));
    const auto time = t.column("t");
    for (const std::string col : {"D_B", "D_KL"}) {
      const auto d = t.column(col);
      bool mono = true;
      for (std::size_t i = 1; i < time.size(); ++i) {
        if (time[i - 1] >= 5.0 && d[i] > d[i - 1] + 1e-12) mono = false;
      }
      c.that(label + " " + col + " decreasing for t > 5", mono);
      c.below(label + " " + col + "(20)", d.back(), 1e-3);
    }
  }
  return c;
}

Check criterion9() {
  Check c;
  const auto ch = chaotic_reference(1.0, 60);
  c.near("E_chaot", ch.entropy, std::log(4.0), 1e-12);
  c.near("L_chaot", ch.linear_entropy, 2.0 / 3.0, 1e-12);
  c.near("L_max", max_linear_entropy_bound(1.0).l_max, 0.7, 1e-12);
  return c;
}

Check criterion10() {
  Check c;
  const FockCutoff cut(45);
  const double G = 0.2, T = kPi / G;
  const Complex alpha = 3.0, i(0.0, 1.0);
  const auto psi0 = coherent_state(alpha, cut);
  c.near("|<psi(T)|psi0>|", std::abs(kerr_lossless_evolve(psi0, G, T).inner(psi0)), 1.0, 1e-12);
  // Phase assignment that follows from c_k e^{-i k(k-1) G t}.
  const auto cat = coherent_superposition(
      {{std::exp(-i * kPi / 4.0), i * alpha}, {std::exp(i * kPi / 4.0), -i * alpha}}, cut);
  const double ov = std::abs(cat.inner(kerr_lossless_evolve(psi0, G, T / 2.0)));
  c.that("cat overlap >= 1 - 1e-10", ov >= 1.0 - 1e-10);
  return c;
}

Check criterion11() {
  Check c;
  std::mt19937 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FockCutoff cut(30);
  double worst_trace = 0.0, worst_herm = 0.0, worst_eig = 0.0;
  for (int run = 0; run < 100; ++run) {
    const OscillatorParams p{std::polar(3.0 * u(rng), 2.0 * kPi * u(rng)), 1.0 * u(rng), 0.05 + 1.5 * u(rng)};
    const Complex a0 = std::polar(2.0 * u(rng), 2.0 * kPi * u(rng));
    DensityMatrix rho0 = density_from_pure(coherent_state(a0, cut));
    if (run % 3 == 1) rho0 = density_from_pure(fock_state(static_cast<int>(6 * u(rng)), cut));
    if (run % 3 == 2) {
      rho0 = density_from_pure(coherent_superposition({{1.0, a0}, {Complex(u(rng), u(rng)), -a0}}, cut));
    }
    const auto tr = evolve(rho0, p, TimeGrid::uniform(0.5 * u(rng) + 0.1, 6));
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
      const auto& m = tr.states[k].matrix();
      worst_trace = std::max({worst_trace, std::abs(m.trace() - 1.0), tr.diagnostics[k].trace_error});
      worst_herm = std::max(worst_herm, (m - m.adjoint()).cwiseAbs().maxCoeff());
      worst_eig = std::min(worst_eig, min_eigenvalue(tr.states[k]));
    }
  }
  c.below("max trace error", worst_trace, 1e-8);
  c.below("max |rho - rho^dag|", worst_herm, 1e-12);
  c.that("min eigenvalue " + format_shortest(worst_eig) + " >= -1e-9", worst_eig >= -1e-9);
  return c;
}

Check criterion12() {
  Check c;
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  double worst_s = 0.0;
  std::vector<DensityMatrix> states{steady_density(kReference, FockCutoff(40)),
                                    density_from_pure(coherent_state(Complex(1.0, 2.0), FockCutoff(40))),
                                    density_from_pure(fock_state(9, FockCutoff(40)))};
  for (int trial = 0; trial < 4; ++trial) {
    CMatrix g(10, 10);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) g(i, j) = Complex(nd(rng), nd(rng)) * std::exp(-0.5 * i);
    CMatrix r = g * g.adjoint();
    r /= r.trace().real();
    states.emplace_back(CMatrix(0.5 * (r + r.adjoint())));
  }
  for (const auto& s : states) worst_s = std::max(worst_s, std::abs(squeezing(s) - squeezing_scan(s)));
  c.below("squeezing vs scan", worst_s, 1e-8);

  const auto ss = steady_density(kReference, FockCutoff(50));
  double worst_m = 0.0;
  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; m + n <= 4; ++n) {
      const Complex want = matrix_moment(ss, m, n);
      worst_m = std::max(worst_m, std::abs(steady_moment(m, n, kReference) - want) / std::abs(want));
    }
  }
  c.below("moments rel", worst_m, 1e-6);

  double worst_h = 0.0;
  for (auto [a, b, z] : {std::tuple{1.0, 1.0, 2.0}, std::tuple{0.5, 2.5, 3.0}, std::tuple{3.2, 1.1, 40.0},
                         std::tuple{1.5, 4.0, 700.0}, std::tuple{7.0, 0.3, 12.5}}) {
    const double want = static_cast<double>(direct_0f2(a, b, z, 400));
    worst_h = std::max(worst_h, std::abs(hyper_0f2(a, b, z).real() / want - 1.0));
  }
  c.below("0F2 rel", worst_h, 1e-12);

  const FockCutoff big(200);
  double worst_e = 0.0;
  for (double x : {0.01, 0.0717719, 0.3, 1.0}) {
    const auto rho = diagonal_state(gaussian_weights(x, big.n_cut()), big);
    const auto ep = gaussian_entropy_purity(x);
    worst_e = std::max({worst_e, std::abs(von_neumann_entropy(rho) - ep.entropy),
                        std::abs(linear_entropy_and_purity(rho).purity - ep.purity)});
  }
  c.below("gaussian E/P vs measures", worst_e, 1e-9);
  return c;
}

Check criterion13() {
  Check c;
  const auto rho = steady_density(kReference, FockCutoff(40));
  c.below("|L rho_ss|_max", liouvillian_apply(rho, kReference).cwiseAbs().maxCoeff(), 1e-6);
  const auto path = linearized_noise_path(Complex(1.0, -2.0), 0.0, 0.0, kReference, TimeGrid({0.0, 30.0}));
  const auto fixed = reference_gaussian();
  c.below("|B(30)-B*|", std::abs(path.noise_B.back() - fixed.B), 1e-6);
  c.below("|C(30)-C*|", std::abs(path.noise_C.back() - fixed.C), 1e-6);
  return c;
}

Check criterion14() {
  Check c;
  const Complex alpha(1.5, -1.0);
  const auto rho = density_from_pure(coherent_state(alpha, FockCutoff(40)));
  const auto axis = uniform_axis(-5.0, 5.0, 41);
  double worst = 0.0;
  for (double s : {-1.0, -0.5, 0.0}) {
    const auto exact = quasidistribution(rho, s, axis, axis);
    const auto gauss = gaussian_quasidistribution({alpha, 0.0, 0.0}, s, axis, axis);
    for (std::size_t i = 0; i < axis.size(); ++i)
      for (std::size_t j = 0; j < axis.size(); ++j) worst = std::max(worst, std::abs(exact.values[i][j] - gauss.values[i][j]));
  }
  c.below("coherent vs gaussian form", worst, 1e-8);

  double qmin = INFINITY;
  const FockCutoff cut(40);
  for (const auto& r : {steady_density(kReference, cut), density_from_pure(fock_state(9, cut)),
                        density_from_pure(coherent_superposition(kitten(3.0), cut))}) {
    qmin = std::min(qmin, quasidistribution(r, -1.0, axis, axis).min_value());
  }
  c.that("husimi min " + format_shortest(qmin) + " >= -1e-12", qmin >= -1e-12);

  const auto vac = quasidistribution(density_from_pure(fock_state(0, cut)), 0.0, {0.0}, {0.0});
  c.near("W_vac(0)", vac.values[0][0], 2.0 / kPi, 1e-12);
  return c;
}

}  // namespace

int main() {
  std::filesystem::path fig3, fig10;
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"steady-state exact values", criterion1},
      {"steady-state eigenweights", criterion2},
      {"gaussian approximation point values", criterion3},
      {"strong-pump estimates", criterion4},
      {"classical steady state", criterion5},
      {"unpumped coherent-state evolution", [&] {
         if (fig3.empty()) fig3 = run_bundled("fig3");
         return criterion6(fig3);
       }},
      {"fock-state damping", [&] {
         if (fig3.empty()) fig3 = run_bundled("fig3");
         return criterion7(fig3);
       }},
      {"convergence to steady state", [&] {
         fig10 = run_bundled("fig10");
         return criterion8(fig10);
       }},
      {"thermal references", criterion9},
      {"kerr periodicity and cat formation", criterion10},
      {"lindblad invariants", criterion11},
      {"oracle equivalences", criterion12},
      {"fixed-point closure", criterion13},
      {"quasidistribution sanity", criterion14},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.that(std::string("exception: ") + e.what(), false);
    }
    if (!result.ok()) ++failed;
    std::printf("%s %2zu %s: %s\n", result.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                result.detail().c_str());
    std::fflush(stdout);
  }
  for (const auto& dir : {fig3, fig10}) {
    if (!dir.empty()) std::filesystem::remove_all(dir);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
