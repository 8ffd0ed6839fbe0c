#include <algorithm>
#include <cmath>
#include <map>

#include "kerrosc/gaussian.hpp"
#include "kerrosc/measures.hpp"
#include "kerrosc/output.hpp"
#include "kerrosc/quasidist.hpp"
#include "kerrosc/scenario.hpp"
#include "kerrosc/steady.hpp"

namespace kerrosc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

StateVector build_state(const InitialStateSpec& spec, const FockCutoff& cutoff) {
  switch (spec.kind) {
    case InitialStateSpec::Kind::Coherent: return coherent_state(spec.alpha, cutoff);
    case InitialStateSpec::Kind::Fock: return fock_state(spec.n, cutoff);
    case InitialStateSpec::Kind::Superposition: return coherent_superposition(spec.components, cutoff);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown initial state kind");
}

std::string params_line(const OscillatorParams& p) {
  return "G=" + format_double(p.kerr) + " gamma0=" + format_double(p.loss) + " p=" +
         format_double(p.pump.real()) + (p.pump.imag() < 0 ? "" : "+") + format_double(p.pump.imag()) + "i";
}

std::string run_header(const ScenarioConfig& cfg, const FockCutoff& cutoff, const std::string& what) {
  std::string text = "kerrosc " KERROSC_VERSION "\n";
  text += "scenario: " + cfg.name + "\n";
  text += "content: " + what + "\n";
  text += "params: " + params_line(cfg.params) + "\n";
  text += "cutoff: n_cut=" + std::to_string(cutoff.n_cut()) + "\n";
  text += "tolerances: rtol=" + format_double(cfg.tolerances.rtol) +
          " atol=" + format_double(cfg.tolerances.atol) +
          " tail_margin=" + std::to_string(cfg.tolerances.tail_margin) +
          " tail_limit=" + format_double(cfg.tolerances.tail_limit) + "\n";
  text += "config:\n" + canonical_form(cfg);
  return comment_block(text);
}

std::string grid_prefix(double s) {
  if (s == -1.0) return "husimi";
  if (s == 0.0) return "wigner";
  return "quasi_s" + format_shortest(s);
}

// Merged, sorted time grid of the uniform samples and the snapshots.
struct TimePlan {
  std::vector<double> times;
  std::vector<int> sample_index;
  std::vector<int> snapshot_index;
};

TimePlan plan_times(const TimeSpec& spec) {
  std::vector<double> samples(spec.sample_count);
  for (int i = 0; i < spec.sample_count; ++i) {
    samples[i] = spec.t_max * i / (spec.sample_count - 1);
  }
  TimePlan plan;
  plan.times = samples;
  plan.times.insert(plan.times.end(), spec.snapshot_times.begin(), spec.snapshot_times.end());
  std::sort(plan.times.begin(), plan.times.end());
  plan.times.erase(std::unique(plan.times.begin(), plan.times.end()), plan.times.end());
  auto index_of = [&](double t) {
    return static_cast<int>(std::lower_bound(plan.times.begin(), plan.times.end(), t) - plan.times.begin());
  };
  for (double t : samples) plan.sample_index.push_back(index_of(t));
  for (double t : spec.snapshot_times) plan.snapshot_index.push_back(index_of(t));
  return plan;
}

Trajectory propagate(const StateVector& psi0, const ScenarioConfig& cfg, const TimeGrid& grid) {
  const auto& p = cfg.params;
  if (p.loss == 0.0 && p.pump == 0.0) {
    Trajectory tr{grid, {}, {}};
    for (double t : grid.times()) {
      tr.states.push_back(density_from_pure(kerr_lossless_evolve(psi0, p.kerr, t)));
      tr.diagnostics.push_back({0.0, 0.0, 0, 0});
    }
    return tr;
  }
  return evolve(density_from_pure(psi0), p, grid, cfg.tolerances);
}

bool has_output(const ScenarioConfig& cfg, OutputSpec::Kind kind) {
  return std::any_of(cfg.outputs.begin(), cfg.outputs.end(),
                     [&](const OutputSpec& o) { return o.kind == kind; });
}

}  // namespace

std::string steady_report_csv(const OscillatorParams& params, const FockCutoff& cutoff,
                              const std::string& header) {
  const DensityMatrix rho = steady_density(params, cutoff);
  const auto spectrum = spectral_decomposition(rho);
  const auto mom = moments(rho);
  const auto mix = linear_entropy_and_purity(rho);

  const Complex alpha = classical_steady_amplitude(params);
  const auto coeffs = linearized_coeffs(alpha, params);
  GaussianState gs = steady_noise_moments(coeffs);
  gs.alpha = alpha;
  const double x = gaussian_x(gs);
  const auto ep = gaussian_entropy_purity(x);
  const auto sf = gaussian_S_F(gs);
  const auto gw = gaussian_weights(x, 9);
  const auto crude = strong_pump_estimate();

  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  auto add = [&](const std::string& name, double exact, double gauss, double strong) {
    names.push_back(name);
    rows.push_back({exact, gauss, strong});
  };
  add("E", von_neumann_entropy(spectrum.weights), ep.entropy, crude.entropy);
  add("L", mix.linear_entropy, 1.0 - ep.purity, crude.linear_entropy);
  add("n", mom.mean_n, std::norm(alpha) + gs.B, kNaN);
  add("F", fano(rho).value, sf.F, crude.F);
  add("S", squeezing_from_moments(mom.B, mom.C), sf.S, crude.S);
  add("S0", squeezing(density_from_pure(spectrum.eigenstates[0])), kNaN, kNaN);
  add("x", kNaN, x, crude.x);
  add("re_alpha", mom.mean_a.real(), alpha.real(), kNaN);
  add("im_alpha", mom.mean_a.imag(), alpha.imag(), kNaN);
  for (int k = 0; k < 10; ++k) {
    const double exact = k < static_cast<int>(spectrum.weights.size()) ? spectrum.weights[k] : 0.0;
    add("p" + std::to_string(k), exact, gw[k], k < 3 ? crude.weights[k] : kNaN);
  }

  std::string out = header + "quantity,exact,gaussian,strong_pump\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += names[i];
    for (double v : rows[i]) out += "," + format_double(v);
    out += '\n';
  }
  return out;
}

RunSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

  const FockCutoff cutoff = scenario_cutoff(cfg);
  RunSummary summary{cfg.name, cutoff.n_cut(), {}, {}};
  auto emit = [&](const std::string& file, const std::string& content) {
    const auto path = out_dir / file;
    write_text_file(path, content);
    summary.files.push_back(path);
  };

  const bool needs_dynamics =
      has_output(cfg, OutputSpec::Kind::Timeseries) || has_output(cfg, OutputSpec::Kind::DistanceToSteady) ||
      has_output(cfg, OutputSpec::Kind::AmplitudePath) ||
      std::any_of(cfg.outputs.begin(), cfg.outputs.end(), [](const OutputSpec& o) {
        return o.kind == OutputSpec::Kind::QuasiGrid && o.grid.source == GridSpec::Source::Snapshots;
      });

  std::optional<DensityMatrix> steady;
  auto steady_state = [&]() -> const DensityMatrix& {
    if (!steady) steady = steady_density(cfg.params, cutoff);
    return *steady;
  };

  if (needs_dynamics) {
    const TimePlan plan = plan_times(cfg.time);
    const TimeGrid grid(plan.times);
    for (const auto& spec : cfg.initial_states) {
      const Trajectory tr = propagate(build_state(spec, cutoff), cfg, grid);

      StateSummary st{spec.label, plan.times.back(), 0, 0, 0, 0, 0, 0, 0};
      for (const auto& d : tr.diagnostics) {
        st.max_trace_error = std::max(st.max_trace_error, d.trace_error);
        st.max_tail_mass = std::max(st.max_tail_mass, d.tail_mass);
      }
      const DensityMatrix& last = tr.states.back();
      st.entropy = von_neumann_entropy(last);
      st.linear_entropy = linear_entropy_and_purity(last).linear_entropy;
      st.fano = fano(last).value;
      st.squeezing = squeezing(last);
      st.mean_n = moments(last).mean_n;
      summary.states.push_back(st);

      for (const auto& out : cfg.outputs) {
        switch (out.kind) {
          case OutputSpec::Kind::Timeseries: {
            std::vector<std::vector<double>> rows;
            for (int idx : plan.sample_index) {
              const auto& r = tr.states[idx];
              const auto& d = tr.diagnostics[idx];
              rows.push_back({plan.times[idx], von_neumann_entropy(r), linear_entropy_and_purity(r).linear_entropy,
                              fano(r).value, squeezing(r), moments(r).mean_n, d.trace_error, d.tail_mass});
            }
            emit("timeseries_" + spec.label + ".csv",
                 run_header(cfg, cutoff, "timeseries for " + spec.label) +
                     csv_table({"t", "E", "L", "F", "S", "n", "trace_error", "tail_mass"}, rows));
            break;
          }
          case OutputSpec::Kind::DistanceToSteady: {
            const DensityMatrix& ss = steady_state();
            std::vector<std::vector<double>> rows;
            for (int idx : plan.sample_index) {
              const auto& r = tr.states[idx];
              double kl = kNaN;
              try {
                kl = relative_entropy(r, ss);
              } catch (const Error& e) {
                if (e.kind() != ErrorKind::SupportMismatch) throw;
              }
              rows.push_back({plan.times[idx], bures_distance(r, ss), kl});
            }
            emit("distance_" + spec.label + ".csv",
                 run_header(cfg, cutoff, "distance to the steady state for " + spec.label +
                                             "; D_KL is nan where the support check fails") +
                     csv_table({"t", "D_B", "D_KL"}, rows));
            break;
          }
          case OutputSpec::Kind::AmplitudePath: {
            std::vector<double> ts;
            for (int idx : plan.sample_index) ts.push_back(plan.times[idx]);
            const Complex a0 = moments(tr.states.front()).mean_a;
            const auto cl = classical_path(a0, cfg.params, TimeGrid(ts));
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < ts.size(); ++i) {
              const Complex a = moments(tr.states[plan.sample_index[i]]).mean_a;
              rows.push_back({ts[i], a.real(), a.imag(), cl.alpha[i].real(), cl.alpha[i].imag()});
            }
            emit("amplitude_" + spec.label + ".csv",
                 run_header(cfg, cutoff, "quantum <a> and classical alpha for " + spec.label) +
                     csv_table({"t", "re_a", "im_a", "re_alpha", "im_alpha"}, rows));
            break;
          }
          case OutputSpec::Kind::QuasiGrid: {
            if (out.grid.source != GridSpec::Source::Snapshots) break;
            const auto re = uniform_axis(out.grid.re.min, out.grid.re.max, out.grid.re.count);
            const auto im = uniform_axis(out.grid.im.min, out.grid.im.max, out.grid.im.count);
            for (std::size_t k = 0; k < plan.snapshot_index.size(); ++k) {
              const int idx = plan.snapshot_index[k];
              const auto g = quasidistribution(tr.states[idx], out.grid.s, re, im);
              emit(grid_prefix(out.grid.s) + "_" + spec.label + "_" + std::to_string(k) + ".grid",
                   grid_text(g, run_header(cfg, cutoff,
                                           "quasidistribution of " + spec.label + " at t=" +
                                               format_double(plan.times[idx]) +
                                               " max_imag_residue=" + format_double(g.max_imag_residue))));
            }
            break;
          }
          default:
            break;
        }
      }
    }
  }

  for (const auto& out : cfg.outputs) {
    switch (out.kind) {
      case OutputSpec::Kind::SteadyReport:
        emit("steady_report.csv",
             steady_report_csv(cfg.params, cutoff, run_header(cfg, cutoff, "steady-state report")));
        break;
      case OutputSpec::Kind::GaussianReport: {
        const auto rep = gaussian_vs_exact_report(cfg.params, cutoff);
        std::string text = run_header(cfg, cutoff, "exact steady state vs Gaussian approximation") +
                           "quantity,exact,gaussian,difference\n";
        for (const auto& r : rep.rows) {
          text += r.quantity + "," + format_double(r.exact) + "," + format_double(r.gaussian) + "," +
                  format_double(r.difference) + "\n";
        }
        emit("gaussian_report.csv", text);
        break;
      }
      case OutputSpec::Kind::QuasiGrid: {
        if (out.grid.source != GridSpec::Source::SteadyEigenstates) break;
        const auto spectrum = spectral_decomposition(steady_state());
        const auto re = uniform_axis(out.grid.re.min, out.grid.re.max, out.grid.re.count);
        const auto im = uniform_axis(out.grid.im.min, out.grid.im.max, out.grid.im.count);
        const int count = std::min(out.grid.components, static_cast<int>(spectrum.weights.size()));
        for (int j = 0; j < count; ++j) {
          const auto g = quasidistribution(density_from_pure(spectrum.eigenstates[j]), out.grid.s, re, im);
          emit(grid_prefix(out.grid.s) + "_steady_psi" + std::to_string(j) + ".grid",
               grid_text(g, run_header(cfg, cutoff,
                                       "steady-state eigenstate " + std::to_string(j) + " weight=" +
                                           format_double(spectrum.weights[j]))));
        }
        break;
      }
      default:
        break;
    }
  }
  return summary;
}

}  // namespace kerrosc
