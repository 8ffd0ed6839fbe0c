#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "kerrosc/gaussian.hpp"
#include "kerrosc/output.hpp"
#include "kerrosc/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int report_error(const kerrosc::Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  switch (e.kind()) {
    case kerrosc::ErrorKind::ConfigInvalid: return kExitConfig;
    case kerrosc::ErrorKind::IoError: return kExitIo;
    default: return kExitNumerical;
  }
}

// Parses and validates a scenario file; prints issues and returns nullopt on failure.
std::optional<kerrosc::ScenarioConfig> load_config(const std::string& path) {
  const std::string text = kerrosc::read_text_file(path);
  auto result = kerrosc::validate_config(text);
  for (const auto& issue : result.issues) {
    std::cerr << path << ":" << issue.line << ": " << issue.message << "\n";
  }
  return result.config;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const auto cfg = load_config(config_path);
  if (!cfg) return kExitConfig;
  const auto summary = kerrosc::run_scenario(*cfg, out_dir);
  std::printf("scenario %s  n_cut=%d  files=%zu\n", summary.scenario.c_str(), summary.n_cut,
              summary.files.size());
  for (const auto& s : summary.states) {
    std::printf("  %-12s t=%g  E=%.6f  L=%.6f  F=%.6f  S=%.6f  n=%.6f  max|Tr-1|=%.2e  tail=%.2e\n",
                s.label.c_str(), s.t_final, s.entropy, s.linear_entropy, s.fano, s.squeezing, s.mean_n,
                s.max_trace_error, s.max_tail_mass);
  }
  for (const auto& f : summary.files) std::printf("  wrote %s\n", f.string().c_str());
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  const auto cfg = load_config(config_path);
  if (!cfg) return kExitConfig;
  std::cout << kerrosc::canonical_form(*cfg);
  return kExitOk;
}

int cmd_steady(double G, double gamma0, double p_re, double p_im, int cutoff) {
  const kerrosc::OscillatorParams params{kerrosc::Complex(p_re, p_im), G, gamma0};
  try {
    params.validate();
  } catch (const kerrosc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  kerrosc::FockCutoff fc = cutoff > 0 ? kerrosc::FockCutoff(cutoff) : kerrosc::FockCutoff(1);
  if (cutoff <= 0) {
    double mean = 0.0;
    if (G != 0.0) mean = std::norm(kerrosc::classical_steady_amplitude(params));
    fc = kerrosc::default_cutoff(mean);
  }
  std::cout << kerrosc::steady_report_csv(
      params, fc, "# steady state, G=" + kerrosc::format_double(G) + " gamma0=" +
                      kerrosc::format_double(gamma0) + " p=" + kerrosc::format_double(p_re) + "," +
                      kerrosc::format_double(p_im) + " n_cut=" + std::to_string(fc.n_cut()) + "\n");
  return kExitOk;
}

int cmd_render(const std::string& grid_path, std::string out_path) {
  const auto grid = kerrosc::parse_grid(kerrosc::read_text_file(grid_path));
  if (out_path.empty()) out_path = grid_path + ".pgm";
  kerrosc::write_text_file(out_path, kerrosc::render_pgm(grid));
  std::printf("wrote %s (%zux%zu, range %g .. %g)\n", out_path.c_str(), grid.re_axis.size(),
              grid.im_axis.size(), grid.min_value(), grid.max_value());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pumped dissipative Kerr oscillator: master-equation scenarios and steady-state reports"};
  app.set_version_flag("--version", KERROSC_VERSION);
  app.require_subcommand(1);

  std::string config_path, out_dir, grid_path, pgm_path;
  double G = 0.0, gamma0 = 0.0, p_re = 0.0, p_im = 0.0;
  int cutoff = 0;

  auto* run = app.add_subcommand("run", "Run a scenario file and write its outputs");
  run->add_option("config", config_path, "Scenario YAML file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();

  auto* steady = app.add_subcommand("steady", "Exact steady state vs Gaussian approximation (CSV to stdout)");
  steady->add_option("--G", G, "Kerr coefficient")->required();
  steady->add_option("--gamma0", gamma0, "Damping rate")->required();
  steady->add_option("--p", p_re, "Pump amplitude (real part)")->required();
  steady->add_option("--p-im", p_im, "Pump amplitude (imaginary part)");
  steady->add_option("--cutoff", cutoff, "Fock cutoff n_cut (default: sized from the classical amplitude)");

  auto* validate = app.add_subcommand("validate", "Check a scenario file and print its canonical form");
  validate->add_option("config", config_path, "Scenario YAML file")->required();

  auto* render = app.add_subcommand("render", "Convert a grid file to a greyscale PGM image");
  render->add_option("grid", grid_path, "Grid file")->required();
  render->add_option("--out", pgm_path, "Output image (default: <grid>.pgm)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir);
    if (*steady) return cmd_steady(G, gamma0, p_re, p_im, cutoff);
    if (*validate) return cmd_validate(config_path);
    if (*render) return cmd_render(grid_path, pgm_path);
  } catch (const kerrosc::Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
