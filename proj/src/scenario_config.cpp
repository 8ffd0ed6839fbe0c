#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <yaml-cpp/yaml.h>

#include "kerrosc/gaussian.hpp"
#include "kerrosc/output.hpp"
#include "kerrosc/scenario.hpp"

namespace kerrosc {

namespace {

int line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

class Parser {
 public:
  std::vector<ConfigIssue> issues;

  void issue(const YAML::Node& at, const std::string& msg) { issues.push_back({line_of(at), msg}); }

  // Reports keys outside `allowed`.
  void check_keys(const YAML::Node& map, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
        issue(kv.first, where + ": unknown field '" + key + "'");
      }
    }
  }

  YAML::Node require(const YAML::Node& map, const std::string& where, const char* key) {
    const YAML::Node child = map[key];
    if (!child) issue(map, where + ": missing field '" + key + "'");
    return child;
  }

  std::optional<double> number(const YAML::Node& node, const std::string& where) {
    if (!node.IsScalar()) {
      issue(node, where + ": expected a number");
      return std::nullopt;
    }
    try {
      const double v = node.as<double>();
      if (!std::isfinite(v)) {
        issue(node, where + ": must be finite");
        return std::nullopt;
      }
      return v;
    } catch (const YAML::Exception&) {
      issue(node, where + ": '" + node.Scalar() + "' is not a number");
      return std::nullopt;
    }
  }

  std::optional<int> integer(const YAML::Node& node, const std::string& where) {
    if (!node.IsScalar()) {
      issue(node, where + ": expected an integer");
      return std::nullopt;
    }
    try {
      return node.as<int>();
    } catch (const YAML::Exception&) {
      issue(node, where + ": '" + node.Scalar() + "' is not an integer");
      return std::nullopt;
    }
  }

  // A number, [re, im], or {abs, deg}.
  std::optional<Complex> complex(const YAML::Node& node, const std::string& where) {
    if (node.IsScalar()) {
      const auto v = number(node, where);
      if (!v) return std::nullopt;
      return Complex(*v, 0.0);
    }
    if (node.IsSequence()) {
      if (node.size() != 2) {
        issue(node, where + ": complex list must be [re, im]");
        return std::nullopt;
      }
      const auto re = number(node[0], where + "[0]");
      const auto im = number(node[1], where + "[1]");
      if (!re || !im) return std::nullopt;
      return Complex(*re, *im);
    }
    if (node.IsMap()) {
      check_keys(node, where, {"abs", "deg"});
      const auto r = require(node, where, "abs");
      const auto d = require(node, where, "deg");
      if (!r || !d) return std::nullopt;
      const auto rv = number(r, where + ".abs");
      const auto dv = number(d, where + ".deg");
      if (!rv || !dv) return std::nullopt;
      return std::polar(*rv, *dv * std::numbers::pi / 180.0);
    }
    issue(node, where + ": expected a complex number");
    return std::nullopt;
  }

  std::optional<AxisSpec> axis(const YAML::Node& node, const std::string& where) {
    if (!node.IsSequence() || node.size() != 3) {
      issue(node, where + ": axis must be [min, max, count]");
      return std::nullopt;
    }
    const auto lo = number(node[0], where + "[0]");
    const auto hi = number(node[1], where + "[1]");
    const auto count = integer(node[2], where + "[2]");
    if (!lo || !hi || !count) return std::nullopt;
    if (!(*hi > *lo)) issue(node, where + ": max must exceed min");
    if (*count < 2) issue(node[2], where + ": count must be >= 2");
    return AxisSpec{*lo, *hi, *count};
  }
};

bool valid_label(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::optional<OutputSpec::Kind> output_kind(const std::string& name) {
  using K = OutputSpec::Kind;
  for (K k : {K::Timeseries, K::QuasiGrid, K::SteadyReport, K::GaussianReport, K::DistanceToSteady,
              K::AmplitudePath}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void parse_initial_states(Parser& p, const YAML::Node& list, ScenarioConfig& cfg) {
  if (!list.IsSequence() || list.size() == 0) {
    p.issue(list, "initial_states: expected a non-empty list");
    return;
  }
  std::set<std::string> labels;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const YAML::Node item = list[i];
    const std::string where = "initial_states[" + std::to_string(i) + "]";
    if (!item.IsMap()) {
      p.issue(item, where + ": expected a map");
      continue;
    }
    p.check_keys(item, where, {"label", "type", "alpha", "n", "components"});
    InitialStateSpec spec;
    spec.label = item["label"] ? item["label"].as<std::string>() : "state" + std::to_string(i);
    if (!valid_label(spec.label)) {
      p.issue(item["label"], where + ".label: use letters, digits, '_' or '-'");
    } else if (!labels.insert(spec.label).second) {
      p.issue(item["label"], where + ".label: duplicate label '" + spec.label + "'");
    }
    const YAML::Node type = p.require(item, where, "type");
    if (!type) continue;
    const auto t = type.as<std::string>();
    if (t == "coherent") {
      spec.kind = InitialStateSpec::Kind::Coherent;
      if (const auto a = p.require(item, where, "alpha")) {
        if (auto v = p.complex(a, where + ".alpha")) spec.alpha = *v;
      }
    } else if (t == "fock") {
      spec.kind = InitialStateSpec::Kind::Fock;
      if (const auto n = p.require(item, where, "n")) {
        if (auto v = p.integer(n, where + ".n")) {
          spec.n = *v;
          if (*v < 0) p.issue(n, where + ".n: must be >= 0");
        }
      }
    } else if (t == "superposition") {
      spec.kind = InitialStateSpec::Kind::Superposition;
      const auto comps = p.require(item, where, "components");
      if (!comps) continue;
      if (!comps.IsSequence() || comps.size() == 0) {
        p.issue(comps, where + ".components: expected a non-empty list");
        continue;
      }
      for (std::size_t k = 0; k < comps.size(); ++k) {
        const YAML::Node c = comps[k];
        const std::string cw = where + ".components[" + std::to_string(k) + "]";
        if (!c.IsMap()) {
          p.issue(c, cw + ": expected a map");
          continue;
        }
        p.check_keys(c, cw, {"weight", "alpha"});
        CoherentComponent comp{1.0, 0.0};
        if (c["weight"]) {
          if (auto w = p.complex(c["weight"], cw + ".weight")) comp.weight = *w;
        }
        if (const auto a = p.require(c, cw, "alpha")) {
          if (auto v = p.complex(a, cw + ".alpha")) comp.alpha = *v;
        }
        spec.components.push_back(comp);
      }
    } else {
      p.issue(type, where + ".type: expected coherent, fock or superposition, got '" + t + "'");
    }
    cfg.initial_states.push_back(std::move(spec));
  }
}

void parse_outputs(Parser& p, const YAML::Node& list, ScenarioConfig& cfg) {
  if (!list.IsSequence() || list.size() == 0) {
    p.issue(list, "outputs: expected a non-empty list");
    return;
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const YAML::Node item = list[i];
    const std::string where = "outputs[" + std::to_string(i) + "]";
    OutputSpec out;
    std::string name;
    if (item.IsScalar()) {
      name = item.Scalar();
    } else if (item.IsMap() && item["kind"]) {
      name = item["kind"].as<std::string>();
    } else {
      p.issue(item, where + ": expected an output name or a map with 'kind'");
      continue;
    }
    const auto kind = output_kind(name);
    if (!kind) {
      p.issue(item, where + ": unknown output '" + name + "'");
      continue;
    }
    out.kind = *kind;
    std::string key = name;
    if (out.kind == OutputSpec::Kind::QuasiGrid) {
      if (!item.IsMap()) {
        p.issue(item, where + ": quasi_grid needs s, re and im");
        continue;
      }
      p.check_keys(item, where, {"kind", "s", "re", "im", "source", "components"});
      if (const auto s = p.require(item, where, "s")) {
        if (auto v = p.number(s, where + ".s")) {
          out.grid.s = *v;
          if (!(*v >= -1.0 && *v <= 1.0 - 1e-9)) p.issue(s, where + ".s: must lie in [-1, 1)");
        }
      }
      if (const auto re = p.require(item, where, "re")) {
        if (auto a = p.axis(re, where + ".re")) out.grid.re = *a;
      }
      if (const auto im = p.require(item, where, "im")) {
        if (auto a = p.axis(im, where + ".im")) out.grid.im = *a;
      }
      if (const auto src = item["source"]) {
        const auto v = src.as<std::string>();
        if (v == "snapshots") {
          out.grid.source = GridSpec::Source::Snapshots;
        } else if (v == "steady_eigenstates") {
          out.grid.source = GridSpec::Source::SteadyEigenstates;
        } else {
          p.issue(src, where + ".source: expected snapshots or steady_eigenstates");
        }
      }
      if (const auto c = item["components"]) {
        if (auto v = p.integer(c, where + ".components")) {
          out.grid.components = *v;
          if (*v < 1) p.issue(c, where + ".components: must be >= 1");
        }
      }
      key += "/" + format_shortest(out.grid.s) +
             (out.grid.source == GridSpec::Source::Snapshots ? "/snap" : "/eig");
      if (out.grid.source == GridSpec::Source::Snapshots && cfg.time.snapshot_times.empty()) {
        p.issue(item, where + ": snapshot grids need time.snapshot_times");
      }
    } else if (item.IsMap()) {
      p.check_keys(item, where, {"kind"});
    }
    if (!seen.insert(key).second) p.issue(item, where + ": duplicate output");
    cfg.outputs.push_back(out);
  }
}

}  // namespace

std::string_view to_string(OutputSpec::Kind kind) {
  switch (kind) {
    case OutputSpec::Kind::Timeseries: return "timeseries";
    case OutputSpec::Kind::QuasiGrid: return "quasi_grid";
    case OutputSpec::Kind::SteadyReport: return "steady_report";
    case OutputSpec::Kind::GaussianReport: return "gaussian_report";
    case OutputSpec::Kind::DistanceToSteady: return "distance_to_steady";
    case OutputSpec::Kind::AmplitudePath: return "amplitude_path";
  }
  return "?";
}

ConfigResult validate_config(const std::string& text) {
  ConfigResult result;
  Parser p;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    result.issues.push_back({e.mark.line >= 0 ? e.mark.line + 1 : 0, "YAML syntax: " + e.msg});
    return result;
  }
  if (!root.IsMap()) {
    result.issues.push_back({line_of(root), "top level must be a map"});
    return result;
  }

  ScenarioConfig cfg;
  try {
    p.check_keys(root, "config", {"name", "initial_states", "params", "cutoff", "time", "tolerances", "outputs"});
    if (const auto name = p.require(root, "config", "name")) {
      cfg.name = name.as<std::string>();
      if (!valid_label(cfg.name)) p.issue(name, "name: use letters, digits, '_' or '-'");
    }

    if (const auto params = p.require(root, "config", "params")) {
      if (!params.IsMap()) {
        p.issue(params, "params: expected a map");
      } else {
        p.check_keys(params, "params", {"G", "gamma0", "p"});
        if (const auto g = p.require(params, "params", "G")) {
          if (auto v = p.number(g, "params.G")) cfg.params.kerr = *v;
        }
        if (const auto l = p.require(params, "params", "gamma0")) {
          if (auto v = p.number(l, "params.gamma0")) {
            cfg.params.loss = *v;
            if (*v < 0) p.issue(l, "params.gamma0: must be >= 0");
          }
        }
        if (const auto pump = p.require(params, "params", "p")) {
          if (auto v = p.complex(pump, "params.p")) cfg.params.pump = *v;
        }
      }
    }

    if (const auto c = root["cutoff"]) {
      if (auto v = p.integer(c, "cutoff")) {
        cfg.cutoff = *v;
        if (*v < 1) p.issue(c, "cutoff: must be >= 1");
      }
    }

    if (const auto time = p.require(root, "config", "time")) {
      if (!time.IsMap()) {
        p.issue(time, "time: expected a map");
      } else {
        p.check_keys(time, "time", {"t_max", "sample_count", "snapshot_times"});
        if (const auto t = p.require(time, "time", "t_max")) {
          if (auto v = p.number(t, "time.t_max")) {
            cfg.time.t_max = *v;
            if (*v <= 0) p.issue(t, "time.t_max: must be > 0");
          }
        }
        if (const auto n = time["sample_count"]) {
          if (auto v = p.integer(n, "time.sample_count")) {
            cfg.time.sample_count = *v;
            if (*v < 2) p.issue(n, "time.sample_count: must be >= 2");
          }
        }
        if (const auto snaps = time["snapshot_times"]) {
          if (!snaps.IsSequence()) {
            p.issue(snaps, "time.snapshot_times: expected a list");
          } else {
            for (std::size_t i = 0; i < snaps.size(); ++i) {
              const std::string where = "time.snapshot_times[" + std::to_string(i) + "]";
              if (auto v = p.number(snaps[i], where)) {
                if (*v < 0 || *v > cfg.time.t_max) {
                  p.issue(snaps[i], where + ": " + format_shortest(*v) + " is outside [0, t_max = " +
                                        format_shortest(cfg.time.t_max) + "]");
                }
                cfg.time.snapshot_times.push_back(*v);
              }
            }
          }
        }
      }
    }

    if (const auto tol = root["tolerances"]) {
      if (!tol.IsMap()) {
        p.issue(tol, "tolerances: expected a map");
      } else {
        p.check_keys(tol, "tolerances", {"rtol", "atol", "tail_margin", "tail_limit"});
        auto positive = [&](const char* key, double& field) {
          if (const auto n = tol[key]) {
            if (auto v = p.number(n, std::string("tolerances.") + key)) {
              field = *v;
              if (*v <= 0) p.issue(n, std::string("tolerances.") + key + ": must be > 0");
            }
          }
        };
        positive("rtol", cfg.tolerances.rtol);
        positive("atol", cfg.tolerances.atol);
        positive("tail_limit", cfg.tolerances.tail_limit);
        if (const auto n = tol["tail_margin"]) {
          if (auto v = p.integer(n, "tolerances.tail_margin")) {
            cfg.tolerances.tail_margin = *v;
            if (*v < 1) p.issue(n, "tolerances.tail_margin: must be >= 1");
          }
        }
      }
    }

    if (const auto states = p.require(root, "config", "initial_states")) {
      parse_initial_states(p, states, cfg);
    }
    if (const auto outputs = p.require(root, "config", "outputs")) parse_outputs(p, outputs, cfg);

    if (cfg.cutoff && *cfg.cutoff <= cfg.tolerances.tail_margin) {
      p.issue(root["cutoff"], "cutoff: must exceed tolerances.tail_margin");
    }
    for (const auto& s : cfg.initial_states) {
      if (s.kind == InitialStateSpec::Kind::Fock && cfg.cutoff && s.n > *cfg.cutoff) {
        p.issue(root["cutoff"], "cutoff: smaller than Fock state n = " + std::to_string(s.n));
      }
    }
  } catch (const YAML::Exception& e) {
    p.issues.push_back({e.mark.line >= 0 ? e.mark.line + 1 : 0, std::string("YAML: ") + e.what()});
  }

  std::stable_sort(p.issues.begin(), p.issues.end(),
                   [](const ConfigIssue& a, const ConfigIssue& b) { return a.line < b.line; });
  result.issues = std::move(p.issues);
  if (result.issues.empty()) result.config = std::move(cfg);
  return result;
}

std::string canonical_form(const ScenarioConfig& cfg) {
  auto num = [](double v) { return format_shortest(v); };
  auto cplx = [&](Complex z) { return "[" + num(z.real()) + ", " + num(z.imag()) + "]"; };
  auto axis = [&](const AxisSpec& a) {
    return "[" + num(a.min) + ", " + num(a.max) + ", " + std::to_string(a.count) + "]";
  };

  std::string out = "name: " + cfg.name + "\n";
  out += "initial_states:\n";
  for (const auto& s : cfg.initial_states) {
    out += "  - label: " + s.label + "\n";
    switch (s.kind) {
      case InitialStateSpec::Kind::Coherent:
        out += "    type: coherent\n    alpha: " + cplx(s.alpha) + "\n";
        break;
      case InitialStateSpec::Kind::Fock:
        out += "    type: fock\n    n: " + std::to_string(s.n) + "\n";
        break;
      case InitialStateSpec::Kind::Superposition:
        out += "    type: superposition\n    components:\n";
        for (const auto& c : s.components) {
          out += "      - weight: " + cplx(c.weight) + "\n        alpha: " + cplx(c.alpha) + "\n";
        }
        break;
    }
  }
  out += "params:\n  G: " + num(cfg.params.kerr) + "\n  gamma0: " + num(cfg.params.loss) +
         "\n  p: " + cplx(cfg.params.pump) + "\n";
  if (cfg.cutoff) out += "cutoff: " + std::to_string(*cfg.cutoff) + "\n";
  out += "time:\n  t_max: " + num(cfg.time.t_max) + "\n  sample_count: " +
         std::to_string(cfg.time.sample_count) + "\n  snapshot_times: [";
  for (std::size_t i = 0; i < cfg.time.snapshot_times.size(); ++i) {
    out += (i ? ", " : "") + num(cfg.time.snapshot_times[i]);
  }
  out += "]\n";
  out += "tolerances:\n  rtol: " + num(cfg.tolerances.rtol) + "\n  atol: " + num(cfg.tolerances.atol) +
         "\n  tail_margin: " + std::to_string(cfg.tolerances.tail_margin) +
         "\n  tail_limit: " + num(cfg.tolerances.tail_limit) + "\n";
  out += "outputs:\n";
  for (const auto& o : cfg.outputs) {
    if (o.kind != OutputSpec::Kind::QuasiGrid) {
      out += "  - " + std::string(to_string(o.kind)) + "\n";
      continue;
    }
    out += "  - kind: quasi_grid\n    s: " + num(o.grid.s) + "\n    re: " + axis(o.grid.re) +
           "\n    im: " + axis(o.grid.im) + "\n    source: " +
           (o.grid.source == GridSpec::Source::Snapshots ? "snapshots" : "steady_eigenstates") + "\n";
    if (o.grid.source == GridSpec::Source::SteadyEigenstates) {
      out += "    components: " + std::to_string(o.grid.components) + "\n";
    }
  }
  return out;
}

FockCutoff scenario_cutoff(const ScenarioConfig& cfg) {
  if (cfg.cutoff) return FockCutoff(*cfg.cutoff);
  double mean = 0.0;
  int fock_n = 0;
  for (const auto& s : cfg.initial_states) {
    switch (s.kind) {
      case InitialStateSpec::Kind::Coherent:
        mean = std::max(mean, std::norm(s.alpha));
        break;
      case InitialStateSpec::Kind::Fock:
        mean = std::max(mean, static_cast<double>(s.n));
        fock_n = std::max(fock_n, s.n);
        break;
      case InitialStateSpec::Kind::Superposition:
        for (const auto& c : s.components) mean = std::max(mean, std::norm(c.alpha));
        break;
    }
  }
  if (cfg.params.pump != 0.0 && (cfg.params.loss > 0.0 || cfg.params.kerr != 0.0)) {
    mean = std::max(mean, std::norm(classical_steady_amplitude(cfg.params)));
  }
  const FockCutoff c = default_cutoff(mean);
  return FockCutoff(std::max(c.n_cut(), fock_n + cfg.tolerances.tail_margin + 1));
}

}  // namespace kerrosc
