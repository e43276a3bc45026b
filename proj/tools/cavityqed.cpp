// cavityqed: spectra, ensemble averages and the invariant suite from the command line.
//
// Exit codes: 0 success, 1 invariant failure, 2 usage error, 3 I/O error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cavityqed/cavityqed.hpp"
#include "json.hpp"

namespace {

using namespace cavityqed;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInvariantFailure = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::string> preset;
  std::optional<double> eta;
  std::optional<double> kappa_over_gamma;
  std::optional<double> lambda;
  std::optional<double> waist;
  std::optional<double> length;
  std::optional<double> qsq;
  std::optional<double> gamma;
  std::optional<std::string> mode;
  std::optional<double> offset;
  std::optional<double> depth0;
  std::optional<double> dmin, dmax, dstep;
  bool exact = false;

  std::string kind = "uniform";
  std::size_t n = 50;
  double extent = 10.0;
  int per_wavelength = 2;
  std::optional<std::string> estimator;
  std::size_t samples = 10000;
  std::optional<std::uint64_t> seed;
  std::uint64_t sample_index = 0;
  unsigned threads = 0;

  std::pair<std::string, double> perturb{"", 0.0};

  std::optional<std::string> output;
  std::optional<std::string> format;  // default: csv for scan, json for ensemble
  std::optional<std::string> config;
};

// Flat JSON config -> argument tokens, injected ahead of the command-line
// flags so that later (command-line) values win.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a flat JSON object");
  auto scalar = [](const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number() || v.is_boolean()) return v.dump();
    throw UsageError("config values must be strings, numbers or booleans");
  };
  std::vector<std::string> tokens;
  for (const auto& [key, value] : j.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_array()) {
      tokens.push_back(flag);
      for (const auto& v : value) tokens.push_back(scalar(v));
    } else {
      tokens.push_back(flag);
      tokens.push_back(scalar(value));
    }
  }
  return tokens;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-o,--output", cfg.output, "Output file");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--config", cfg.config, "Flat JSON file of flag values; flags override it");
}

template <class Fn>
void write_output(const RunConfig& cfg, Fn&& write) {
  if (!cfg.output) {
    write(std::cout);
    return;
  }
  std::ofstream out(*cfg.output, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + *cfg.output);
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing output file: " + *cfg.output);
}

bool any_geometric(const RunConfig& c) { return c.lambda || c.waist || c.length || c.qsq || c.gamma; }
bool any_abstract(const RunConfig& c) { return c.eta || c.kappa_over_gamma; }

std::optional<PhysicalScenario> geometric_scenario(const RunConfig& c) {
  if (!any_geometric(c)) return std::nullopt;
  if (!(c.lambda && c.waist && c.length && c.qsq)) {
    throw UsageError("geometric scenario needs --lambda, --waist, --length and --qsq");
  }
  const double gamma = c.gamma.value_or(2.0 * pi * 6.07e6);
  const AtomTransition atom = AtomTransition::from_wavelength(*c.lambda, gamma);
  return PhysicalScenario(atom, *c.waist, CavitySpec(*c.qsq, *c.length));
}

int cmd_scan(const RunConfig& c) {
  if (!c.output) throw UsageError("scan needs an output file (-o)");
  if (any_abstract(c) && any_geometric(c)) {
    throw UsageError("give either abstract (--eta, --kappa-over-gamma) or geometric parameters, not both");
  }
  if (c.exact && !any_geometric(c)) throw UsageError("--exact needs a geometric scenario");

  ScanPreset base{ScanScenario{}, DetuningGrid{}};
  if (c.preset) {
    const auto p = preset(*c.preset);
    if (!p) throw UsageError("unknown preset: " + *c.preset);
    base = *p;
  } else if (!any_abstract(c) && !any_geometric(c)) {
    throw UsageError("scan needs --preset, abstract parameters or geometric parameters");
  }
  ScanScenario& sc = base.scenario;
  DetuningGrid& grid = base.grid;
  if (c.eta) sc.params.eta_c = *c.eta;
  if (c.kappa_over_gamma) sc.params.kappa_over_gamma = *c.kappa_over_gamma;
  if (c.mode) {
    const auto m = parse_spectrum_mode(*c.mode);
    if (!m) throw UsageError("unknown mode: " + *c.mode);
    sc.mode = *m;
  }
  if (c.offset) sc.atom_cavity_offset = *c.offset;
  if (c.depth0) sc.depth0 = *c.depth0;
  if (c.dmin) grid.dmin = *c.dmin;
  if (c.dmax) grid.dmax = *c.dmax;
  if (c.dstep) grid.dstep = *c.dstep;

  SpectrumTable table;
  if (const auto phys = geometric_scenario(c)) {
    if (c.exact) {
      table = scan_exact(*phys, sc, grid);
    } else {
      sc.params = phys->to_abstract();
      sc.params.gamma = 1.0;
      table = scan(sc, grid);
    }
  } else {
    table = scan(sc, grid);
  }
  write_output(c, [&](std::ostream& os) {
    if (c.format.value_or("csv") == "json") {
      write_spectrum_json(os, table);
    } else {
      write_spectrum_csv(os, table);
    }
  });
  return kOk;
}

LayoutSpec layout_spec(const RunConfig& c) {
  if (!c.seed) throw UsageError("a seed (--seed) is required");
  const auto kind = parse_layout_kind(c.kind);
  if (!kind) throw UsageError("unknown layout kind: " + c.kind);
  LayoutSpec spec{*kind, c.n, c.extent, *c.seed, c.per_wavelength};
  spec.validate();
  return spec;
}

int cmd_ensemble(const RunConfig& c) {
  if (!c.estimator) throw UsageError("ensemble needs --estimator");
  const auto estimator = named_estimator(*c.estimator);
  if (!estimator) throw UsageError("unknown estimator: " + *c.estimator + " (F2, ReF, ImF, H, G2, ReG, ImG)");
  const LayoutSpec spec = layout_spec(c);
  const double lambda = c.lambda.value_or(780e-9);
  detail::require_positive(lambda, "lambda");
  const double k = 2.0 * pi / lambda;
  const CollectiveFactorEstimate est = monte_carlo(spec, k, *estimator, c.samples, c.threads);

  write_output(c, [&](std::ostream& os) {
    if (c.format.value_or("json") == "csv") {
      os << "estimator,kind,n,extent,per_wavelength,samples,seed,mean,std_dev,std_error,second_moment\n";
      os << *c.estimator << ',' << to_string(spec.kind) << ',' << spec.n_atoms << ',' << format_double(spec.extent)
         << ',' << spec.per_wavelength << ',' << est.n_samples << ',' << spec.seed << ',' << format_double(est.mean)
         << ',' << format_double(est.std_dev) << ',' << format_double(est.std_error) << ','
         << format_double(est.second_moment) << '\n';
      return;
    }
    ordered_json j;
    j["estimator"] = *c.estimator;
    j["kind"] = std::string(to_string(spec.kind));
    j["n"] = spec.n_atoms;
    j["extent"] = spec.extent;
    j["per_wavelength"] = spec.per_wavelength;
    j["lambda"] = lambda;
    j["samples"] = est.n_samples;
    j["seed"] = spec.seed;
    j["mean"] = est.mean;
    j["std_dev"] = est.std_dev;
    j["std_error"] = est.std_error;
    j["second_moment"] = est.second_moment;
    os << j.dump(2) << '\n';
  });
  return kOk;
}

int cmd_layout(const RunConfig& c) {
  const LayoutSpec spec = layout_spec(c);
  const double lambda = c.lambda.value_or(780e-9);
  detail::require_positive(lambda, "lambda");
  const auto positions = generate_positions(spec, 2.0 * pi / lambda, c.sample_index);
  write_output(c, [&](std::ostream& os) { write_layout_csv(os, positions, lambda); });
  return kOk;
}

int cmd_check(const RunConfig& c) {
  CheckOptions opt;
  if (!c.perturb.first.empty()) {
    if (c.perturb.first != "beta") throw UsageError("--perturb supports only 'beta'");
    opt.perturb_beta = c.perturb.second;
  }
  if (c.seed) opt.seed = *c.seed;
  const auto results = run_invariant_suite(opt);
  const bool ok = all_passed(results);

  write_output(c, [&](std::ostream& os) {
    if (c.format.value_or("csv") == "json") {
      ordered_json j;
      j["passed"] = ok;
      auto arr = ordered_json::array();
      for (const auto& r : results) {
        arr.push_back({{"name", r.name}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"passed", r.passed}});
      }
      j["checks"] = std::move(arr);
      os << j.dump(2) << '\n';
      return;
    }
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
      os << (r.passed ? "PASS  " : "FAIL  ") << r.name << std::string(width - r.name.size() + 2, ' ')
         << "residual " << format_double(r.residual, 6) << "  tolerance " << format_double(r.tolerance, 6) << '\n';
    }
    os << (ok ? "all invariants hold" : "invariant failure") << '\n';
  });
  return ok ? kOk : kInvariantFailure;
}

int run(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Classical atom-cavity spectra, ensemble averages and invariant checks", "cavityqed"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* scan = app.add_subcommand("scan", "Evaluate a spectrum over a detuning grid");
  scan->add_option("--preset", cfg.preset, "fig3, fig4, fig5 or fig6");
  scan->add_option("--eta", cfg.eta, "Cavity cooperativity eta_c");
  scan->add_option("--kappa-over-gamma", cfg.kappa_over_gamma, "Cavity linewidth in units of Gamma");
  scan->add_option("--lambda", cfg.lambda, "Transition wavelength (m)");
  scan->add_option("--waist", cfg.waist, "Mode waist (m)");
  scan->add_option("--length", cfg.length, "Cavity length (m)");
  scan->add_option("--qsq", cfg.qsq, "Mirror transmission q^2");
  scan->add_option("--gamma", cfg.gamma, "Atomic linewidth (rad/s), geometric scenarios only");
  scan->add_option("--mode", cfg.mode, "driven_cavity, driven_atom, sidebeam or all");
  scan->add_option("--offset", cfg.offset, "(omega_A - omega_c) / Gamma");
  scan->add_option("--depth0", cfg.depth0, "Side-beam resonant absorption without cavity");
  scan->add_option("--dmin", cfg.dmin, "Grid start (Gamma)");
  scan->add_option("--dmax", cfg.dmax, "Grid end (Gamma)");
  scan->add_option("--dstep", cfg.dstep, "Grid step (Gamma)");
  scan->add_flag("--exact", cfg.exact, "Use the exact polarizability (geometric scenarios)");
  add_output_options(scan, cfg);

  auto* ensemble = app.add_subcommand("ensemble", "Monte-Carlo average of a collective factor");
  auto* layout = app.add_subcommand("layout", "Write one sampled layout as CSV");
  for (auto* sub : {ensemble, layout}) {
    sub->add_option("--kind", cfg.kind, "uniform, antinode, node, bragg or commensurate");
    sub->add_option("--n", cfg.n, "Number of atoms");
    sub->add_option("--extent", cfg.extent, "Cube edge in wavelengths (uniform)");
    sub->add_option("--per-wavelength", cfg.per_wavelength, "Atoms per grating period (commensurate)");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--lambda", cfg.lambda, "Wavelength (m)");
    add_output_options(sub, cfg);
  }
  ensemble->add_option("--estimator", cfg.estimator, "F2, ReF, ImF, H, G2, ReG or ImG");
  ensemble->add_option("--samples", cfg.samples, "Number of layouts");
  ensemble->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  layout->add_option("--sample", cfg.sample_index, "Sample index");

  auto* check = app.add_subcommand("check", "Run the invariant suite");
  check->add_option("--perturb", cfg.perturb, "Fault injection: --perturb beta <eps>");
  check->add_option("--seed", cfg.seed, "Seed for randomized checks");
  add_output_options(check, cfg);

  std::vector<std::string> args(argv + 1, argv + argc);
  if (const auto path = find_config_path(args); path && !args.empty()) {
    std::vector<std::string> injected = config_tokens(*path);
    const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) {
      return a == "scan" || a == "ensemble" || a == "layout" || a == "check";
    });
    if (sub != args.end()) args.insert(sub + 1, injected.begin(), injected.end());
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (scan->parsed()) return cmd_scan(cfg);
  if (ensemble->parsed()) return cmd_ensemble(cfg);
  if (layout->parsed()) return cmd_layout(cfg);
  return cmd_check(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const cavityqed::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
