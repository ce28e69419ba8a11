// fiveq command-line front end: run experiments, route circuits, fit noise.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fiveq.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

struct RunArgs {
  std::string experiment;
  std::string config;
  std::string backend;
  std::uint64_t shots = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  bool ideal = false;
  std::string noise;
  int n = 0;
  std::string mode;
  std::vector<std::string> inputs;
  std::string out;
  std::string format;
};

int do_run(const RunArgs& a, CLI::App& cmd) {
  using namespace fiveq;
  RunConfig cfg;
  if (!a.config.empty()) apply_config(cfg, load_config(a.config));
  if (!a.experiment.empty()) set_experiment(cfg, a.experiment);
  if (cmd.count("--backend")) cfg.backend = a.backend;
  if (cmd.count("--shots")) cfg.shots = a.shots;
  if (cmd.count("--runs")) cfg.runs = a.runs;
  if (cmd.count("--seed")) cfg.seed = a.seed;
  if (a.ideal) cfg.noise.reset();
  if (!a.noise.empty()) cfg.noise = load_noise(a.noise);
  if (cmd.count("-n")) cfg.mermin_n = a.n;
  if (cmd.count("--mode")) cfg.mermin_mode = a.mode == "symmetric" ? MerminMode::Symmetric : MerminMode::PerTerm;
  if (cmd.count("--inputs")) cfg.qft_inputs = a.inputs;
  if (cmd.count("--out")) cfg.out = a.out;
  if (cmd.count("--format")) cfg.format = parse_format(a.format);
  cfg.check();
  const auto report = run(cfg);
  write_output(render(report, cfg.format), cfg.out);
  return 0;
}

int do_transpile(const std::string& file, const std::string& backend, bool simplified, const std::string& out) {
  using namespace fiveq;
  const auto map = resolve_backend(backend);
  auto circuit = load_circuit(file);
  if (simplified) circuit = simplify(circuit);
  auto routed = route(circuit, map);
  if (simplified) routed.circuit = simplify(routed.circuit);
  std::string text = "# backend " + map.name() + "\n# final layout (logical -> physical):";
  for (std::size_t q = 0; q < routed.layout.size(); ++q)
    text += " " + std::to_string(q) + "->" + std::to_string(routed.layout[q]);
  text += "\n" + serialize_circuit(routed.circuit);
  write_output(text, out);
  return 0;
}

int do_fit(const std::string& dir, const std::string& backend, std::uint64_t shots, std::uint64_t seed,
           const std::vector<double>& p1, const std::vector<double>& p2, const std::vector<double>& pr,
           const std::string& out) {
  using namespace fiveq;
  const auto targets = load_fit_targets(dir);
  auto grid = default_noise_grid();
  if (!p1.empty()) grid.p1 = p1;
  if (!p2.empty()) grid.p2 = p2;
  if (!pr.empty()) grid.p_read = pr;
  FitOptions opt;
  opt.shots = shots;
  opt.seed = seed;
  if (backend != "all-to-all") opt.coupling = resolve_backend(backend);
  const auto fit = fit_noise(targets, grid, opt);

  std::ostringstream os;
  os << "# fitted on " << targets.size() << " targets from " << dir << ", backend " << backend << ", " << shots
     << " shots, seed " << seed << ", " << fit.evaluated << " grid points\n";
  os << "# rms residual " << format_detail::num(fit.residual, 4) << "\n";
  for (std::size_t i = 0; i < targets.size(); ++i) {
    os << "# " << targets[i].label << ":";
    for (double v : fit.simulated[i]) os << " " << format_detail::num(v, 3);
    os << "\n";
  }
  os << serialize_noise(fit.model);
  write_output(os.str(), out);
  if (fit.residual > 0.10) std::cerr << "warning: rms residual " << fit.residual << " exceeds 0.10\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and experiment runner for a five-qubit device model"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run an experiment and print its report");
  run->add_option("experiment", ra.experiment, "dense-coding, qft, bell, mermin[-N], prime-state (or set in --config)");
  run->add_option("--config", ra.config, "Config file (key = value, noise { ... })");
  run->add_option("--backend", ra.backend, "ibmqx2, ibmqx4, all-to-all, or a coupling-map file");
  run->add_option("--shots", ra.shots, "Shots per circuit per run")->check(CLI::PositiveNumber);
  run->add_option("--runs", ra.runs, "Independent runs")->check(CLI::PositiveNumber);
  run->add_option("--seed", ra.seed, "Master seed");
  auto* ideal = run->add_flag("--ideal", ra.ideal, "Noiseless execution");
  auto* noise = run->add_option("--noise", ra.noise, "Config file with a noise block");
  ideal->excludes(noise);
  run->add_option("-n", ra.n, "Mermin qubit count")->check(CLI::Range(3, 5));
  run->add_option("--mode", ra.mode, "Mermin evaluation")->check(CLI::IsMember({"per-term", "symmetric"}));
  run->add_option("--inputs", ra.inputs, "QFT input bitstrings");
  run->add_option("--out", ra.out, "Output path (default stdout)");
  run->add_option("--format", ra.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));

  std::string circ_file, t_backend = "ibmqx4", t_out;
  bool no_simplify = false;
  auto* tr = app.add_subcommand("transpile", "Route a circuit file onto a backend");
  tr->add_option("circuit", circ_file, "Circuit file")->required();
  tr->add_option("--backend", t_backend, "Backend name or coupling-map file");
  tr->add_flag("--no-simplify", no_simplify, "Skip peephole cancellation");
  tr->add_option("--out", t_out, "Output path (default stdout)");

  std::string targets_dir, f_backend = "ibmqx4", f_out;
  std::uint64_t f_shots = 8192, f_seed = 1;
  std::vector<double> g1, g2, gr;
  auto* fit = app.add_subcommand("fit-noise", "Grid-search a noise model against observed distributions");
  fit->add_option("--targets", targets_dir, "Directory of <name>.circ / <name>.dist pairs")->required();
  fit->add_option("--backend", f_backend, "Backend used to route the target circuits");
  fit->add_option("--shots", f_shots, "Shots per target per grid point")->check(CLI::PositiveNumber);
  fit->add_option("--seed", f_seed, "Seed");
  fit->add_option("--p1", g1, "Grid values for p1")->delimiter(',');
  fit->add_option("--p2", g2, "Grid values for p2")->delimiter(',');
  fit->add_option("--p-read", gr, "Grid values for p_read")->delimiter(',');
  fit->add_option("--out", f_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run) return do_run(ra, *run);
    if (*tr) return do_transpile(circ_file, t_backend, !no_simplify, t_out);
    return do_fit(targets_dir, f_backend, f_shots, f_seed, g1, g2, gr, f_out);
  } catch (const fiveq::ConfigError& e) {
    std::cerr << "fiveq: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fiveq: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "fiveq: " << e.what() << "\n";
    return kRuntimeError;
  }
}
