#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiveq/circuit_text.hpp"
#include "fiveq/experiments/bell.hpp"
#include "fiveq/experiments/dense_coding.hpp"
#include "fiveq/experiments/mermin.hpp"
#include "fiveq/experiments/prime_state.hpp"
#include "fiveq/experiments/qft.hpp"
#include "fiveq/fit.hpp"

namespace fiveq {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed config file: flat `key = value` lines plus at most one
/// `noise { p1 = ..., p2 = ..., p_read = ... }` block. Commas or newlines
/// separate the block's fields; '#' starts a comment.
struct ConfigFile {
  std::map<std::string, std::string> values;
  std::optional<NoiseModel> noise;
};

namespace config_detail {

inline std::string trimmed(std::string_view s) { return std::string(text_detail::trim(s)); }

inline std::string strip_comments(const std::string& text) {
  std::string out;
  bool comment = false;
  for (char ch : text) {
    if (ch == '#') comment = true;
    if (ch == '\n') comment = false;
    if (!comment) out += ch;
  }
  return out;
}

inline std::pair<std::string, std::string> key_value(const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + trimmed(item) + "'");
  auto key = trimmed(item.substr(0, eq));
  auto value = trimmed(item.substr(eq + 1));
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
  if (key.empty()) throw ConfigError("empty key in '" + trimmed(item) + "'");
  return {key, value};
}

inline double probability(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("noise block is missing '" + key + "'");
  const auto v = text_detail::parse_double(it->second);
  if (!v) throw ConfigError("noise." + key + ": not a number: '" + it->second + "'");
  return *v;
}

}  // namespace config_detail

inline ConfigFile parse_config(const std::string& text) {
  using namespace config_detail;
  ConfigFile cfg;
  std::string body = strip_comments(text);

  const auto open = body.find('{');
  if (open != std::string::npos) {
    const auto close = body.find('}', open);
    if (close == std::string::npos) throw ConfigError("unterminated '{' block");
    auto head_start = body.rfind('\n', open);
    head_start = head_start == std::string::npos ? 0 : head_start + 1;
    const auto name = trimmed(body.substr(head_start, open - head_start));
    if (name != "noise") throw ConfigError("unknown block '" + name + "'");
    std::string inner = body.substr(open + 1, close - open - 1);
    std::replace(inner.begin(), inner.end(), ',', '\n');
    std::map<std::string, std::string> kv;
    std::istringstream in(inner);
    for (std::string line; std::getline(in, line);)
      if (!trimmed(line).empty()) kv.insert(key_value(line));
    for (const auto& [k, v] : kv)
      if (k != "p1" && k != "p2" && k != "p_read") throw ConfigError("unknown noise field '" + k + "'");
    try {
      cfg.noise = NoiseModel(probability(kv, "p1"), probability(kv, "p2"), probability(kv, "p_read"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    body.erase(head_start, close + 1 - head_start);
    if (body.find('{') != std::string::npos) throw ConfigError("only one noise block is allowed");
  }

  std::istringstream in(body);
  for (std::string line; std::getline(in, line);) {
    if (trimmed(line).empty()) continue;
    auto [k, v] = key_value(line);
    if (k == "noise" && v == "ideal") {
      cfg.values[k] = v;
      continue;
    }
    if (!cfg.values.emplace(k, v).second) throw ConfigError("duplicate key '" + k + "'");
  }
  return cfg;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ConfigFile load_config(const std::string& path) {
  try {
    return parse_config(read_text_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

/// The noise model stored in a config file.
inline NoiseModel load_noise(const std::string& path) {
  const auto cfg = load_config(path);
  if (!cfg.noise) throw ConfigError(path + ": no noise block");
  return *cfg.noise;
}

namespace config_detail {
// Fewest digits that read back as the same double.
inline std::string short_double(double v) {
  char buf[32];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}
}  // namespace config_detail

inline std::string serialize_noise(const NoiseModel& m) {
  using config_detail::short_double;
  return "noise {\n  p1 = " + short_double(m.p1) + "\n  p2 = " + short_double(m.p2) + "\n  p_read = " +
         short_double(m.p_read) + "\n}\n";
}

enum class OutputFormat { Json, Csv, Table };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "table" || s == "text") return OutputFormat::Table;
  throw ConfigError("unknown output format '" + s + "' (json, csv, table)");
}

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> k{"dense-coding", "qft", "bell", "mermin", "prime-state"};
  return k;
}

struct RunConfig {
  std::string experiment;
  std::string backend;  // empty = the experiment's default device
  std::uint64_t shots = 8192;
  int runs = 5;
  std::uint64_t seed = 2017;
  std::optional<NoiseModel> noise;  // nullopt = ideal
  int mermin_n = 3;
  MerminMode mermin_mode = MerminMode::PerTerm;
  std::vector<std::string> qft_inputs{"000", "011"};
  std::string out;  // empty = stdout
  OutputFormat format = OutputFormat::Json;

  void check() const {
    if (std::find(experiment_names().begin(), experiment_names().end(), experiment) == experiment_names().end())
      throw ConfigError("unknown experiment '" + experiment + "'");
    if (shots < 1) throw ConfigError("shots must be at least 1");
    if (runs < 1) throw ConfigError("runs must be at least 1");
    if (experiment == "mermin" && (mermin_n < 3 || mermin_n > 5)) throw ConfigError("mermin n must be 3, 4 or 5");
  }
};

/// Accepts "mermin-4" as shorthand for experiment "mermin" with n = 4.
inline void set_experiment(RunConfig& cfg, const std::string& name) {
  if (name.rfind("mermin-", 0) == 0 && name.size() == 8) {
    cfg.experiment = "mermin";
    cfg.mermin_n = name[7] - '0';
  } else {
    cfg.experiment = name;
  }
}

namespace config_detail {
inline std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    const auto x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  }
}
}  // namespace config_detail

/// Applies config-file values onto `cfg`. Unknown keys are errors.
inline void apply_config(RunConfig& cfg, const ConfigFile& file) {
  using config_detail::to_u64;
  for (const auto& [k, v] : file.values) {
    if (k == "experiment") set_experiment(cfg, v);
    else if (k == "backend") cfg.backend = v;
    else if (k == "shots") cfg.shots = to_u64(k, v);
    else if (k == "runs") cfg.runs = static_cast<int>(to_u64(k, v));
    else if (k == "seed") cfg.seed = to_u64(k, v);
    else if (k == "n") cfg.mermin_n = static_cast<int>(to_u64(k, v));
    else if (k == "mode") {
      if (v == "per-term") cfg.mermin_mode = MerminMode::PerTerm;
      else if (v == "symmetric") cfg.mermin_mode = MerminMode::Symmetric;
      else throw ConfigError("mode: expected per-term or symmetric, got '" + v + "'");
    } else if (k == "inputs") {
      cfg.qft_inputs = text_detail::split_ws(std::string(v));
    } else if (k == "noise") {
      if (v != "ideal") throw ConfigError("noise: expected a block or 'ideal'");
      cfg.noise.reset();
    } else if (k == "out") cfg.out = v;
    else if (k == "format") cfg.format = parse_format(v);
    else throw ConfigError("unknown config key '" + k + "'");
  }
  if (file.noise) cfg.noise = file.noise;
}

inline std::string default_backend(const std::string& experiment) {
  return experiment == "mermin" ? "ibmqx2" : "ibmqx4";
}

/// Backend name or coupling-map file; "all-to-all" disables routing.
inline Device make_device(const RunConfig& cfg) {
  Device d;
  const auto name = cfg.backend.empty() ? default_backend(cfg.experiment) : cfg.backend;
  if (name != "all-to-all") d.coupling = resolve_backend(name);
  if (cfg.noise) d.noise = *cfg.noise;
  return d;
}

inline ExperimentReport run(const RunConfig& cfg) {
  cfg.check();
  RunSettings s;
  s.shots = cfg.shots;
  s.runs = cfg.runs;
  s.seed = cfg.seed;
  s.device = make_device(cfg);
  if (cfg.experiment == "dense-coding") return dense_coding_report(s);
  if (cfg.experiment == "qft") return qft_report(s, cfg.qft_inputs);
  if (cfg.experiment == "bell") return bell_report(s);
  if (cfg.experiment == "mermin") return mermin_test(cfg.mermin_n, cfg.mermin_mode, s);
  return prime_state_report(s);
}

inline std::string render(const ExperimentReport& r, OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return report_to_json_string(r);
    case OutputFormat::Csv: return report_to_csv(r);
    default: return report_to_table(r);
  }
}

// ---------------------------------------------------------------------------
// Fit targets on disk: <name>.circ holds a measured circuit and <name>.dist
// the observed outcome frequencies as "<key> <frequency>" lines.

inline std::vector<double> parse_distribution(const std::string& text, int num_bits) {
  std::vector<double> dist(std::size_t{1} << num_bits, 0.0);
  std::istringstream in(config_detail::strip_comments(text));
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto tok = text_detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2 || static_cast<int>(tok[0].size()) != num_bits)
      throw ParseError(line_no, "expected '<" + std::to_string(num_bits) + "-bit key> <frequency>'");
    const auto f = text_detail::parse_double(tok[1]);
    if (!f || *f < 0.0 || *f > 1.0) throw ParseError(line_no, "bad frequency '" + tok[1] + "'");
    dist[bitstring_index(tok[0])] = *f;
  }
  return dist;
}

inline std::vector<FitTarget> load_fit_targets(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::runtime_error("'" + dir + "' is not a directory");
  std::vector<fs::path> circuits;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".circ") circuits.push_back(e.path());
  std::sort(circuits.begin(), circuits.end());
  if (circuits.empty()) throw std::runtime_error("no .circ files in '" + dir + "'");
  std::vector<FitTarget> targets;
  for (const auto& p : circuits) {
    FitTarget t{p.stem().string(), load_circuit(p.string()), {}};
    auto dist_path = p;
    dist_path.replace_extension(".dist");
    try {
      t.observed = parse_distribution(read_text_file(dist_path.string()),
                                      static_cast<int>(t.circuit.measurements().size()));
    } catch (const ParseError& e) {
      throw std::runtime_error(dist_path.string() + ": " + e.what());
    }
    targets.push_back(std::move(t));
  }
  return targets;
}

inline NoiseGrid default_noise_grid() {
  return {{0.0, 0.005, 0.01, 0.02, 0.03},
          {0.0, 0.02, 0.04, 0.06, 0.08},
          {0.0, 0.02, 0.04, 0.06, 0.08}};
}

}  // namespace fiveq
