#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fiveq/circuit_text.hpp"

#ifndef FIVEQ_DATA_DIR
#define FIVEQ_DATA_DIR "data"
#endif

namespace fiveq {

/// Directed two-qubit connectivity: an edge (c, t) means a native CX with
/// control c and target t exists.
class CouplingMap {
 public:
  using Edge = std::pair<int, int>;

  CouplingMap() = default;
  explicit CouplingMap(int num_qubits, std::string name = {})
      : num_qubits_(num_qubits), name_(std::move(name)) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
      throw std::invalid_argument("coupling map width out of range");
  }

  CouplingMap& add_edge(int control, int target) {
    if (control < 0 || control >= num_qubits_ || target < 0 || target >= num_qubits_)
      throw std::out_of_range("edge " + std::to_string(control) + "->" + std::to_string(target) +
                              " out of range");
    if (control == target) throw std::invalid_argument("self-loop edge on qubit " + std::to_string(control));
    edges_.insert({control, target});
    return *this;
  }

  int num_qubits() const { return num_qubits_; }
  const std::string& name() const { return name_; }
  const std::set<Edge>& edges() const { return edges_; }

  bool has_edge(int control, int target) const { return edges_.count({control, target}) > 0; }
  bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

  std::vector<int> neighbors(int q) const {
    std::vector<int> out;
    for (int p = 0; p < num_qubits_; ++p)
      if (p != q && adjacent(q, p)) out.push_back(p);
    return out;
  }

  /// Undirected BFS path from a to b (inclusive). Neighbours are expanded in
  /// increasing index order, so ties go to the lowest-index path.
  std::optional<std::vector<int>> shortest_path(int from, int to) const {
    std::vector<int> parent(static_cast<std::size_t>(num_qubits_), -1);
    std::vector<bool> seen(static_cast<std::size_t>(num_qubits_), false);
    std::queue<int> frontier;
    frontier.push(from);
    seen[static_cast<std::size_t>(from)] = true;
    while (!frontier.empty()) {
      const int q = frontier.front();
      frontier.pop();
      if (q == to) break;
      for (int p : neighbors(q)) {
        if (seen[static_cast<std::size_t>(p)]) continue;
        seen[static_cast<std::size_t>(p)] = true;
        parent[static_cast<std::size_t>(p)] = q;
        frontier.push(p);
      }
    }
    if (!seen[static_cast<std::size_t>(to)]) return std::nullopt;
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(parent[static_cast<std::size_t>(path.back())]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  bool is_connected() const {
    for (int q = 1; q < num_qubits_; ++q)
      if (!shortest_path(0, q)) return false;
    return true;
  }

  friend bool operator==(const CouplingMap& a, const CouplingMap& b) {
    return a.num_qubits_ == b.num_qubits_ && a.edges_ == b.edges_;
  }

 private:
  int num_qubits_ = 1;
  std::string name_;
  std::set<Edge> edges_;
};

/// Parses `qubits <n>` followed by `edge <control> <target>` lines.
inline CouplingMap parse_coupling_map(std::string_view text, std::string name = {}) {
  using namespace text_detail;
  std::optional<CouplingMap> map;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    try {
      if (toks[0] == "qubits" && toks.size() == 2) {
        if (map) throw ParseError(line_no, "duplicate 'qubits' header");
        auto n = parse_int(toks[1]);
        if (!n) throw ParseError(line_no, "bad qubit count '" + toks[1] + "'");
        map.emplace(static_cast<int>(*n), name);
      } else if (toks[0] == "edge" && toks.size() == 3) {
        if (!map) throw ParseError(line_no, "missing 'qubits <n>' header");
        auto c = parse_int(toks[1]);
        auto t = parse_int(toks[2]);
        if (!c || !t) throw ParseError(line_no, "bad edge endpoints");
        map->add_edge(static_cast<int>(*c), static_cast<int>(*t));
      } else {
        throw ParseError(line_no, "expected 'qubits <n>' or 'edge <control> <target>'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!map) throw ParseError(line_no, "coupling map has no 'qubits' header");
  return *map;
}

inline std::string serialize_coupling_map(const CouplingMap& map) {
  std::ostringstream os;
  os << "qubits " << map.num_qubits() << '\n';
  for (const auto& [c, t] : map.edges()) os << "edge " << c << ' ' << t << '\n';
  return os.str();
}

inline CouplingMap load_coupling_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coupling map '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_coupling_map(ss.str(), path.stem().string());
}

/// Directory holding the bundled backend files. FIVEQ_DATA_DIR in the
/// environment takes precedence over the compiled-in location.
inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("FIVEQ_DATA_DIR"); env && *env) return env;
  return FIVEQ_DATA_DIR;
}

inline const std::vector<std::string>& builtin_map_names() {
  static const std::vector<std::string> names{"ibmqx2", "ibmqx4"};
  return names;
}

inline CouplingMap builtin_map(const std::string& name) {
  const auto& names = builtin_map_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown backend '" + name + "'");
  return load_coupling_map(data_dir() / "backends" / (name + ".map"));
}

/// A builtin name, or else a path to a coupling-map file.
inline CouplingMap resolve_backend(const std::string& name_or_path) {
  const auto& names = builtin_map_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end())
    return builtin_map(name_or_path);
  if (std::filesystem::exists(name_or_path)) return load_coupling_map(name_or_path);
  throw std::invalid_argument("unknown backend '" + name_or_path +
                              "' (not a builtin name or a readable file)");
}

}  // namespace fiveq
