#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fiveq/circuit.hpp"

// Line-oriented circuit text format. See docs/circuit_format.md.
//
//   qubits 3
//   h 2
//   rz(pi/4) 0
//   cx 2 1
//   measure 1 -> c0 x

namespace fiveq {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace text_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<long> parse_int(std::string_view s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline double pi_fraction(long sign, long num, long den) {
  return static_cast<double>(sign) * static_cast<double>(num) * std::numbers::pi /
         static_cast<double>(den);
}

}  // namespace text_detail

/// Parses an angle: a decimal number of radians, or `[-][m*]pi[/d]`.
inline std::optional<double> parse_angle(std::string_view text) {
  using namespace text_detail;
  std::string_view s = trim(text);
  const auto pos = s.find("pi");
  if (pos == std::string_view::npos) return parse_double(s);

  long sign = 1;
  std::string_view head = s.substr(0, pos);
  std::string_view tail = s.substr(pos + 2);
  if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
    if (head.front() == '-') sign = -1;
    head.remove_prefix(1);
  }
  long num = 1;
  if (!head.empty()) {
    if (head.back() != '*') return std::nullopt;
    head.remove_suffix(1);
    auto m = parse_int(head);
    if (!m || *m < 0) return std::nullopt;
    num = *m;
  }
  long den = 1;
  if (!tail.empty()) {
    if (tail.front() != '/') return std::nullopt;
    tail.remove_prefix(1);
    auto d = parse_int(tail);
    if (!d || *d <= 0) return std::nullopt;
    den = *d;
  }
  return pi_fraction(sign, num, den);
}

/// Text for an angle that parses back to the same double: `m*pi/d` when the
/// angle is bit-identical to that fraction, else 17 significant digits.
inline std::string format_angle(double angle) {
  if (angle == 0.0) return "0";
  // Small denominators, then powers of two for the QFT-style angles.
  for (long den = 1; den <= 4096; den = den < 64 ? den + 1 : den * 2) {
    const double m = std::round(std::abs(angle) * static_cast<double>(den) / std::numbers::pi);
    if (m < 1.0 || m > 64.0 * static_cast<double>(den)) continue;
    const long num = static_cast<long>(m);
    const long sign = angle < 0 ? -1 : 1;
    if (text_detail::pi_fraction(sign, num, den) != angle) continue;
    std::string out = sign < 0 ? "-" : "";
    if (num != 1) out += std::to_string(num) + "*";
    out += "pi";
    if (den != 1) out += "/" + std::to_string(den);
    return out;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", angle);
  return buf;
}

inline Circuit parse_circuit(std::string_view text) {
  using namespace text_detail;
  std::optional<Circuit> circuit;
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line(trim(raw));
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    for (auto& c : line) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    auto qubit_arg = [&](const std::string& tok) {
      auto v = parse_int(tok);
      if (!v) throw ParseError(line_no, "expected a qubit index, got '" + tok + "'");
      return static_cast<int>(*v);
    };

    // Gate-level validation errors from Circuit carry no line number; rewrap.
    auto guarded = [&](auto&& fn) {
      try {
        fn();
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(line_no, e.what());
      }
    };

    auto toks = split_ws(line);
    const std::string& op = toks[0];

    if (op == "qubits") {
      if (circuit) throw ParseError(line_no, "duplicate 'qubits' header");
      if (toks.size() != 2) throw ParseError(line_no, "usage: qubits <n>");
      auto n = parse_int(toks[1]);
      if (!n) throw ParseError(line_no, "bad qubit count '" + toks[1] + "'");
      guarded([&] { circuit.emplace(static_cast<int>(*n)); });
      continue;
    }
    if (!circuit) throw ParseError(line_no, "missing 'qubits <n>' header before '" + op + "'");

    if (op == "measure") {
      // measure <q> -> c<k> [basis]
      if (toks.size() < 4 || toks.size() > 5 || toks[2] != "->")
        throw ParseError(line_no, "usage: measure <q> -> c<k> [z|x|y]");
      const int q = qubit_arg(toks[1]);
      if (toks[3].size() < 2 || toks[3][0] != 'c')
        throw ParseError(line_no, "classical bit must look like c<k>, got '" + toks[3] + "'");
      auto k = parse_int(std::string_view(toks[3]).substr(1));
      if (!k) throw ParseError(line_no, "bad classical bit '" + toks[3] + "'");
      Basis basis = Basis::Z;
      if (toks.size() == 5) {
        if (toks[4] == "z") basis = Basis::Z;
        else if (toks[4] == "x") basis = Basis::X;
        else if (toks[4] == "y") basis = Basis::Y;
        else throw ParseError(line_no, "unknown measurement basis '" + toks[4] + "'");
      }
      guarded([&] { circuit->measure(q, static_cast<int>(*k), basis); });
      continue;
    }

    if (op.rfind("rz(", 0) == 0) {
      const auto close = op.find(')');
      if (close == std::string::npos || close + 1 != op.size())
        throw ParseError(line_no, "malformed rotation '" + op + "'");
      auto angle = parse_angle(std::string_view(op).substr(3, close - 3));
      if (!angle) throw ParseError(line_no, "bad angle in '" + op + "'");
      if (toks.size() != 2) throw ParseError(line_no, "usage: rz(<angle>) <q>");
      const int q = qubit_arg(toks[1]);
      guarded([&] { circuit->add(gates::rz(q, *angle)); });
      continue;
    }

    if (op == "cx") {
      if (toks.size() != 3) throw ParseError(line_no, "usage: cx <control> <target>");
      const int c = qubit_arg(toks[1]);
      const int t = qubit_arg(toks[2]);
      guarded([&] { circuit->add(gates::cx(c, t)); });
      continue;
    }

    static constexpr std::pair<std::string_view, GateKind> kSingle[] = {
        {"h", GateKind::H}, {"x", GateKind::X},     {"y", GateKind::Y},
        {"z", GateKind::Z}, {"s", GateKind::S},     {"sdg", GateKind::Sdg},
        {"t", GateKind::T}, {"tdg", GateKind::Tdg},
    };
    bool matched = false;
    for (const auto& [name, kind] : kSingle) {
      if (op != name) continue;
      if (toks.size() != 2) throw ParseError(line_no, "usage: " + op + " <q>");
      const int q = qubit_arg(toks[1]);
      guarded([&] { circuit->add(gates::single(kind, q)); });
      matched = true;
      break;
    }
    if (!matched) throw ParseError(line_no, "unknown gate '" + op + "'");
  }
  if (!circuit) throw ParseError(std::max(line_no, 1), "empty circuit text (no 'qubits' header)");
  return *circuit;
}

inline std::string serialize_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.num_qubits() << '\n';
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::Rz)
      os << "rz(" << format_angle(g.angle) << ") " << g.qubit() << '\n';
    else if (g.kind == GateKind::CX)
      os << "cx " << g.control() << ' ' << g.target() << '\n';
    else
      os << gate_name(g.kind) << ' ' << g.qubit() << '\n';
  }
  for (const auto& m : c.measurements())
    os << "measure " << m.qubit << " -> c" << m.cbit << ' ' << basis_letter(m.basis) << '\n';
  return os.str();
}

inline Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

}  // namespace fiveq
