#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiveq/noise.hpp"
#include "json.hpp"

namespace fiveq {

inline constexpr int kReportSchemaVersion = 1;

struct ValueWithError {
  double value = 0.0;
  double std = 0.0;
};

/// Arithmetic mean and (n-1)-denominator sample standard deviation. A single
/// value has std 0.
inline ValueWithError aggregate(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("aggregate: no values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

/// Sum of independent signed terms; variances add.
inline ValueWithError error_propagation(const std::vector<ValueWithError>& terms) {
  ValueWithError out;
  double var = 0.0;
  for (const auto& t : terms) {
    out.value += t.value;
    var += t.std * t.std;
  }
  out.std = std::sqrt(var);
  return out;
}

/// |P(a,b) - P(a,c)| - P(b,c) with independent errors.
inline ValueWithError bell_statistic(ValueWithError ab, ValueWithError ac, ValueWithError bc) {
  const double s = ab.value - ac.value >= 0.0 ? 1.0 : -1.0;
  return error_propagation({{s * ab.value, ab.std}, {-s * ac.value, ac.std}, {-bc.value, bc.std}});
}

struct ReportEntry {
  std::string name;
  double mean = 0.0;
  double std = 0.0;
  std::optional<double> ideal;
  std::optional<double> reference;
  std::optional<double> reference_std;

  friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

/// Per-experiment summary: mean and spread of every quantity over runs.
struct ExperimentReport {
  std::string experiment;
  std::string backend;
  std::optional<NoiseModel> noise;  // nullopt = ideal
  std::uint64_t seed = 0;
  int runs = 1;
  std::uint64_t shots = 1;
  std::vector<ReportEntry> entries;
  std::map<std::string, bool> flags;
  std::vector<std::string> notes;

  const ReportEntry& entry(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e;
    throw std::out_of_range("report has no entry '" + name + "'");
  }
  bool has_entry(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return true;
    return false;
  }

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

// ---------------------------------------------------------------------------
// JSON

using Json = nlohmann::ordered_json;

namespace json_detail {
inline Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
inline std::optional<double> opt_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}
}  // namespace json_detail

inline Json report_to_json(const ExperimentReport& r) {
  using json_detail::opt;
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["experiment"] = r.experiment;
  j["backend"] = r.backend;
  if (r.noise)
    j["noise"] = Json{{"p1", r.noise->p1}, {"p2", r.noise->p2}, {"p_read", r.noise->p_read}};
  else
    j["noise"] = "ideal";
  j["seed"] = r.seed;
  j["runs"] = r.runs;
  j["shots"] = r.shots;
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"name", e.name},
                           {"mean", e.mean},
                           {"std", e.std},
                           {"ideal", opt(e.ideal)},
                           {"reference", opt(e.reference)},
                           {"reference_std", opt(e.reference_std)}});
  j["entries"] = entries;
  Json flags = Json::object();
  for (const auto& [k, v] : r.flags) flags[k] = v;
  j["flags"] = flags;
  j["notes"] = r.notes;
  return j;
}

inline ExperimentReport report_from_json(const Json& j) {
  using json_detail::opt_from;
  const int version = j.at("schema_version").get<int>();
  if (version != kReportSchemaVersion)
    throw std::runtime_error("unsupported report schema_version " + std::to_string(version));
  ExperimentReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.backend = j.at("backend").get<std::string>();
  const auto& n = j.at("noise");
  if (n.is_object()) r.noise = NoiseModel(n.at("p1").get<double>(), n.at("p2").get<double>(), n.at("p_read").get<double>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.runs = j.at("runs").get<int>();
  r.shots = j.at("shots").get<std::uint64_t>();
  for (const auto& e : j.at("entries")) {
    ReportEntry re;
    re.name = e.at("name").get<std::string>();
    re.mean = e.at("mean").get<double>();
    re.std = e.at("std").get<double>();
    re.ideal = opt_from(e, "ideal");
    re.reference = opt_from(e, "reference");
    re.reference_std = opt_from(e, "reference_std");
    r.entries.push_back(std::move(re));
  }
  for (const auto& [k, v] : j.at("flags").items()) r.flags[k] = v.get<bool>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

inline std::string report_to_json_string(const ExperimentReport& r) { return report_to_json(r).dump(2) + "\n"; }

inline ExperimentReport report_from_json_string(const std::string& s) { return report_from_json(Json::parse(s)); }

// ---------------------------------------------------------------------------
// CSV and text tables

namespace format_detail {
inline std::string num(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}
inline std::string num_opt(const std::optional<double>& v, int prec = 4) { return v ? num(*v, prec) : ""; }
inline std::string pm(double mean, double std, int prec = 3) { return num(mean, prec) + "+-" + num(std, prec); }
inline std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }
}  // namespace format_detail

inline std::string report_to_csv(const ExperimentReport& r) {
  using namespace format_detail;
  std::ostringstream os;
  os << "name,mean,std,ideal,reference,reference_std\n";
  for (const auto& e : r.entries)
    os << e.name << ',' << num(e.mean, 6) << ',' << num(e.std, 6) << ',' << num_opt(e.ideal, 6) << ','
       << num_opt(e.reference, 6) << ',' << num_opt(e.reference_std, 6) << '\n';
  return os.str();
}

namespace format_detail {

// Grid with rows = inputs and columns = outcomes, for entries named
// "P[<in>-><out>]".
inline std::string outcome_grid(const ExperimentReport& r, const std::vector<std::string>& inputs,
                                const std::vector<std::string>& outcomes, const std::string& corner) {
  std::ostringstream os;
  const std::size_t w = 15;
  os << pad(corner, 8);
  for (const auto& o : outcomes) os << "| " << pad(o, w);
  os << '\n' << std::string(8 + outcomes.size() * (w + 2), '-') << '\n';
  for (const auto& in : inputs) {
    os << pad(in, 8);
    for (const auto& o : outcomes) {
      const auto name = "P[" + in + "->" + o + "]";
      std::string cell;
      if (r.has_entry(name)) {
        const auto& e = r.entry(name);
        cell = pm(e.mean, e.std);
        if (e.ideal && *e.ideal == 1.0) cell = "*" + cell;
      }
      os << "| " << pad(cell, w);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace format_detail

/// Human-readable table. Dense coding and QFT print the input x outcome
/// grid; every report also lists its scalar entries with reference values.
inline std::string report_to_table(const ExperimentReport& r) {
  using namespace format_detail;
  std::ostringstream os;
  os << r.experiment << " on " << r.backend << " ("
     << (r.noise ? "noise p1=" + num(r.noise->p1, 4) + " p2=" + num(r.noise->p2, 4) + " p_read=" +
                       num(r.noise->p_read, 4)
                 : std::string("ideal"))
     << "), " << r.runs << " runs x " << r.shots << " shots, seed " << r.seed << "\n\n";

  std::vector<std::string> inputs;
  std::vector<std::string> outcomes;
  std::vector<const ReportEntry*> scalars;
  for (const auto& e : r.entries) {
    if (e.name.rfind("P[", 0) == 0) {
      const auto arrow = e.name.find("->");
      const auto in = e.name.substr(2, arrow - 2);
      const auto out = e.name.substr(arrow + 2, e.name.size() - arrow - 3);
      if (std::find(inputs.begin(), inputs.end(), in) == inputs.end()) inputs.push_back(in);
      if (std::find(outcomes.begin(), outcomes.end(), out) == outcomes.end()) outcomes.push_back(out);
    } else {
      scalars.push_back(&e);
    }
  }
  if (!inputs.empty()) {
    std::sort(outcomes.begin(), outcomes.end());
    os << outcome_grid(r, inputs, outcomes, "in\\out") << "(* marks the ideal outcome)\n\n";
  }
  if (!scalars.empty()) {
    os << pad("quantity", 26) << pad("mean+-std", 22) << pad("ideal", 12) << "reference\n";
    os << std::string(72, '-') << '\n';
    for (const auto* e : scalars) {
      std::string reference = e->reference ? num(*e->reference, 3) : "";
      if (e->reference && e->reference_std) reference += "+-" + num(*e->reference_std, 3);
      os << pad(e->name, 26) << pad(pm(e->mean, e->std, 4), 22) << pad(num_opt(e->ideal, 4), 12) << reference << '\n';
    }
  }
  for (const auto& [k, v] : r.flags) os << k << ": " << (v ? "yes" : "no") << '\n';
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  return os.str();
}

}  // namespace fiveq
