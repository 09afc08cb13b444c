#pragma once

// JSON encodings of reports and sweep configs. Config files mirror
// the SweepSpec field names:
//
//   {"model": "dz", "fixed": {"J": 1, "J_z": 0.2, "D": 1},
//    "axis1": {"name": "T", "start": 0.1, "stop": 3, "count": 30},
//    "axis2": {"name": "D", "start": 0, "stop": 2, "count": 20},
//    "quantities": ["discord", "concurrence"]}

#include <nlohmann/json.hpp>

#include "xxz/correlations.hpp"
#include "xxz/sweep.hpp"

namespace xxz {

using json = nlohmann::json;

inline json to_json(const OptimizerSettings& s) {
  return {{"grid_theta", s.grid_theta},     {"grid_phi", s.grid_phi},
          {"phi_offset", s.phi_offset},     {"initial_step", s.initial_step},
          {"final_step", s.final_step},     {"min_improvement", s.min_improvement}};
}

inline json to_json(const ModelParams& p) {
  return {{"model", to_string(p.model)}, {"J", p.J}, {"J_z", p.Jz}, {"D", p.D}, {"T", p.T}};
}

inline json to_json(const CorrelationReport& r) {
  return {{"mutual_information", r.mutual_information},
          {"classical_correlation", r.classical_correlation},
          {"quantum_discord", r.quantum_discord},
          {"quantum_discord_raw", r.quantum_discord_raw},
          {"concurrence", r.concurrence},
          {"optimal_basis", {{"theta_m", r.optimal_basis.theta}, {"phi_m", r.optimal_basis.phi}}},
          {"optimizer_evals", r.optimizer_evals},
          {"measured", r.measured == Subsystem::A ? "A" : "B"}};
}

inline json to_json(const Axis& a) {
  return {{"name", to_string(a.name)}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}};
}

inline json to_json(const SweepSpec& s) {
  json fixed = json::object();
  for (const auto& [k, v] : s.fixed) fixed[std::string(to_string(k))] = v;
  json q = json::array();
  for (auto x : s.quantities) q.push_back(to_string(x));
  json j{{"model", to_string(s.model)}, {"fixed", fixed}, {"axis1", to_json(s.axis1)}, {"quantities", q}};
  if (s.axis2) j["axis2"] = to_json(*s.axis2);
  return j;
}

inline json provenance_json(const SweepResult& r) {
  return {{"spec", to_json(r.spec)},
          {"version", r.provenance.version},
          {"optimizer", to_json(r.provenance.optimizer)},
          {"rows", r.rows.size()}};
}

inline Axis axis_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("axis must be an object");
  Axis a;
  a.name = parse_param(j.at("name").get<std::string>());
  a.start = j.at("start").get<double>();
  a.stop = j.at("stop").get<double>();
  a.count = j.at("count").get<int>();
  return a;
}

/// Parses a config; fields not present keep their values in `base`.
inline SweepSpec spec_from_json(const json& j, SweepSpec base = {}) {
  try {
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [key, _] : j.items())
      if (key != "model" && key != "fixed" && key != "axis1" && key != "axis2" && key != "quantities")
        throw UsageError("unknown config field '" + key + "'");
    if (j.contains("model")) base.model = parse_model(j["model"].get<std::string>());
    if (j.contains("fixed")) {
      if (!j["fixed"].is_object()) throw UsageError("fixed must be an object");
      for (const auto& [k, v] : j["fixed"].items()) base.fixed[parse_param(k)] = v.get<double>();
    }
    if (j.contains("axis1")) base.axis1 = axis_from_json(j["axis1"]);
    if (j.contains("axis2")) base.axis2 = axis_from_json(j["axis2"]);
    if (j.contains("quantities")) {
      base.quantities.clear();
      for (const auto& q : j["quantities"]) base.quantities.push_back(parse_quantity(q.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  return base;
}

}  // namespace xxz
