#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.
//
//   point          one parameter set -> CorrelationReport as JSON
//   sweep          SweepSpec from flags and/or --config -> CSV
//   figure <id>    figure preset -> CSV
//   critical-temp  concurrence zero crossing in T
//   opposite       intervals where discord and concurrence move apart in D
//
// Exit codes: 0 ok, 1 numerical failure, 2 usage error. Errors go to the
// error stream prefixed with "error: ".

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "xxz/correlations.hpp"
#include "xxz/io.hpp"
#include "xxz/models.hpp"
#include "xxz/sweep.hpp"

namespace xxz {

namespace detail {

inline Axis parse_axis_flag(const std::string& s) {
  // name:start:stop:count
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw UsageError("axis '" + s + "' must look like name:start:stop:count");
  Axis a;
  a.name = parse_param(parts[0]);
  try {
    a.start = std::stod(parts[1]);
    a.stop = std::stod(parts[2]);
    a.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw UsageError("axis '" + s + "' has a non-numeric field");
  }
  return a;
}

inline std::pair<Param, double> parse_fixed_flag(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw UsageError("fixed value '" + s + "' must look like name=value");
  try {
    return {parse_param(s.substr(0, eq)), std::stod(s.substr(eq + 1))};
  } catch (const std::invalid_argument&) {
    throw UsageError("fixed value '" + s + "' is not numeric");
  }
}

// Writes to `path`, or to `fallback` when path is empty or "-".
template <typename F>
void with_output(const std::string& path, std::ostream& fallback, F&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(f);
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

struct PointOptions {
  std::string model = "dz";
  double J = 1.0;
  double Jz = 0.0;
  double D = 0.0;
  double T = 0.0;
};

inline void add_point_options(CLI::App* cmd, PointOptions& o, bool with_temperature) {
  cmd->add_option("--model", o.model, "dz or dx")->capture_default_str();
  cmd->add_option("--J", o.J, "XX/YY coupling")->capture_default_str();
  cmd->add_option("--Jz", o.Jz, "ZZ coupling")->capture_default_str();
  cmd->add_option("--D", o.D, "DM strength (Dz or Dx per model)")->capture_default_str();
  if (with_temperature) cmd->add_option("--T", o.T, "temperature")->required();
}

inline ModelParams to_params(const PointOptions& o) {
  return ModelParams{parse_model(o.model), o.J, o.Jz, o.D, o.T};
}

}  // namespace detail

inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal quantum discord of two-qubit XXZ chains with DM interaction"};
  app.name("xxzdiscord");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  unsigned threads = 0;

  detail::PointOptions point;
  std::string measure = "B";
  bool use_oracle = false;
  auto* point_cmd = app.add_subcommand("point", "full correlation report for one parameter set");
  detail::add_point_options(point_cmd, point, true);
  point_cmd->add_option("--measure", measure, "qubit measured for the classical correlation (A or B)")
      ->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  point_cmd->add_flag("--oracle", use_oracle, "build the state with the Gibbs oracle instead of the closed form");

  std::string config_path, out_path, provenance_path, model_flag, axis1_flag, axis2_flag;
  std::vector<std::string> fixed_flags, quantity_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
  sweep_cmd->add_option("--config", config_path, "JSON sweep config");
  sweep_cmd->add_option("--model", model_flag, "dz or dx");
  sweep_cmd->add_option("--fixed", fixed_flags, "fixed parameter, name=value (repeatable)");
  sweep_cmd->add_option("--axis1", axis1_flag, "outer axis, name:start:stop:count");
  sweep_cmd->add_option("--axis2", axis2_flag, "inner axis, name:start:stop:count");
  sweep_cmd->add_option("--quantities", quantity_flags, "quantities to evaluate")->delimiter(',');
  sweep_cmd->add_option("--out", out_path, "CSV output path (default stdout)");
  sweep_cmd->add_option("--provenance", provenance_path, "write spec echo and optimizer settings as JSON");
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

  std::string figure_id, figure_out;
  auto* figure_cmd = app.add_subcommand("figure", "regenerate a figure preset as CSV");
  figure_cmd->add_option("id", figure_id, "1a 1b 1c 2a 2b 3 4 5a 5b 6")->required();
  figure_cmd->add_option("--out", figure_out, "CSV output path (default stdout)");
  figure_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

  detail::PointOptions crit;
  double t_hi = 20.0;
  auto* crit_cmd = app.add_subcommand("critical-temp", "temperature where the concurrence reaches 0");
  detail::add_point_options(crit_cmd, crit, false);
  crit_cmd->add_option("--T-hi", t_hi, "upper end of the search bracket")->capture_default_str();

  detail::PointOptions opp;
  double d_min = 0.3, d_max = 1.2;
  int samples = 37;
  auto* opp_cmd = app.add_subcommand("opposite", "D intervals where discord and concurrence trend apart");
  detail::add_point_options(opp_cmd, opp, true);
  opp_cmd->add_option("--D-min", d_min)->capture_default_str();
  opp_cmd->add_option("--D-max", d_max)->capture_default_str();
  opp_cmd->add_option("--samples", samples, "number of D grid points")->capture_default_str();
  opp_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*point_cmd) {
      const ModelParams p = detail::to_params(point);
      if (!(p.T > 0.0)) throw UsageError("--T must be > 0");
      const DensityMatrix4 rho = use_oracle ? gibbs_oracle(hamiltonian(p), p.T) : thermal_state(p);
      const auto report = quantum_discord(rho, {}, measure == "A" ? Subsystem::A : Subsystem::B);
      json j = to_json(p);
      j.update(to_json(report));
      j["state"] = use_oracle ? "oracle" : "closed_form";
      if (p.model == Model::Dz) j["concurrence_closed"] = concurrence_closed_dz(p);
      out << j.dump(2) << '\n';
    } else if (*sweep_cmd) {
      SweepSpec spec;
      bool have_axis1 = false;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw UsageError("cannot read config '" + config_path + "'");
        json j;
        try {
          j = json::parse(f);
        } catch (const json::exception& e) {
          throw UsageError(std::string("malformed config: ") + e.what());
        }
        spec = spec_from_json(j);
        have_axis1 = j.contains("axis1");
      }
      if (!model_flag.empty()) spec.model = parse_model(model_flag);
      for (const auto& f : fixed_flags) {
        const auto [name, value] = detail::parse_fixed_flag(f);
        spec.fixed[name] = value;
      }
      if (!axis1_flag.empty()) {
        spec.axis1 = detail::parse_axis_flag(axis1_flag);
        have_axis1 = true;
      }
      if (!axis2_flag.empty()) spec.axis2 = detail::parse_axis_flag(axis2_flag);
      if (!quantity_flags.empty()) {
        spec.quantities.clear();
        for (const auto& q : quantity_flags) spec.quantities.push_back(parse_quantity(q));
      }
      if (!have_axis1) throw UsageError("sweep needs axis1 (from --axis1 or the config)");
      validate(spec);

      const SweepResult result = run_sweep(spec, threads);
      detail::with_output(out_path, out, [&](std::ostream& os) { write_csv(os, to_table(result)); });
      if (!provenance_path.empty())
        detail::with_output(provenance_path, out,
                            [&](std::ostream& os) { os << provenance_json(result).dump(2) << '\n'; });
    } else if (*figure_cmd) {
      const FigurePreset preset = figure_preset(figure_id);
      const Table table = run_figure(preset, threads);
      detail::with_output(figure_out, out, [&](std::ostream& os) { write_csv(os, table); });
    } else if (*crit_cmd) {
      ModelParams p = detail::to_params(crit);
      p.T = 1.0;
      if (!(t_hi > 0.0)) throw UsageError("--T-hi must be > 0");
      const auto tc = critical_temperature(p, t_hi);
      json j = to_json(p);
      j.erase("T");
      j["T_hi"] = t_hi;
      j["critical_temperature"] = tc.value ? json(*tc.value) : json(nullptr);
      j["status"] = to_string(tc.status);
      out << j.dump(2) << '\n';
    } else if (*opp_cmd) {
      const ModelParams p = detail::to_params(opp);
      if (!(p.T > 0.0)) throw UsageError("--T must be > 0");
      const auto scan = detect_opposite_tendency(p.model, p.J, p.Jz, d_min, d_max, p.T, samples, {}, threads);
      json intervals = json::array();
      for (const auto& iv : scan.intervals)
        intervals.push_back({{"d_start", iv.d_start},
                             {"d_end", iv.d_end},
                             {"discord_slope_sign", iv.discord_slope_sign},
                             {"concurrence_slope_sign", iv.concurrence_slope_sign}});
      json j = to_json(p);
      j.erase("D");
      j["intervals"] = intervals;
      j["D"] = scan.d;
      j["discord"] = scan.discord;
      j["concurrence"] = scan.concurrence;
      out << j.dump(2) << '\n';
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace xxz
