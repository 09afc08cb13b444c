#pragma once

// Parameter sweeps over the thermal states, the figure presets, and the
// opposite-tendency detector.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "xxz/correlations.hpp"
#include "xxz/errors.hpp"
#include "xxz/models.hpp"

namespace xxz {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Param { T, J, Jz, D };

inline std::string_view to_string(Param p) {
  switch (p) {
    case Param::T: return "T";
    case Param::J: return "J";
    case Param::Jz: return "J_z";
    case Param::D: return "D";
  }
  return "?";
}

inline Param parse_param(std::string_view s) {
  if (s == "T") return Param::T;
  if (s == "J") return Param::J;
  if (s == "J_z" || s == "Jz") return Param::Jz;
  if (s == "D") return Param::D;
  throw UsageError("unknown axis '" + std::string(s) + "' (expected T, J, J_z or D)");
}

enum class Quantity { Discord, ClassicalCorrelation, MutualInformation, Concurrence, ConcurrenceClosed };

inline std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::Discord: return "discord";
    case Quantity::ClassicalCorrelation: return "classical_correlation";
    case Quantity::MutualInformation: return "mutual_information";
    case Quantity::Concurrence: return "concurrence";
    case Quantity::ConcurrenceClosed: return "concurrence_closed";
  }
  return "?";
}

inline Quantity parse_quantity(std::string_view s) {
  for (auto q : {Quantity::Discord, Quantity::ClassicalCorrelation, Quantity::MutualInformation,
                 Quantity::Concurrence, Quantity::ConcurrenceClosed})
    if (s == to_string(q)) return q;
  throw UsageError("unknown quantity '" + std::string(s) + "'");
}

inline double& param_ref(ModelParams& p, Param which) {
  switch (which) {
    case Param::T: return p.T;
    case Param::J: return p.J;
    case Param::Jz: return p.Jz;
    case Param::D: return p.D;
  }
  return p.T;
}

inline constexpr double kMinSweepTemperature = 1e-2;

/// `count` equally spaced values from start to stop inclusive.
struct Axis {
  Param name = Param::T;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;

  double value(int i) const {
    if (i == count - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
};

struct SweepSpec {
  Model model = Model::Dz;
  std::map<Param, double> fixed;
  Axis axis1;
  std::optional<Axis> axis2;
  std::vector<Quantity> quantities{Quantity::Discord};
  OptimizerSettings optimizer;
};

inline void validate(const SweepSpec& spec) {
  auto check_axis = [](const Axis& a, std::string_view label) {
    if (a.count < 2) throw UsageError(std::string(label) + ": count must be >= 2");
    if (!(a.start < a.stop)) throw UsageError(std::string(label) + ": start must be < stop");
    if (a.name == Param::T && !(a.start >= kMinSweepTemperature))
      throw UsageError(std::string(label) + ": T axis must start at >= 0.01");
  };
  check_axis(spec.axis1, "axis1");
  if (spec.axis2) {
    check_axis(*spec.axis2, "axis2");
    if (spec.axis2->name == spec.axis1.name) throw UsageError("axis1 and axis2 sweep the same parameter");
  }
  const bool t_on_axis = spec.axis1.name == Param::T || (spec.axis2 && spec.axis2->name == Param::T);
  if (!t_on_axis) {
    auto it = spec.fixed.find(Param::T);
    if (it == spec.fixed.end()) throw UsageError("T must be fixed or swept");
    if (!(it->second > 0.0)) throw UsageError("fixed T must be > 0");
  }
  if (spec.quantities.empty()) throw UsageError("no quantities requested");
  for (auto q : spec.quantities)
    if (q == Quantity::ConcurrenceClosed && spec.model != Model::Dz)
      throw UsageError("concurrence_closed is only defined for the dz model");
}

struct SweepRow {
  std::vector<double> axes;
  std::vector<double> values;
};

struct Provenance {
  std::string version{kVersion};
  OptimizerSettings optimizer;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  Provenance provenance;
};

/// Requested quantities at one parameter point, in request order.
inline std::vector<double> evaluate_point(const ModelParams& p, const std::vector<Quantity>& quantities,
                                          const OptimizerSettings& settings = {}) {
  const DensityMatrix4 rho = thermal_state(p);
  std::optional<CorrelationReport> report;
  auto need_report = [&]() -> const CorrelationReport& {
    if (!report) report = quantum_discord(rho, settings);
    return *report;
  };
  std::vector<double> out;
  out.reserve(quantities.size());
  for (auto q : quantities) {
    switch (q) {
      case Quantity::Discord: out.push_back(need_report().quantum_discord); break;
      case Quantity::ClassicalCorrelation: out.push_back(need_report().classical_correlation); break;
      case Quantity::MutualInformation: out.push_back(mutual_information(rho)); break;
      case Quantity::Concurrence: out.push_back(concurrence_wootters(rho)); break;
      case Quantity::ConcurrenceClosed: out.push_back(concurrence_closed_dz(p)); break;
    }
  }
  return out;
}

/// Runs `work(i)` for i in [0, n) on up to `threads` workers (0 = all cores).
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& work) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          work(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// Evaluates every grid point, axis1 outer and axis2 inner.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0) {
  validate(spec);
  ModelParams base;
  base.model = spec.model;
  for (const auto& [name, value] : spec.fixed) param_ref(base, name) = value;

  const int n2 = spec.axis2 ? spec.axis2->count : 1;
  const std::size_t n = static_cast<std::size_t>(spec.axis1.count) * static_cast<std::size_t>(n2);

  SweepResult result;
  result.spec = spec;
  result.provenance.optimizer = spec.optimizer;
  result.rows.resize(n);
  parallel_for(n, threads, [&](std::size_t k) {
    const int i = static_cast<int>(k) / n2;
    const int j = static_cast<int>(k) % n2;
    ModelParams p = base;
    SweepRow& row = result.rows[k];
    row.axes.push_back(spec.axis1.value(i));
    param_ref(p, spec.axis1.name) = row.axes.back();
    if (spec.axis2) {
      row.axes.push_back(spec.axis2->value(j));
      param_ref(p, spec.axis2->name) = row.axes.back();
    }
    row.values = evaluate_point(p, spec.quantities, spec.optimizer);
    for (double v : row.values)
      if (!std::isfinite(v)) throw NumericalError("non-finite value in sweep row " + std::to_string(k));
  });
  return result;
}

/// Header + rows ready for CSV output.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline Table to_table(const SweepResult& r) {
  Table t;
  t.header.emplace_back(to_string(r.spec.axis1.name));
  if (r.spec.axis2) t.header.emplace_back(to_string(r.spec.axis2->name));
  for (auto q : r.spec.quantities) t.header.emplace_back(to_string(q));
  for (const auto& row : r.rows) {
    std::vector<double> line = row.axes;
    line.insert(line.end(), row.values.begin(), row.values.end());
    t.rows.push_back(std::move(line));
  }
  return t;
}

/// 12 significant digits, the CSV number format.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

// -- figure presets ----------------------------------------------------------

inline constexpr double kFigureTMin = 0.05;
inline constexpr double kFigureTMax = 3.0;
inline constexpr int kFigureTPoints = 60;
inline constexpr int kSurfaceDPoints = 40;

/// One figure: a T sweep with either a discrete family of curves (one
/// column per value of `curve_param`) or a second swept axis (surfaces).
struct FigurePreset {
  std::string id;
  SweepSpec sweep;
  std::optional<Param> curve_param;
  std::vector<double> curve_values;
};

inline std::vector<std::string> figure_ids() {
  return {"1a", "1b", "1c", "2a", "2b", "3", "4", "5a", "5b", "6"};
}

inline FigurePreset figure_preset(std::string_view id) {
  const Axis t_axis{Param::T, kFigureTMin, kFigureTMax, kFigureTPoints};
  const std::vector<double> dm_strengths{0.5, 0.7, 1.0};

  auto curves = [&](Model m, std::map<Param, double> fixed, Quantity q, Param curve, std::vector<double> values) {
    FigurePreset f;
    f.id = std::string(id);
    f.sweep.model = m;
    f.sweep.fixed = std::move(fixed);
    f.sweep.axis1 = t_axis;
    f.sweep.quantities = {q};
    f.curve_param = curve;
    f.curve_values = std::move(values);
    return f;
  };
  auto surface = [&](Model m) {
    FigurePreset f;
    f.id = std::string(id);
    f.sweep.model = m;
    f.sweep.fixed = {{Param::J, 1.0}, {Param::Jz, 0.2}};
    f.sweep.axis1 = t_axis;
    f.sweep.axis2 = Axis{Param::D, 0.0, 2.0, kSurfaceDPoints};
    f.sweep.quantities = {Quantity::Discord};
    return f;
  };

  if (id == "1a") return curves(Model::Dz, {{Param::J, 1.0}, {Param::Jz, 0.2}}, Quantity::Discord, Param::D, dm_strengths);
  if (id == "1b") return curves(Model::Dz, {{Param::J, 1.0}, {Param::Jz, 0.2}}, Quantity::Concurrence, Param::D, dm_strengths);
  if (id == "1c") return curves(Model::Dz, {{Param::J, 1.0}, {Param::Jz, 1.0}}, Quantity::Discord, Param::D, dm_strengths);
  if (id == "2a") return curves(Model::Dz, {{Param::J, 1.0}, {Param::D, 1.0}}, Quantity::Discord, Param::Jz, {1.0, 2.0, 3.0});
  if (id == "2b") return curves(Model::Dz, {{Param::J, 1.0}, {Param::D, 1.0}}, Quantity::Concurrence, Param::Jz, {1.0, 2.0, 3.0});
  if (id == "3") return surface(Model::Dz);
  if (id == "4") return curves(Model::Dx, {{Param::J, 1.0}, {Param::D, 1.0}}, Quantity::Discord, Param::Jz, {0.0, 0.4, 0.9});
  // Dx model; the curve family is D_x.
  if (id == "5a") return curves(Model::Dx, {{Param::J, 1.0}, {Param::Jz, 1.0}}, Quantity::Discord, Param::D, dm_strengths);
  if (id == "5b") return curves(Model::Dx, {{Param::J, 1.0}, {Param::Jz, 0.2}}, Quantity::Discord, Param::D, dm_strengths);
  if (id == "6") return surface(Model::Dx);

  std::string valid;
  for (const auto& v : figure_ids()) valid += (valid.empty() ? "" : ", ") + v;
  throw UsageError("unknown figure id '" + std::string(id) + "' (valid: " + valid + ")");
}

/// Curve label such as "D0.5" or "J_z1.0": the value always carries a decimal point.
inline std::string curve_label(Param p, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return std::string(to_string(p)) + s;
}

/// Runs a preset. Curve figures come out wide (T, then one column per curve);
/// surfaces come out long (T, D, value).
inline Table run_figure(const FigurePreset& f, unsigned threads = 0) {
  if (!f.curve_param) return to_table(run_sweep(f.sweep, threads));

  Table t;
  t.header.emplace_back(to_string(f.sweep.axis1.name));
  const Quantity q = f.sweep.quantities.front();
  std::vector<SweepResult> results;
  for (double v : f.curve_values) {
    SweepSpec s = f.sweep;
    s.fixed[*f.curve_param] = v;
    results.push_back(run_sweep(s, threads));
    t.header.push_back(std::string(to_string(q)) + "_" + curve_label(*f.curve_param, v));
  }
  for (int i = 0; i < f.sweep.axis1.count; ++i) {
    std::vector<double> line{f.sweep.axis1.value(i)};
    for (const auto& r : results) line.push_back(r.rows[static_cast<std::size_t>(i)].values.front());
    t.rows.push_back(std::move(line));
  }
  return t;
}

// -- opposite tendency -------------------------------------------------------

inline constexpr double kTendencySlopeThreshold = 1e-6;

/// A maximal run of D-grid segments on which discord and concurrence move in
/// strictly opposite directions, each slope above the threshold in magnitude.
struct TendencyInterval {
  double d_start = 0.0;
  double d_end = 0.0;
  int discord_slope_sign = 0;
  int concurrence_slope_sign = 0;
};

struct TendencyScan {
  std::vector<double> d;
  std::vector<double> discord;
  std::vector<double> concurrence;
  std::vector<TendencyInterval> intervals;
};

inline TendencyScan detect_opposite_tendency(Model model, double J, double Jz, double d_start, double d_stop,
                                             double T, int samples = 37, const OptimizerSettings& settings = {},
                                             unsigned threads = 0) {
  if (!(T > 0.0)) throw UsageError("T must be > 0");
  if (!(d_start < d_stop)) throw UsageError("D range must have start < stop");
  if (samples < 2) throw UsageError("need at least 2 D samples");

  const Axis axis{Param::D, d_start, d_stop, samples};
  TendencyScan scan;
  scan.d.resize(static_cast<std::size_t>(samples));
  scan.discord.resize(scan.d.size());
  scan.concurrence.resize(scan.d.size());
  parallel_for(scan.d.size(), threads, [&](std::size_t i) {
    ModelParams p{model, J, Jz, axis.value(static_cast<int>(i)), T};
    const auto report = thermal_report(p, settings);
    scan.d[i] = p.D;
    scan.discord[i] = report.quantum_discord;
    scan.concurrence[i] = report.concurrence;
  });

  auto sign = [](double x) { return x > kTendencySlopeThreshold ? 1 : (x < -kTendencySlopeThreshold ? -1 : 0); };
  for (std::size_t i = 0; i + 1 < scan.d.size(); ++i) {
    const double dd = scan.d[i + 1] - scan.d[i];
    const int sq = sign((scan.discord[i + 1] - scan.discord[i]) / dd);
    const int sc = sign((scan.concurrence[i + 1] - scan.concurrence[i]) / dd);
    if (sq == 0 || sc == 0 || sq == sc) continue;
    if (!scan.intervals.empty()) {
      auto& last = scan.intervals.back();
      if (last.d_end == scan.d[i] && last.discord_slope_sign == sq && last.concurrence_slope_sign == sc) {
        last.d_end = scan.d[i + 1];
        continue;
      }
    }
    scan.intervals.push_back({scan.d[i], scan.d[i + 1], sq, sc});
  }
  return scan;
}

}  // namespace xxz
