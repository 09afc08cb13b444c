#pragma once

// Correlation measures of a two-qubit state: mutual information, classical
// correlation under rank-1 projective measurements on one qubit, quantum
// discord and Wootters concurrence. Entropies are in bits.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>

#include "xxz/linalg.hpp"
#include "xxz/models.hpp"

namespace xxz {

/// Rank-1 projective measurement on a single qubit,
///   |psi1> = cos(theta)|0> + e^{i phi} sin(theta)|1>
///   |psi2> = e^{-i phi} sin(theta)|0> - cos(theta)|1>
/// with theta in [0, pi/2] and phi in [0, 2 pi) once normalized.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  std::array<Complex, 2> psi1() const {
    return {Complex(std::cos(theta)), std::polar(std::sin(theta), phi)};
  }
  std::array<Complex, 2> psi2() const {
    return {std::polar(std::sin(theta), -phi), Complex(-std::cos(theta))};
  }

  /// Same projector pair with theta in [0, pi/2] and phi in [0, 2 pi).
  MeasurementBasis normalized() const {
    const double s2 = std::sin(2.0 * theta);
    const double nx = s2 * std::cos(phi);
    const double ny = s2 * std::sin(phi);
    const double nz = std::clamp(std::cos(2.0 * theta), -1.0, 1.0);
    MeasurementBasis b;
    b.theta = 0.5 * std::acos(nz);
    b.phi = std::atan2(ny, nx);
    if (b.phi < 0.0) b.phi += 2.0 * std::numbers::pi;
    if (b.phi >= 2.0 * std::numbers::pi) b.phi = 0.0;
    return b;
  }
};

inline Matrix2 outer(const std::array<Complex, 2>& v) {
  Matrix2 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

/// Two-qubit projectors {1 (x) |psi_i><psi_i|} (or the mirror image when
/// measuring qubit A).
inline std::array<Matrix4, 2> measurement_projectors(const MeasurementBasis& basis,
                                                     Subsystem measured = Subsystem::B) {
  const Matrix2 p1 = outer(basis.psi1());
  const Matrix2 p2 = outer(basis.psi2());
  const Matrix2 id = Matrix2::identity();
  if (measured == Subsystem::B) return {tensor_product(id, p1), tensor_product(id, p2)};
  return {tensor_product(p1, id), tensor_product(p2, id)};
}

inline double mutual_information(const DensityMatrix4& rho) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::A)) +
         von_neumann_entropy(partial_trace(rho, Subsystem::B)) - von_neumann_entropy(rho);
}

inline constexpr double kOutcomeProbabilityCutoff = 1e-14;

/// sum_i p_i S(rho_i) where rho_i is the post-measurement state of the
/// unmeasured qubit. Outcomes with p_i < 1e-14 contribute nothing.
inline double conditional_entropy(const DensityMatrix4& rho, const MeasurementBasis& basis,
                                  Subsystem measured = Subsystem::B) {
  double s = 0.0;
  for (const Matrix4& proj : measurement_projectors(basis, measured)) {
    const Matrix4 post = proj * rho.matrix() * proj;
    const double p = post.trace().real();
    if (p < kOutcomeProbabilityCutoff) continue;
    const Matrix2 reduced = detail::partial_trace_raw(post, other(measured)) * (1.0 / p);
    const auto eig = herm_eigen(HermitianMatrix2(hermitian_part(reduced), unchecked));
    s += p * entropy_bits(eig.values);
  }
  return s;
}

/// Grid + compass-search settings for the measurement optimization.
struct OptimizerSettings {
  int grid_theta = 33;  // points over [0, pi/2], endpoints included
  int grid_phi = 65;    // points over [phi_offset, phi_offset + 2 pi)
  double phi_offset = 0.0;
  double initial_step = std::numbers::pi / 32.0;
  double final_step = 1e-7;
  double min_improvement = 1e-11;
};

struct ClassicalCorrelation {
  double value = 0.0;
  MeasurementBasis basis;
  std::int64_t evaluations = 0;
};

/// max over projective bases on `measured` of S(rho_other) - conditional_entropy.
///
/// A coarse theta x phi grid picks the starting point; a compass search
/// then moves to the best of the four axis neighbours while that improves
/// the objective by more than `min_improvement`, halving the step otherwise,
/// until the step drops below `final_step`.
inline ClassicalCorrelation classical_correlation(const DensityMatrix4& rho,
                                                  const OptimizerSettings& settings = {},
                                                  Subsystem measured = Subsystem::B) {
  const double s_other = von_neumann_entropy(partial_trace(rho, other(measured)));
  ClassicalCorrelation out;
  auto objective = [&](double theta, double phi) {
    ++out.evaluations;
    return s_other - conditional_entropy(rho, {theta, phi}, measured);
  };

  const double dtheta = (std::numbers::pi / 2.0) / static_cast<double>(settings.grid_theta - 1);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(settings.grid_phi);
  double best = -std::numeric_limits<double>::infinity();
  double theta = 0.0, phi = settings.phi_offset;
  for (int i = 0; i < settings.grid_theta; ++i) {
    const double t = dtheta * i;
    for (int j = 0; j < settings.grid_phi; ++j) {
      const double f = settings.phi_offset + dphi * j;
      const double v = objective(t, f);
      if (v > best) {
        best = v;
        theta = t;
        phi = f;
      }
    }
  }

  for (double h = settings.initial_step; h >= settings.final_step;) {
    constexpr std::array<std::array<int, 2>, 4> moves{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    double step_best = best;
    double nt = theta, np = phi;
    for (const auto& m : moves) {
      const double t = theta + m[0] * h;
      const double f = phi + m[1] * h;
      const double v = objective(t, f);
      if (v > best + settings.min_improvement && v > step_best) {
        step_best = v;
        nt = t;
        np = f;
      }
    }
    if (step_best > best) {
      best = step_best;
      theta = nt;
      phi = np;
    } else {
      h *= 0.5;
    }
  }

  out.value = best;
  out.basis = MeasurementBasis{theta, phi}.normalized();
  return out;
}

/// C = max(0, l1 - l2 - l3 - l4), l_i the descending square roots of the
/// eigenvalues of rho (Y(x)Y) rho* (Y(x)Y). Those are the eigenvalues of the
/// Hermitian sqrt(rho) rho~ sqrt(rho), which is what gets diagonalized.
inline double concurrence_wootters(const DensityMatrix4& rho) {
  const Matrix4 yy = tensor_product(pauli::y(), pauli::y());
  const Matrix4 flipped = yy * rho.matrix().conjugate() * yy;
  const auto eig = herm_eigen(rho.hermitian());
  const Matrix4 root = spectral_map(eig, [](double x) { return std::sqrt(std::max(0.0, x)); });
  const Matrix4 r = root * flipped * root;
  const auto mu = herm_eigen(HermitianMatrix4(hermitian_part(r), unchecked));
  std::array<double, 4> l{};
  for (std::size_t i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, mu.values[i]));
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline constexpr double kDiscordClampWindow = 1e-9;

struct CorrelationReport {
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  double quantum_discord = 0.0;      // clamped to 0 when in [-1e-9, 0)
  double quantum_discord_raw = 0.0;  // mutual_information - classical_correlation
  double concurrence = 0.0;          // Wootters
  MeasurementBasis optimal_basis;
  std::int64_t optimizer_evals = 0;
  Subsystem measured = Subsystem::B;
};

inline CorrelationReport quantum_discord(const DensityMatrix4& rho, const OptimizerSettings& settings = {},
                                         Subsystem measured = Subsystem::B) {
  CorrelationReport r;
  r.measured = measured;
  r.mutual_information = mutual_information(rho);
  const auto cc = classical_correlation(rho, settings, measured);
  r.classical_correlation = cc.value;
  r.optimal_basis = cc.basis;
  r.optimizer_evals = cc.evaluations;
  r.quantum_discord_raw = r.mutual_information - r.classical_correlation;
  r.quantum_discord = r.quantum_discord_raw;
  if (r.quantum_discord < 0.0 && r.quantum_discord >= -kDiscordClampWindow) r.quantum_discord = 0.0;
  r.concurrence = concurrence_wootters(rho);
  return r;
}

/// Full report for the closed-form thermal state of `p`.
inline CorrelationReport thermal_report(const ModelParams& p, const OptimizerSettings& settings = {}) {
  return quantum_discord(thermal_state(p), settings);
}

inline constexpr double kCriticalSearchLow = 1e-2;
inline constexpr double kCriticalSearchWidth = 1e-6;

enum class CriticalStatus { Found, PositiveThroughout, ZeroThroughout, InvalidInterval };

inline std::string_view to_string(CriticalStatus s) {
  switch (s) {
    case CriticalStatus::Found: return "found";
    case CriticalStatus::PositiveThroughout: return "positive_throughout";
    case CriticalStatus::ZeroThroughout: return "zero_throughout";
    case CriticalStatus::InvalidInterval: return "invalid_interval";
  }
  return "unknown";
}

struct CriticalTemperature {
  std::optional<double> value;
  CriticalStatus status = CriticalStatus::InvalidInterval;
};

/// Temperature above which the Wootters concurrence of the thermal state is
/// exactly zero, bracketed in [1e-2, T_hi] and bisected to width 1e-6. The
/// returned value is the upper end of the final bracket, where the
/// concurrence is already 0.
inline CriticalTemperature critical_temperature(ModelParams p, double T_hi) {
  if (!(T_hi > kCriticalSearchLow)) return {std::nullopt, CriticalStatus::InvalidInterval};
  auto concurrence_at = [&](double T) {
    p.T = T;
    return concurrence_wootters(thermal_state(p));
  };
  double lo = kCriticalSearchLow, hi = T_hi;
  if (!(concurrence_at(lo) > 0.0)) return {std::nullopt, CriticalStatus::ZeroThroughout};
  if (concurrence_at(hi) > 0.0) return {std::nullopt, CriticalStatus::PositiveThroughout};
  while (hi - lo > kCriticalSearchWidth) {
    const double mid = 0.5 * (lo + hi);
    if (concurrence_at(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return {hi, CriticalStatus::Found};
}

}  // namespace xxz
