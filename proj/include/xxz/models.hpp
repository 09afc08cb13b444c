#pragma once

// Two-qubit anisotropic Heisenberg XXZ chain with a Dzyaloshinskii-Moriya
// term along z (Dz model) or along x (Dx model):
//
//   H  = J(XX + YY) + Jz ZZ + Dz (XY - YX)
//   H' = J(XX + YY) + Jz ZZ + Dx (YZ - ZY)
//
// Thermal states are built two ways: from closed-form matrix elements and
// from an eigendecomposition of H (the Gibbs oracle). The oracle is the
// reference; the closed forms are what the sweeps use.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

#include "xxz/errors.hpp"
#include "xxz/linalg.hpp"

namespace xxz {

enum class Model { Dz, Dx };

inline std::string_view to_string(Model m) { return m == Model::Dz ? "dz" : "dx"; }

inline Model parse_model(std::string_view s) {
  if (s == "dz" || s == "Dz" || s == "DZ") return Model::Dz;
  if (s == "dx" || s == "Dx" || s == "DX") return Model::Dx;
  throw UsageError("unknown model '" + std::string(s) + "' (expected dz or dx)");
}

/// Couplings and temperature (k_B = 1). `D` is Dz or Dx depending on `model`.
struct ModelParams {
  Model model = Model::Dz;
  double J = 1.0;
  double Jz = 0.0;
  double D = 0.0;
  double T = 1.0;

  double beta() const { return 1.0 / T; }
};

inline void require_positive_temperature(double T) {
  if (!(T > 0.0)) throw DomainError("temperature must be > 0, got " + std::to_string(T));
}

inline HermitianMatrix4 hamiltonian_dz(const ModelParams& p) {
  if (p.model != Model::Dz) throw UsageError("hamiltonian_dz called with a Dx parameter set");
  using namespace pauli;
  const Matrix4 h = p.J * tensor_product(x(), x()) + p.J * tensor_product(y(), y()) +
                    p.Jz * tensor_product(z(), z()) +
                    p.D * (tensor_product(x(), y()) - tensor_product(y(), x()));
  return HermitianMatrix4(h);
}

inline HermitianMatrix4 hamiltonian_dx(const ModelParams& p) {
  if (p.model != Model::Dx) throw UsageError("hamiltonian_dx called with a Dz parameter set");
  using namespace pauli;
  const Matrix4 h = p.J * tensor_product(x(), x()) + p.J * tensor_product(y(), y()) +
                    p.Jz * tensor_product(z(), z()) +
                    p.D * (tensor_product(y(), z()) - tensor_product(z(), y()));
  return HermitianMatrix4(h);
}

inline HermitianMatrix4 hamiltonian(const ModelParams& p) {
  return p.model == Model::Dz ? hamiltonian_dz(p) : hamiltonian_dx(p);
}

/// exp(-H/T) / Z from the Jacobi eigendecomposition of H. Boltzmann factors
/// are taken relative to the lowest eigenvalue, so any T > 0 is safe.
inline DensityMatrix4 gibbs_oracle(const HermitianMatrix4& h, double T) {
  require_positive_temperature(T);
  const auto eig = herm_eigen(h);
  const double beta = 1.0 / T;
  const double e_min = eig.values[3];
  std::array<double, 4> w{};
  double z = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    w[i] = std::exp(-beta * (eig.values[i] - e_min));
    z += w[i];
  }
  EigenDecomposition<4> weights = eig;
  for (std::size_t i = 0; i < 4; ++i) weights.values[i] = w[i] / z;
  return DensityMatrix4(hermitian_part(reconstruct(weights)));
}

/// Temperature used for the numerical T -> 0 limit.
inline constexpr double kGroundStateTemperature = 1e-3;

/// Numerical T -> 0: the Gibbs oracle at T = 1e-3.
inline DensityMatrix4 ground_state_limit(const ModelParams& p) {
  return gibbs_oracle(hamiltonian(p), kGroundStateTemperature);
}

/// Scalars of the Dz thermal state. u, v and Z are stored multiplied by
/// exp(beta * energy_shift), the lowest eigenvalue of H; ratios such as u/Z
/// are unaffected.
struct DzClosedForm {
  double w = 0.0;      // sqrt(J^2 + Dz^2)
  double theta = 0.0;  // phase of J + i Dz
  double u = 0.0;
  double v = 0.0;
  double Z = 0.0;
  double energy_shift = 0.0;
  double beta = 0.0;

  /// log of the unshifted partition function.
  double log_partition() const { return std::log(Z) - beta * energy_shift; }
};

struct DzThermalState {
  DensityMatrix4 rho;
  DzClosedForm form;
};

inline DzThermalState thermal_state_closed_dz(const ModelParams& p) {
  if (p.model != Model::Dz) throw UsageError("thermal_state_closed_dz called with a Dx parameter set");
  require_positive_temperature(p.T);

  DzClosedForm f;
  f.beta = p.beta();
  f.w = std::hypot(p.J, p.D);
  f.theta = std::atan2(p.D, p.J);

  // Spectrum: Jz (twice), -Jz + 2w, -Jz - 2w.
  const double e_outer = p.Jz;
  const double e_up = -p.Jz + 2.0 * f.w;
  const double e_down = -p.Jz - 2.0 * f.w;
  f.energy_shift = std::min(e_outer, e_down);

  const double corner = std::exp(-f.beta * (e_outer - f.energy_shift));
  const double g_up = std::exp(-f.beta * (e_up - f.energy_shift));
  const double g_down = std::exp(-f.beta * (e_down - f.energy_shift));
  f.u = 0.5 * (g_up + g_down);
  f.v = 0.5 * (g_up - g_down);
  f.Z = 2.0 * corner + 2.0 * f.u;

  Matrix4 m;
  m(0, 0) = corner / f.Z;
  m(3, 3) = corner / f.Z;
  m(1, 1) = f.u / f.Z;
  m(2, 2) = f.u / f.Z;
  m(1, 2) = std::polar(f.v / f.Z, f.theta);
  m(2, 1) = std::conj(m(1, 2));
  return {DensityMatrix4(m), f};
}

/// Scalars of the Dx thermal state, shifted like DzClosedForm. When
/// J + Jz = 0 and Dx = 0 the mixing angles are undefined; the state then
/// comes from the Gibbs oracle, `from_oracle` is set and phi/varphi are NaN.
struct DxClosedForm {
  double w_prime = 0.0;  // sqrt((J + Jz)^2 + 4 Dx^2)
  double phi = 0.0;      // arctan(2Dx / (J + Jz - w'))
  double varphi = 0.0;   // arctan(2Dx / (J + Jz + w'))
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  double nu_plus = 0.0;
  double nu_minus = 0.0;
  Complex xi;
  double Z_prime = 0.0;
  double energy_shift = 0.0;
  double beta = 0.0;
  bool from_oracle = false;

  double log_partition() const { return std::log(Z_prime) - beta * energy_shift; }
};

struct DxThermalState {
  DensityMatrix4 rho;
  DxClosedForm form;
};

inline DxThermalState thermal_state_closed_dx(const ModelParams& p) {
  if (p.model != Model::Dx) throw UsageError("thermal_state_closed_dx called with a Dz parameter set");
  require_positive_temperature(p.T);

  DxClosedForm f;
  f.beta = p.beta();
  const double s = p.J + p.Jz;
  f.w_prime = std::hypot(s, 2.0 * p.D);

  // Spectrum: Jz, 2J - Jz, -J + w', -J - w'.
  const double e1 = p.Jz;
  const double e2 = 2.0 * p.J - p.Jz;
  const double e3 = -p.J + f.w_prime;
  const double e4 = -p.J - f.w_prime;
  f.energy_shift = std::min({e1, e2, e4});
  const double g1 = std::exp(-f.beta * (e1 - f.energy_shift));
  const double g2 = std::exp(-f.beta * (e2 - f.energy_shift));
  const double g3 = std::exp(-f.beta * (e3 - f.energy_shift));
  const double g4 = std::exp(-f.beta * (e4 - f.energy_shift));
  f.Z_prime = g1 + g2 + g3 + g4;

  if (f.w_prime == 0.0) {
    f.from_oracle = true;
    f.phi = std::numeric_limits<double>::quiet_NaN();
    f.varphi = std::numeric_limits<double>::quiet_NaN();
    DensityMatrix4 rho = gibbs_oracle(hamiltonian_dx(p), p.T);
    const double scale = 2.0 * f.Z_prime;
    f.mu_plus = scale * rho(0, 0).real();
    f.mu_minus = scale * rho(0, 3).real();
    f.nu_plus = scale * rho(1, 1).real();
    f.nu_minus = scale * rho(1, 2).real();
    f.xi = scale * rho(1, 0);
    return {rho, f};
  }

  // tan(phi) = -1/tan(varphi), so phi = varphi - pi/2 (mod pi). Evaluate the
  // arctan whose denominator stays away from zero and derive the other.
  if (s >= 0.0) {
    f.varphi = std::atan(2.0 * p.D / (s + f.w_prime));
    f.phi = f.varphi - std::numbers::pi / 2.0;
  } else {
    f.phi = std::atan(2.0 * p.D / (s - f.w_prime));
    f.varphi = f.phi + std::numbers::pi / 2.0;
  }
  const double sp = std::sin(f.phi), cp = std::cos(f.phi);
  const double sv = std::sin(f.varphi), cv = std::cos(f.varphi);

  f.mu_plus = g1 + (g3 * sp * sp + g4 * sv * sv);
  f.mu_minus = g1 - (g3 * sp * sp + g4 * sv * sv);
  f.nu_plus = g2 + (g3 * cp * cp + g4 * cv * cv);
  f.nu_minus = g2 - (g3 * cp * cp + g4 * cv * cv);
  f.xi = Complex(0.0, g3 * sp * cp + g4 * sv * cv);

  const double k = 1.0 / (2.0 * f.Z_prime);
  const Complex xi = f.xi * k;
  Matrix4 m;
  m(0, 0) = f.mu_plus * k;  m(0, 1) = -xi;              m(0, 2) = xi;                 m(0, 3) = f.mu_minus * k;
  m(1, 0) = xi;             m(1, 1) = f.nu_plus * k;    m(1, 2) = f.nu_minus * k;     m(1, 3) = -xi;
  m(2, 0) = -xi;            m(2, 1) = f.nu_minus * k;   m(2, 2) = f.nu_plus * k;      m(2, 3) = xi;
  m(3, 0) = f.mu_minus * k; m(3, 1) = xi;               m(3, 2) = -xi;                m(3, 3) = f.mu_plus * k;
  return {DensityMatrix4(m), f};
}

/// Closed-form thermal state for either model.
inline DensityMatrix4 thermal_state(const ModelParams& p) {
  return p.model == Model::Dz ? thermal_state_closed_dz(p).rho : thermal_state_closed_dx(p).rho;
}

/// The literal closed-form concurrence for the Dz model,
///
///   C = (beta Jz / Z) (e^{2 beta w} - e^{-2 beta Jz} - e^{-2 beta w} - e^{-2 beta Jz})
///
/// for Jz > -w and 0 otherwise, clamped below at 0. This expression is not
/// bounded by 1 and disagrees with the Wootters concurrence of the same
/// state; it is kept only for comparison (see concurrence_wootters).
inline double concurrence_closed_dz(const ModelParams& p) {
  if (p.model != Model::Dz) throw UsageError("concurrence_closed_dz called with a Dx parameter set");
  require_positive_temperature(p.T);
  const double beta = p.beta();
  const double w = std::hypot(p.J, p.D);
  if (!(p.Jz > -w)) return 0.0;

  const double shift = std::min(p.Jz, -p.Jz - 2.0 * w);
  const double z_shifted = 2.0 * std::exp(-beta * (p.Jz - shift)) +
                           std::exp(-beta * (-p.Jz + 2.0 * w - shift)) +
                           std::exp(-beta * (-p.Jz - 2.0 * w - shift));
  auto term = [&](double energy) { return std::exp(-beta * (energy - shift)) / z_shifted; };
  const double c = beta * p.Jz * (term(-2.0 * w) - term(2.0 * p.Jz) - term(2.0 * w) - term(2.0 * p.Jz));
  return std::max(0.0, c);
}

}  // namespace xxz
