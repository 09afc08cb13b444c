#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "xxz/models.hpp"

using namespace xxz;

namespace {

const Complex I(0.0, 1.0);

// The Dz Hamiltonian as a matrix literal in the |ab> basis.
Matrix4 displayed_dz(double J, double Jz, double D) {
  Matrix4 m = Matrix4::diagonal({Jz, -Jz, -Jz, Jz});
  m(1, 2) = 2.0 * J + 2.0 * I * D;
  m(2, 1) = 2.0 * J - 2.0 * I * D;
  return m;
}

Matrix4 displayed_dx(double J, double Jz, double D) {
  Matrix4 m = Matrix4::diagonal({Jz, -Jz, -Jz, Jz});
  m(0, 1) = I * D;   m(0, 2) = -I * D;
  m(1, 0) = -I * D;  m(1, 2) = 2.0 * J;  m(1, 3) = I * D;
  m(2, 0) = I * D;   m(2, 1) = 2.0 * J;  m(2, 3) = -I * D;
  m(3, 1) = -I * D;  m(3, 2) = I * D;
  return m;
}

struct RandomPoint {
  double J, Jz, D, T;
};

std::vector<RandomPoint> random_points(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coupling(0.0, 3.0), dm(0.0, 2.0), temp(0.05, 20.0);
  std::vector<RandomPoint> out;
  for (int i = 0; i < n; ++i) out.push_back({coupling(rng), coupling(rng), dm(rng), temp(rng)});
  return out;
}

}  // namespace

TEST(Hamiltonian, DzMatchesMatrixLiteral) {
  for (const auto& pt : random_points(1, 50)) {
    const auto h = hamiltonian_dz({Model::Dz, pt.J, pt.Jz, pt.D, 1.0});
    EXPECT_LT(max_abs_diff(h.matrix(), displayed_dz(pt.J, pt.Jz, pt.D)), 1e-15);
  }
}

TEST(Hamiltonian, DzExamples) {
  const auto xx = hamiltonian_dz({Model::Dz, 1.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(xx(1, 2), Complex(2.0));
  EXPECT_EQ(xx(2, 1), Complex(2.0));
  EXPECT_EQ(xx(0, 0), Complex(0.0));

  EXPECT_EQ(hamiltonian_dz({Model::Dz, 0.0, 0.0, 0.0, 1.0}).matrix(), Matrix4{});

  const auto h = hamiltonian_dz({Model::Dz, 1.0, 0.2, 1.0, 1.0});
  EXPECT_EQ(h(1, 2), Complex(2.0, 2.0));
  EXPECT_EQ(h(0, 0), Complex(0.2));
}

TEST(Hamiltonian, DxMatchesMatrixLiteral) {
  for (const auto& pt : random_points(2, 50)) {
    const auto h = hamiltonian_dx({Model::Dx, pt.J, pt.Jz, pt.D, 1.0});
    EXPECT_LT(max_abs_diff(h.matrix(), displayed_dx(pt.J, pt.Jz, pt.D)), 1e-15);
  }
}

TEST(Hamiltonian, DxExamples) {
  const auto h = hamiltonian_dx({Model::Dx, 1.0, 0.0, 1.0, 1.0});
  EXPECT_EQ(h(0, 1), I);
  EXPECT_EQ(h(1, 3), I);
  EXPECT_EQ(h(1, 2), Complex(2.0));

  const auto dx0 = hamiltonian_dx({Model::Dx, 1.3, 0.4, 0.0, 1.0});
  const auto dz0 = hamiltonian_dz({Model::Dz, 1.3, 0.4, 0.0, 1.0});
  EXPECT_EQ(dx0.matrix(), dz0.matrix());
}

TEST(Hamiltonian, WrongModelTagIsUsageError) {
  EXPECT_THROW(hamiltonian_dz({Model::Dx, 1, 0, 0, 1}), UsageError);
  EXPECT_THROW(hamiltonian_dx({Model::Dz, 1, 0, 0, 1}), UsageError);
  EXPECT_THROW(thermal_state_closed_dz({Model::Dx, 1, 0, 0, 1}), UsageError);
  EXPECT_THROW(thermal_state_closed_dx({Model::Dz, 1, 0, 0, 1}), UsageError);
}

TEST(Hamiltonian, TracelessRealSpectrum) {
  for (const auto& pt : random_points(3, 100)) {
    for (Model m : {Model::Dz, Model::Dx}) {
      const auto eig = herm_eigen(hamiltonian({m, pt.J, pt.Jz, pt.D, 1.0}));
      EXPECT_NEAR(eig.values[0] + eig.values[1] + eig.values[2] + eig.values[3], 0.0, 1e-10);
    }
  }
}

TEST(Hamiltonian, DzSpectrumFromBlockReduction) {
  for (const auto& pt : random_points(4, 100)) {
    const double w = std::hypot(pt.J, pt.D);
    std::array<double, 4> expected{pt.Jz, pt.Jz, -pt.Jz + 2 * w, -pt.Jz - 2 * w};
    std::sort(expected.begin(), expected.end(), std::greater<>());
    const auto eig = herm_eigen(hamiltonian_dz({Model::Dz, pt.J, pt.Jz, pt.D, 1.0}));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(eig.values[i], expected[i], 1e-10);
  }
}

TEST(GibbsOracle, ZeroHamiltonianIsMaximallyMixed) {
  const HermitianMatrix4 zero(Matrix4{});
  for (double T : {0.01, 1.0, 100.0})
    EXPECT_LT(max_abs_diff(gibbs_oracle(zero, T).matrix(), Matrix4::identity() * 0.25), 1e-15);
}

TEST(GibbsOracle, HighTemperatureLimit) {
  const auto h = hamiltonian_dz({Model::Dz, 1.0, 0.2, 1.0, 1.0});
  const double norm = 3.1;  // spectral radius bound of h
  for (double T : {1e2, 1e4, 1e6}) {
    const double dev = max_abs_diff(gibbs_oracle(h, T).matrix(), Matrix4::identity() * 0.25);
    EXPECT_LE(dev, norm / T);
  }
}

TEST(GibbsOracle, RejectsNonPositiveTemperature) {
  const HermitianMatrix4 zero(Matrix4{});
  EXPECT_THROW(gibbs_oracle(zero, 0.0), DomainError);
  EXPECT_THROW(gibbs_oracle(zero, -1.0), DomainError);
  EXPECT_THROW(thermal_state_closed_dz({Model::Dz, 1, 0, 0, 0.0}), DomainError);
  EXPECT_THROW(thermal_state_closed_dx({Model::Dx, 1, 0, 0, -2.0}), DomainError);
}

// Reference entries from scipy.linalg.expm(-H/T) / tr at J=1, Jz=0.2, D=1, T=1.
TEST(ThermalStateDz, MatchesExpmReference) {
  const ModelParams p{Model::Dz, 1.0, 0.2, 1.0, 1.0};
  const auto rho = thermal_state_closed_dz(p).rho;
  EXPECT_NEAR(rho(0, 0).real(), 0.03659236942299053, 1e-13);
  EXPECT_NEAR(rho(1, 1).real(), 0.46340763057700934, 1e-13);
  EXPECT_NEAR(rho(1, 2).real(), -0.3253971645815775, 1e-13);
  EXPECT_NEAR(rho(1, 2).imag(), -0.3253971645815775, 1e-13);
  EXPECT_LT(max_abs_diff(rho.matrix(), gibbs_oracle(hamiltonian_dz(p), p.T).matrix()), 1e-10);
}

TEST(ThermalStateDx, MatchesExpmReference) {
  const ModelParams p{Model::Dx, 1.0, 0.2, 1.0, 1.0};
  const auto rho = thermal_state_closed_dx(p).rho;
  EXPECT_NEAR(rho(0, 0).real(), 0.13360743729191057, 1e-13);
  EXPECT_NEAR(rho(0, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(rho(0, 1).imag(), -0.20329485553249985, 1e-13);
  EXPECT_NEAR(rho(0, 3).real(), -0.10561933430867812, 1e-13);
  EXPECT_NEAR(rho(1, 1).real(), 0.36639256270808934, 1e-13);
  EXPECT_NEAR(rho(1, 2).real(), -0.360741862170499, 1e-13);
  EXPECT_LT(max_abs_diff(rho.matrix(), gibbs_oracle(hamiltonian_dx(p), p.T).matrix()), 1e-10);
}

TEST(ThermalStateDz, NoDmPhase) {
  const auto [rho, form] = thermal_state_closed_dz({Model::Dz, 1.0, 0.0, 0.0, 0.7});
  EXPECT_EQ(form.theta, 0.0);
  EXPECT_EQ(form.w, 1.0);
  EXPECT_EQ(rho(1, 2).imag(), 0.0);
  EXPECT_EQ(rho(2, 1).imag(), 0.0);
}

TEST(ThermalStateDz, ClosedFormScalarsAreConsistent) {
  for (const auto& pt : random_points(5, 200)) {
    const ModelParams p{Model::Dz, pt.J, pt.Jz, pt.D, pt.T};
    const auto f = thermal_state_closed_dz(p).form;
    const double corner = std::exp(-f.beta * (p.Jz - f.energy_shift));
    EXPECT_GT(f.Z, 0.0);
    EXPECT_GT(f.u, 0.0);
    EXPECT_NEAR((f.u + corner) / (0.5 * f.Z), 1.0, 1e-10);

    // Unshifted partition function, literal form: 2 e^{-b Jz} [1 + e^{2 b Jz} cosh(2 b w)]
    const double b = p.beta();
    const double z_literal = 2.0 * std::exp(-b * p.Jz) * (1.0 + std::exp(2.0 * b * p.Jz) * std::cosh(2.0 * b * f.w));
    if (std::isfinite(z_literal)) EXPECT_NEAR(f.log_partition(), std::log(z_literal), 1e-10);
  }
}

TEST(ThermalStateDx, ClosedFormScalarsAreConsistent) {
  for (const auto& pt : random_points(6, 200)) {
    const ModelParams p{Model::Dx, pt.J, pt.Jz, pt.D, pt.T};
    const auto f = thermal_state_closed_dx(p).form;
    EXPECT_FALSE(f.from_oracle);
    EXPECT_GT(f.Z_prime, 0.0);
    EXPECT_NEAR((f.mu_plus + f.nu_plus) / f.Z_prime, 1.0, 1e-10);
    EXPECT_EQ(f.xi.real(), 0.0);

    // Unshifted Z' = 2 e^{-bJ} cosh[b(J - Jz)] + 2 e^{bJ} cosh(b w'), and the
    // Gibbs sum over the Jacobi spectrum.
    const double b = p.beta();
    const double z_literal = 2.0 * std::exp(-b * p.J) * std::cosh(b * (p.J - p.Jz)) +
                             2.0 * std::exp(b * p.J) * std::cosh(b * f.w_prime);
    const auto eig = herm_eigen(hamiltonian_dx(p));
    double z_spectrum = 0.0;
    for (double e : eig.values) z_spectrum += std::exp(-b * e);
    if (std::isfinite(z_literal)) {
      EXPECT_NEAR(f.log_partition(), std::log(z_literal), 1e-9);
      EXPECT_NEAR(z_spectrum / z_literal, 1.0, 1e-9);
    }
  }
}

TEST(ThermalStateDx, MixingAnglesMatchArctanDefinitions) {
  for (const auto& pt : random_points(7, 100)) {
    const ModelParams p{Model::Dx, pt.J, pt.Jz, pt.D, pt.T};
    const auto f = thermal_state_closed_dx(p).form;
    const double s = p.J + p.Jz;
    EXPECT_NEAR(std::tan(f.varphi), 2.0 * p.D / (s + f.w_prime), 1e-10);
    // phi is only fixed mod pi; compare squared sines.
    const double phi_literal = std::atan(2.0 * p.D / (s - f.w_prime));
    EXPECT_NEAR(std::sin(f.phi) * std::sin(f.phi), std::sin(phi_literal) * std::sin(phi_literal), 1e-10);
  }
}

TEST(ThermalStateDx, ZeroDmMatchesDz) {
  for (const auto& pt : random_points(8, 50)) {
    const auto dx = thermal_state_closed_dx({Model::Dx, pt.J, pt.Jz, 0.0, pt.T}).rho;
    const auto dz = thermal_state_closed_dz({Model::Dz, pt.J, pt.Jz, 0.0, pt.T}).rho;
    EXPECT_LT(max_abs_diff(dx.matrix(), dz.matrix()), 1e-10);
  }
}

TEST(ThermalStateDx, DegenerateAnglesFallBackToOracle) {
  // J + Jz = 0 and Dx = 0 leave phi and varphi undefined.
  const ModelParams p{Model::Dx, 1.0, -1.0, 0.0, 0.8};
  const auto [rho, form] = thermal_state_closed_dx(p);
  EXPECT_TRUE(form.from_oracle);
  EXPECT_TRUE(std::isnan(form.phi));
  EXPECT_LT(max_abs_diff(rho.matrix(), gibbs_oracle(hamiltonian_dx(p), p.T).matrix()), 1e-12);
  EXPECT_NEAR((form.mu_plus + form.nu_plus) / form.Z_prime, 1.0, 1e-10);
}

TEST(ThermalState, OracleEquivalenceOnRandomPoints) {
  double worst_dz = 0.0, worst_dx = 0.0;
  for (const auto& pt : random_points(9, 500)) {
    const ModelParams pz{Model::Dz, pt.J, pt.Jz, pt.D, pt.T};
    const ModelParams px{Model::Dx, pt.J, pt.Jz, pt.D, pt.T};
    worst_dz = std::max(worst_dz, max_abs_diff(thermal_state(pz).matrix(), gibbs_oracle(hamiltonian(pz), pt.T).matrix()));
    worst_dx = std::max(worst_dx, max_abs_diff(thermal_state(px).matrix(), gibbs_oracle(hamiltonian(px), pt.T).matrix()));
  }
  EXPECT_LT(worst_dz, 1e-9);
  EXPECT_LT(worst_dx, 1e-9);
}

TEST(ThermalState, NegativeCouplingsStillMatchOracle) {
  for (const auto& pt : random_points(10, 100)) {
    for (Model m : {Model::Dz, Model::Dx}) {
      const ModelParams p{m, -pt.J, pt.Jz - 1.5, -pt.D, pt.T};
      EXPECT_LT(max_abs_diff(thermal_state(p).matrix(), gibbs_oracle(hamiltonian(p), p.T).matrix()), 1e-9);
    }
  }
}

TEST(ThermalState, ReducedStatesAreMaximallyMixed) {
  const Matrix2 half = Matrix2::identity() * 0.5;
  for (const auto& pt : random_points(11, 300)) {
    for (Model m : {Model::Dz, Model::Dx}) {
      const auto rho = thermal_state({m, pt.J, pt.Jz, pt.D, pt.T});
      EXPECT_LT(max_abs_diff(partial_trace(rho, Subsystem::A).matrix(), half), 1e-10);
      EXPECT_LT(max_abs_diff(partial_trace(rho, Subsystem::B).matrix(), half), 1e-10);
    }
  }
}

TEST(ThermalStateDz, CommutesWithZZ) {
  const Matrix4 zz = tensor_product(pauli::z(), pauli::z());
  for (const auto& pt : random_points(12, 100)) {
    const auto rho = thermal_state({Model::Dz, pt.J, pt.Jz, pt.D, pt.T}).matrix();
    EXPECT_LT(max_abs_diff(rho * zz, zz * rho), 1e-10);
  }
}

TEST(ThermalState, LowTemperatureStaysFiniteAndMatchesOracle) {
  for (double T : {0.01, 0.005, 1e-3}) {
    for (Model m : {Model::Dz, Model::Dx}) {
      const ModelParams p{m, 1.0, 0.2, 1.0, T};
      EXPECT_LT(max_abs_diff(thermal_state(p).matrix(), gibbs_oracle(hamiltonian(p), T).matrix()), 1e-10);
    }
  }
}

TEST(ThermalStateDz, ApproachesGroundStateProjector) {
  // Ground state (|01> - e^{-i theta}|10>)/sqrt(2), energy -Jz - 2w.
  const ModelParams p{Model::Dz, 1.0, 0.2, 1.0, 0.02};
  const double theta = std::atan2(p.D, p.J);
  const double s = 1.0 / std::sqrt(2.0);
  const auto ground = DensityMatrix4::pure({0.0, s, -std::polar(s, -theta), 0.0});
  EXPECT_LT(max_abs_diff(thermal_state(p).matrix(), ground.matrix()), 1e-12);
  EXPECT_LT(max_abs_diff(ground_state_limit(p).matrix(), ground.matrix()), 1e-12);
}

TEST(ConcurrenceClosedDz, ZeroBelowMinusW) {
  // Jz < -w with w = 1
  EXPECT_EQ(concurrence_closed_dz({Model::Dz, 1.0, -1.5, 0.0, 0.5}), 0.0);
  EXPECT_EQ(concurrence_closed_dz({Model::Dz, 0.6, -2.0, 0.8, 3.0}), 0.0);
}

TEST(ConcurrenceClosedDz, VanishesAtHighTemperature) {
  EXPECT_EQ(concurrence_closed_dz({Model::Dz, 1.0, 0.2, 1.0, 50.0}), 0.0);
  EXPECT_EQ(concurrence_closed_dz({Model::Dz, 1.0, 0.2, 1.0, 1e4}), 0.0);
}

TEST(ConcurrenceClosedDz, FiniteAtLowTemperature) {
  const double c = concurrence_closed_dz({Model::Dz, 1.0, 0.2, 1.0, 0.01});
  EXPECT_TRUE(std::isfinite(c));
  EXPECT_GE(c, 0.0);
}
