#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ipstele/errors.hpp"
#include "ipstele/ips.hpp"
#include "ipstele/optics.hpp"
#include "ipstele/quadrature.hpp"
#include "ipstele/teleport.hpp"

using namespace ipstele;

namespace {

constexpr double kPi = std::numbers::pi;

DensityOperator vacuum_resource() {
  return DensityOperator::from_pure(PureState::basis(TruncationConfig({4, 4}), {0, 0}));
}

DensityOperator twb_resource(double x) { return DensityOperator::from_pure(twb_state(TwbSpec(x))); }

DensityOperator ips_resource(double x, double tau_eff) {
  const IpsParams p = IpsParams::effective(x, tau_eff);
  return ips_state_direct(p, ips_truncation(p));
}

}  // namespace

TEST(HeterodynePovm, RankOneProjector) {
  const Complex alpha(0.4, -0.3), beta(-0.2, 0.5);
  const auto t = single_mode(40);
  const FockOperator pi = heterodyne_povm(alpha, beta, t);
  const Complex g = std::conj(alpha) + beta;
  EXPECT_NEAR(pi.element(0, 0).real(), std::exp(-std::norm(g)) / kPi, 1e-15);
  EXPECT_NEAR(pi.to_dense().trace().real(), 1.0 / kPi, 1e-10);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(pi.to_dense());
  EXPECT_NEAR(es.eigenvalues()(39), 1.0 / kPi, 1e-10);
  EXPECT_NEAR(es.eigenvalues()(38), 0.0, 1e-14);
  EXPECT_GT(es.eigenvalues()(0), -1e-14);
}

TEST(HeterodynePovm, ZeroOutcomeProjectsOnVacuum) {
  const CMatrix pi = heterodyne_povm(0.0, 0.0, single_mode(5)).to_dense();
  CMatrix expect = CMatrix::Zero(5, 5);
  expect(0, 0) = 1.0 / kPi;
  EXPECT_LT((pi - expect).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(HeterodynePovm, TailChecked) {
  EXPECT_THROW(heterodyne_povm(2.0, 1.0, single_mode(10)), TruncationError);
}

TEST(OutcomeProbability, VacuumResourceIsGaussian) {
  for (Complex beta : {Complex(0.0), Complex(0.5, -1.0), Complex(2.0, 0.3)}) {
    EXPECT_NEAR(outcome_probability(vacuum_resource(), 0.0, beta), std::exp(-std::norm(beta)) / kPi, 1e-15);
  }
}

TEST(OutcomeProbability, CovariantUnderInputShift) {
  const DensityOperator rho = ips_resource(0.4, 0.8);
  const Complex a1(0.3, 0.2), a2(-0.5, 0.7), beta(0.1, -0.4);
  const Complex shifted = beta + std::conj(a1) - std::conj(a2);
  EXPECT_NEAR(outcome_probability(rho, a1, beta), outcome_probability(rho, a2, shifted), 1e-14);
}

TEST(OutcomeProbability, RequiresTwoModes) {
  const DensityOperator one = DensityOperator::from_pure(PureState::basis(single_mode(3), {0}));
  EXPECT_THROW(outcome_probability(one, 0.0, 0.0), DimensionError);
}

TEST(TeleportedState, VacuumResourceAtZeroOutcome) {
  const DensityOperator out = teleported_state(vacuum_resource(), 0.0, 0.0);
  EXPECT_NEAR(out.element(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(out.trace(), 1.0, 1e-10);
  EXPECT_NEAR(conditional_fidelity(vacuum_resource(), 0.0, 0.0), 1.0, 1e-12);
}

TEST(TeleportedState, UnitTraceAndValid) {
  const DensityOperator rho = ips_resource(0.5, 0.9);
  const DensityOperator out = teleported_state(rho, Complex(0.5, 0.2), Complex(1.2, -0.7));
  EXPECT_NEAR(out.trace(), 1.0, 1e-10);
  EXPECT_TRUE(validate(out).ok()) << validate(out).describe();
}

TEST(TeleportedState, BobDisplacementCovariance) {
  const DensityOperator rho = twb_resource(0.5);
  const Complex alpha(0.3, -0.1), beta(0.8, 0.6);
  const DensityOperator rho_b = conditional_state_b(rho, alpha, beta);
  const DensityOperator out = teleported_state(rho, alpha, beta);
  // D^dag(d) rho_b D(d) on a wide space, compared on the output's levels.
  const int wide = out.trunc().dim(0) + 40;
  const CMatrix d = displacement_matrix(bob_displacement(beta), wide, wide);
  CMatrix rb = CMatrix::Zero(wide, wide);
  rb.topLeftCorner(rho_b.trunc().dim(0), rho_b.trunc().dim(0)) = rho_b.matrix();
  const CMatrix expect = d.adjoint() * rb * d;
  const int n = out.trunc().dim(0);
  EXPECT_LT((out.matrix() - expect.topLeftCorner(n, n)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TeleportedState, ZeroProbabilityOutcomeRejected) {
  EXPECT_THROW(teleported_state(vacuum_resource(), 0.0, Complex(40.0, 0.0)), ConditioningError);
}

TEST(ConditionalFidelity, BoundedForRandomOutcomes) {
  const DensityOperator rho = ips_resource(0.5, 0.8);
  std::mt19937 gen(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Complex alpha(n(gen), n(gen)), beta(n(gen), n(gen));
    const TeleportOutcome o = teleport_outcome(rho, alpha, beta);
    EXPECT_GE(o.fidelity, 0.0);
    EXPECT_LE(o.fidelity, 1.0 + 1e-10);
    EXPECT_GE(o.prob_density, 0.0);
  }
}

TEST(AverageFidelity, TwinBeamQuadrature) {
  for (double x : {0.2, 0.4, 0.5, 0.6}) {
    const DensityOperator rho = twb_resource(x);
    const TeleportIntegral in = integrate_teleportation(rho, 0.0, default_grid(rho, 0.0));
    EXPECT_NEAR(in.fidelity, (1.0 + x) / 2.0, 1e-4) << x;
    EXPECT_NEAR(in.normalization, 1.0, 1e-4);
  }
}

TEST(AverageFidelity, IpsQuadratureMatchesClosedForm) {
  const DensityOperator rho = ips_resource(0.5, 0.9);
  EXPECT_NEAR(average_fidelity_quadrature(rho, 0.0), 0.80575, 1e-4);
  EXPECT_NEAR(average_fidelity_quadrature(rho, 0.0), average_fidelity_closed(0.5, 0.9), 1e-4);
  EXPECT_NEAR(average_fidelity_quadrature(rho, Complex(1.0, 0.5)), average_fidelity_quadrature(rho, 0.0), 2e-4);
}

TEST(AverageFidelity, LowTransmissivityIsBelowTwinBeam) {
  EXPECT_LT(average_fidelity_quadrature(ips_resource(0.5, 0.5), 0.0), 0.75);
}

TEST(AverageFidelity, ClosedForm) {
  EXPECT_DOUBLE_EQ(average_fidelity_closed(0.0, 0.9), 0.5);
  EXPECT_NEAR(average_fidelity_closed(0.5, 0.9), 0.8057571719440179, 1e-15);
  EXPECT_GT(average_fidelity_closed(0.5, 1.0), 0.75);
  EXPECT_DOUBLE_EQ(twb_average_fidelity(1.0 / 3.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(twb_average_fidelity(0.0), 0.5);
  double prev = 0.0;
  for (double x : {0.8, 0.9, 0.95}) {
    const double f = average_fidelity_closed(x, 0.999);
    EXPECT_GT(f, prev);
    prev = f;
  }
  EXPECT_GT(prev, 0.9);
  EXPECT_THROW(average_fidelity_closed(1.0, 0.9), DomainError);
  EXPECT_THROW(average_fidelity_closed(0.5, 0.0), DomainError);
}

TEST(AverageFidelity, QuadratureTailChecked) {
  const DensityOperator rho = twb_resource(0.5);
  QuadratureGrid g;
  g.radius = 1.5;
  EXPECT_THROW(integrate_teleportation(rho, 0.0, g), TruncationError);
}

// Undoing the outcome with D^dag(beta) instead of D^dag(beta*) loses the
// information carried by the twin beam: the average fidelity falls to
// sqrt(1 - x^2) / 2.
TEST(AverageFidelity, UnconjugatedCorrectionDoesNotTeleport) {
  const double x = 0.5;
  const DensityOperator rho = twb_resource(x);
  const int db = rho.trunc().dim(1);
  double f = 0.0;
  for (const PlaneNode& node : polar_disk_rule(0.0, 8.0, 40, 64)) {
    const double p = outcome_probability(rho, 0.0, node.point);
    if (p < 1e-300) continue;
    const CMatrix rb = conditional_state_b(rho, 0.0, node.point).matrix();
    const CMatrix d = displacement_matrix(-node.point, 160, db);
    const CMatrix out = d * rb * d.adjoint();
    f += node.weight * p * out(0, 0).real();  // alpha = 0: overlap with vacuum
  }
  EXPECT_NEAR(f, std::sqrt(1.0 - x * x) / 2.0, 1e-6);
}
