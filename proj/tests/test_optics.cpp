#include <gtest/gtest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "ipstele/errors.hpp"
#include "ipstele/optics.hpp"

using namespace ipstele;

namespace {

// Truncated ladder operator: a|n> = sqrt(n)|n-1>.
CMatrix annihilation(int d) {
  CMatrix a = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// exp(beta a^dag - beta* a) on a large space; entries far from the edge
// are exact to rounding.
CMatrix displacement_by_expm(Complex beta, int d) {
  const CMatrix a = annihilation(d);
  const CMatrix g = beta * a.adjoint() - std::conj(beta) * a;
  return g.exp();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

}  // namespace

TEST(Cutoff, TwinBeamRule) {
  for (double x : {0.1, 0.5, 0.9}) {
    const int d = twb_cutoff(x, 1e-12);
    EXPECT_LE(std::pow(x, 2 * d), 1e-12);
    EXPECT_GT(std::pow(x, 2 * (d - 1)), 1e-12);
  }
}

TEST(TwinBeam, Amplitudes) {
  const PureState s = twb_state(TwbSpec(0.5));
  EXPECT_NEAR(s.amplitude({2, 2}).real(), std::sqrt(0.75) * 0.25, 1e-12);
  EXPECT_EQ(s.amplitude({2, 1}), Complex(0.0));
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-14);
}

TEST(TwinBeam, SmallXIsNearVacuum) {
  const PureState s = twb_state(TwbSpec(1e-4));
  EXPECT_NEAR(std::norm(s.amplitude({0, 0})), 1.0, 1e-7);
}

TEST(TwinBeam, TruncatedNormBeforeRenormalization) {
  const double x = 0.7;
  const int d = 10;
  double sum = 0.0;
  for (int n = 0; n < d; ++n) sum += (1 - x * x) * std::pow(x, 2 * n);
  EXPECT_NEAR(sum, 1.0 - std::pow(x, 2 * d), 1e-15);
  EXPECT_THROW(twb_state(TwbSpec(x), TruncationConfig({d, d})), TruncationError);
}

TEST(TwinBeam, MeanPhotonsPerMode) {
  const double x = 0.6;
  const DensityOperator rho = DensityOperator::from_pure(twb_state(TwbSpec(x)));
  const double na = expectation(rho, number_operator(rho.trunc(), 0)).real();
  EXPECT_NEAR(na, x * x / (1 - x * x), 1e-9);
}

TEST(TwinBeam, DomainChecked) {
  EXPECT_THROW(TwbSpec(0.0), DomainError);
  EXPECT_THROW(TwbSpec(1.0), DomainError);
  EXPECT_THROW(BeamSplitterSpec(0.0), DomainError);
  EXPECT_THROW(BeamSplitterSpec(1.2), DomainError);
}

TEST(Coherent, Amplitudes) {
  const auto t = single_mode(30);
  const PureState vac = coherent_state(0.0, t);
  EXPECT_DOUBLE_EQ(vac.amplitude({0}).real(), 1.0);
  const PureState one = coherent_state(1.0, t);
  EXPECT_NEAR(one.amplitude({0}).real(), std::exp(-0.5), 1e-12);
  EXPECT_NEAR(one.norm_squared(), 1.0, 1e-10);
  EXPECT_THROW(coherent_state(3.0, single_mode(10)), TruncationError);
}

TEST(BeamSplitter, IdentityAtUnitTransmissivity) {
  const TruncationConfig t({6, 6});
  const CMatrix u = beam_splitter_unitary(BeamSplitterSpec(1.0), t).to_dense();
  EXPECT_LT((u - CMatrix::Identity(36, 36)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BeamSplitter, MatchesFullMatrixExponential) {
  // Independent route: exponentiate lambda (a c^dag - a^dag c) built from
  // ladder operators on a larger space, then compare complete sectors.
  const int d = 6;
  const int big = 14;
  const double tau = 0.7;
  const BeamSplitterSpec bs(tau);
  const CMatrix a = kron(annihilation(big), CMatrix::Identity(big, big));
  const CMatrix c = kron(CMatrix::Identity(big, big), annihilation(big));
  const CMatrix g = bs.lambda() * (a * c.adjoint() - a.adjoint() * c);
  const CMatrix full = g.exp();
  const CMatrix u = beam_splitter_unitary(bs, TruncationConfig({d, d})).to_dense();
  double worst = 0.0;
  for (int i = 0; i < d * d; ++i) {
    for (int j = 0; j < d * d; ++j) {
      const int ni = i / d, ci = i % d, nj = j / d, cj = j % d;
      if (nj + cj >= d) continue;  // incomplete sector in the small space
      worst = std::max(worst, std::abs(u(i, j) - full(ni * big + ci, nj * big + cj)));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(BeamSplitter, UnitaryAndBlockDiagonal) {
  const int d = 7;
  const CMatrix u = beam_splitter_unitary(BeamSplitterSpec(0.35), TruncationConfig({d, d})).to_dense();
  for (int i = 0; i < d * d; ++i) {
    for (int j = 0; j < d * d; ++j) {
      if ((i / d + i % d) != (j / d + j % d)) EXPECT_EQ(u(i, j), Complex(0.0));
    }
  }
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BeamSplitter, OnePhotonAction) {
  const TruncationConfig t({3, 3});
  const CMatrix u = beam_splitter_unitary(BeamSplitterSpec(0.8), t).to_dense();
  EXPECT_NEAR(u(t.flat_index({1, 0}), t.flat_index({1, 0})).real(), std::sqrt(0.8), 1e-14);
  EXPECT_NEAR(u(t.flat_index({0, 1}), t.flat_index({1, 0})).real(), std::sqrt(0.2), 1e-14);
}

TEST(Displacement, MatchesMatrixExponential) {
  for (Complex beta : {Complex(0.3, -0.2), Complex(-1.1, 0.7), Complex(2.0, 1.5)}) {
    const int d = 12;
    const CMatrix oracle = displacement_by_expm(beta, 120);
    const CMatrix mine = displacement_matrix(beta, d, d);
    EXPECT_LT((mine - oracle.topLeftCorner(d, d)).cwiseAbs().maxCoeff(), 1e-11) << beta;
  }
}

TEST(Displacement, VacuumGoesToCoherentState) {
  const Complex beta(0.9, -0.4);
  const auto t = single_mode(40);
  const FockOperator d = displacement_operator(beta, t);
  const CVector col = d.to_dense().col(0);
  EXPECT_LT((col - coherent_state(beta, t).amps()).cwiseAbs().maxCoeff(), 1e-8);
  const CMatrix dd = d.to_dense();
  EXPECT_LT((dd.adjoint() * dd - CMatrix::Identity(40, 40)).topLeftCorner(20, 20).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Displacement, ZeroIsIdentityAndTailChecked) {
  EXPECT_LT((displacement_operator(0.0, single_mode(5)).to_dense() - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_THROW(displacement_operator(3.0, single_mode(8)), TruncationError);
}

TEST(PostBeamSplitter, ExplicitAmplitude) {
  const double x = 0.5, tau = 0.8;
  const PureState s = post_bs_state_explicit(TwbSpec(x), BeamSplitterSpec(tau), TruncationConfig({21, 21, 21, 21}));
  // n = 2, p = 1, q = 0
  EXPECT_NEAR(s.amplitude({1, 2, 1, 0}).real(), std::sqrt(0.75) * 0.16 * 0.5 * std::sqrt(2.0), 1e-10);
}

TEST(PostBeamSplitter, UnitaryRouteEqualsExplicitSum) {
  for (double x : {0.3, 0.7}) {
    for (double tau : {0.5, 0.8, 0.9, 0.99}) {
      const int d = twb_cutoff(x);
      const TruncationConfig t({d, d, d, d});
      const PureState u = post_bs_state(TwbSpec(x), BeamSplitterSpec(tau), t);
      const PureState e = post_bs_state_explicit(TwbSpec(x), BeamSplitterSpec(tau), t);
      EXPECT_LT((u.amps() - e.amps()).cwiseAbs().maxCoeff(), 1e-10) << x << " " << tau;
      EXPECT_NEAR(u.norm_squared(), 1.0, 1e-10);
    }
  }
}

TEST(PostBeamSplitter, UnitTransmissivityKeepsTwinBeam) {
  const TruncationConfig t({8, 8, 8, 8}, 1e-8);
  const PureState s = post_bs_state(TwbSpec(0.2), BeamSplitterSpec(1.0), t);
  const PureState twb = twb_state(TwbSpec(0.2), TruncationConfig({8, 8}, 1e-8));
  for (int n = 0; n < 8; ++n) EXPECT_NEAR(s.amplitude({n, n, 0, 0}).real(), twb.amplitude({n, n}).real(), 1e-15);
}

TEST(Loss, BinomialThinningOfNumberState) {
  const auto t = single_mode(5);
  const DensityOperator rho = DensityOperator::from_pure(PureState::basis(t, {3}));
  const std::vector<int> m = {0};
  const DensityOperator out = apply_loss(rho, 0.6, m);
  for (int k = 0; k <= 3; ++k) {
    const double expect = std::tgamma(4) / (std::tgamma(k + 1) * std::tgamma(4 - k)) * std::pow(0.6, k) * std::pow(0.4, 3 - k);
    EXPECT_NEAR(out.element(k, k).real(), expect, 1e-14);
  }
  EXPECT_NEAR(out.trace(), 1.0, 1e-14);
}

TEST(Loss, CoherentStaysCoherent) {
  const auto t = single_mode(30);
  const Complex alpha(0.7, 0.2);
  const std::vector<int> m = {0};
  const DensityOperator out = apply_loss(DensityOperator::from_pure(coherent_state(alpha, t)), 0.5, m);
  const PureState expect = coherent_state(alpha * std::sqrt(0.5), t);
  EXPECT_NEAR(fidelity_with_pure(out, expect), 1.0, 1e-12);
}
