#include <gtest/gtest.h>

#include <cmath>

#include "ipstele/analysis.hpp"
#include "ipstele/errors.hpp"
#include "ipstele/ips.hpp"
#include "ipstele/optics.hpp"

using namespace ipstele;

TEST(Entanglement, ClosedFormValue) {
  EXPECT_NEAR(twb_entanglement(0.5), -std::log(0.75) - 0.25 * std::log(0.25) / 0.75, 1e-15);
  EXPECT_NEAR(twb_entanglement(0.5), 0.7497802, 1e-6);
  EXPECT_LT(twb_entanglement(1e-8), 1e-13);
}

TEST(Entanglement, PhotonFormAgrees) {
  for (double x = 0.05; x < 0.951; x += 0.05) {
    EXPECT_NEAR(twb_entanglement(x), twb_entanglement_from_photons(twb_mean_photons(x)), 1e-12) << x;
  }
}

TEST(Entanglement, IncreasesWithX) {
  double prev = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double e = twb_entanglement(i / 100.0);
    EXPECT_GT(e, prev);
    prev = e;
  }
}

// The closed form is the entropy of one marginal, S[rho_a] (= S[rho_b]).
TEST(Entanglement, EqualsMarginalEntropy) {
  for (double x : {0.2, 0.5, 0.7}) {
    const DensityOperator rho = DensityOperator::from_pure(twb_state(TwbSpec(x)));
    const double sa = von_neumann_entropy(partial_trace(rho, {0}));
    const double sb = von_neumann_entropy(partial_trace(rho, {1}));
    EXPECT_NEAR(sa, sb, 1e-12);
    EXPECT_NEAR(sa, twb_entanglement(x), 1e-9);
    EXPECT_NEAR(von_neumann_entropy(rho), 0.0, 1e-9);
  }
}

TEST(Entanglement, MarginalEntropiesOfFourModeStateMatch) {
  const PureState psi = post_bs_state(TwbSpec(0.3), BeamSplitterSpec(0.8), TruncationConfig({6, 6, 6, 6}, 1e-6));
  const std::vector<int> ab = {0, 1};
  const std::vector<int> cd = {2, 3};
  EXPECT_NEAR(von_neumann_entropy(reduce_pure(psi, ab)), von_neumann_entropy(reduce_pure(psi, cd)), 1e-10);
}

TEST(MeanPhotons, TwinBeam) {
  EXPECT_NEAR(twb_mean_photons(0.5), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(twb_mean_photons(0.0), 0.0);
  const auto [na, nb] = mean_photons_numerical(DensityOperator::from_pure(twb_state(TwbSpec(0.5))));
  EXPECT_NEAR(na, 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(nb, 1.0 / 3.0, 1e-10);
}

TEST(MeanPhotons, Vacuum) {
  const auto [na, nb] = mean_photons_numerical(DensityOperator::from_pure(PureState::basis(TruncationConfig({3, 3}), {0, 0})));
  EXPECT_EQ(na, 0.0);
  EXPECT_EQ(nb, 0.0);
}

TEST(MeanPhotons, IpsAddsEnergyAtSmallX) {
  for (double x : {0.1, 0.3, 0.5}) {
    const IpsParams p = IpsParams::effective(x, 0.9);
    const auto [na, nb] = mean_photons_numerical(ips_state_direct(p, ips_truncation(p)));
    EXPECT_NEAR(na, nb, 1e-10);
    EXPECT_GT(na + nb, twb_mean_photons(x));
  }
}

TEST(MeanPhotons, SubtractedTwinBeamIsIdealLimit) {
  for (double x : {0.2, 0.6}) {
    const IpsMoments m = ips_moments(IpsParams::effective(x, 1.0 - 1e-7));
    EXPECT_NEAR(m.mean_a + m.mean_b, subtracted_twb_mean_photons(x), 1e-5);
  }
}

TEST(DifferenceSqueezing, ClosedFormValues) {
  EXPECT_NEAR(difference_squeezing_closed(0.5, 0.8), 0.1191702432045779, 1e-14);
  EXPECT_EQ(difference_squeezing_closed(0.5, 1.0), 0.0);
  for (double x : {0.1, 0.3, 0.5, 0.9}) {
    EXPECT_NEAR(difference_squeezing_closed(x, 0.999), 0.0005, 0.1 * 0.0005) << x;
    EXPECT_GE(difference_squeezing_closed(x, 0.3), 0.0);
  }
}

TEST(DifferenceSqueezing, MatchesIdealDetectorMoments) {
  for (double x : {0.1, 0.3, 0.5, 0.6}) {
    for (double t : {0.5, 0.8, 0.9}) {
      const IpsParams p = IpsParams::effective(x, t);
      EXPECT_NEAR(correlation_report(ips_state_direct(p, ips_truncation(p))).delta_ab,
                  difference_squeezing_closed(x, t), 1e-8)
          << x << " " << t;
    }
  }
}

TEST(CorrelationReportTest, TwinBeamIsPerfectlyCorrelated) {
  const CorrelationReport r = correlation_report(DensityOperator::from_pure(twb_state(TwbSpec(0.5))));
  EXPECT_NEAR(r.var_diff, 0.0, 1e-12);
  EXPECT_NEAR(r.delta_ab, 0.0, 1e-12);
}

TEST(CorrelationReportTest, IndependentCoherentStates) {
  const auto one = single_mode(40);
  const PureState c = coherent_state(1.0, one);
  const CorrelationReport r = correlation_report(DensityOperator::from_pure(tensor_product({c, c})));
  EXPECT_NEAR(r.var_diff, 2.0, 1e-10);
  EXPECT_NEAR(r.delta_ab, 1.0, 1e-10);
}

TEST(CorrelationReportTest, ZeroEnergyRejected) {
  EXPECT_THROW(correlation_report(DensityOperator::from_pure(PureState::basis(TruncationConfig({2, 2}), {0, 0}))),
               DomainError);
}

TEST(Entropy, MaximallyMixedQubit) {
  const DensityOperator mixed(single_mode(2), CMatrix::Identity(2, 2) * 0.5);
  EXPECT_NEAR(von_neumann_entropy(mixed), std::log(2.0), 1e-15);
}
