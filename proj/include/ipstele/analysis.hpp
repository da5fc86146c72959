#pragma once

// Scalar diagnostics: twin-beam entanglement, photon numbers, and
// difference-number squeezing.

#include <utility>

#include "ipstele/fock.hpp"
#include "ipstele/ips.hpp"

namespace ipstele {

struct CorrelationReport {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double var_diff = 0.0;  // variance of n_a - n_b
  double delta_ab = 0.0;  // var_diff / (mean_a + mean_b)
};

/// Entanglement of the twin beam from x (natural log).
double twb_entanglement(double x);
/// The same quantity written in terms of the total photon number N.
double twb_entanglement_from_photons(double total_photons);

/// N = 2 x^2 / (1 - x^2), both modes together.
double twb_mean_photons(double x);

/// Total photons of a b |twb> normalized, the tau_eff -> 1 limit of the IPS
/// state (one photon taken from each arm): 4 y (2 + y) / (1 - y^2), y = x^2.
double subtracted_twb_mean_photons(double x);

/// (<n_a>, <n_b>) of a two-mode state.
std::pair<double, double> mean_photons_numerical(const DensityOperator& rho);

/// Closed-form difference-number squeezing of the IPS state; 0 at tau_eff = 1.
double difference_squeezing_closed(double x, double tau_eff);

CorrelationReport correlation_report(const DensityOperator& rho);
CorrelationReport correlation_report(const IpsMoments& moments);

/// -Tr rho log rho, eigenvalues clamped at 1e-15.
double von_neumann_entropy(const DensityOperator& rho);

}  // namespace ipstele
