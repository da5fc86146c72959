#pragma once

// Coherent-state teleportation through a two-mode resource (a, b).
//
// Alice's joint measurement on the input and mode a is the heterodyne POVM
// (1/pi) D(beta) sigma^T D^dag(beta). For a coherent input sigma = |alpha><alpha|
// this is the rank-one element (1/pi) |alpha* + beta><alpha* + beta|.
//
// With the real twin-beam amplitudes, projecting mode a on |g> leaves mode b
// near |x g*>. Bob therefore undoes the outcome with D^dag(beta*), i.e.
// rho_out = D^dag(beta*) rho_b D(beta*); with the unconjugated D^dag(beta)
// the protocol would not approach unit fidelity as x -> 1.

#include <cstddef>

#include "ipstele/fock.hpp"

namespace ipstele {

inline constexpr double kQuadratureTailTol = 1e-8;

/// Amplitude of the coherent projector of the heterodyne element.
inline Complex heterodyne_center(Complex alpha, Complex beta) { return std::conj(alpha) + beta; }

/// Displacement Bob undoes for outcome beta: rho_out = D^dag(d) rho_b D(d).
inline Complex bob_displacement(Complex beta) { return std::conj(beta); }

FockOperator heterodyne_povm(Complex alpha, Complex beta, const TruncationConfig& trunc);

/// Probability density of outcome beta for a resource rho_ab (modes a, b).
double outcome_probability(const DensityOperator& rho_ab, Complex alpha, Complex beta);

/// Bob's normalized state conditioned on outcome beta, before displacement.
DensityOperator conditional_state_b(const DensityOperator& rho_ab, Complex alpha, Complex beta);

/// Bob's state after his displacement. The output space is enlarged until the
/// displaced support is captured to within the resource's tail_tol.
DensityOperator teleported_state(const DensityOperator& rho_ab, Complex alpha, Complex beta);

/// <alpha| rho_out |alpha>
double conditional_fidelity(const DensityOperator& rho_ab, Complex alpha, Complex beta);

struct TeleportOutcome {
  Complex beta;
  double prob_density;
  DensityOperator rho_out;
  double fidelity;
};

TeleportOutcome teleport_outcome(const DensityOperator& rho_ab, Complex alpha, Complex beta);

struct QuadratureGrid {
  int radial_nodes = 40;
  int angular_nodes = 64;
  double radius = 6.0;
};

/// Default rule for a resource: 40 x 64 nodes, radius at least
/// max(6, |alpha| + 6) and wide enough for the heterodyne distribution of
/// the resource's mode a to have decayed below ~1e-12.
QuadratureGrid default_grid(const DensityOperator& rho_ab, Complex alpha,
                            int radial_nodes = 40, int angular_nodes = 64);

struct TeleportIntegral {
  double fidelity = 0.0;       // integral of p F
  double normalization = 0.0;  // integral of p
  double tail_mass = 0.0;      // |1 - normalization|
  std::size_t nodes = 0;
};

/// Integrates p(beta) and p(beta) F(beta) over a disk centred at -alpha*,
/// where the integrand is centred. Nodes run in parallel; the reduction is
/// pairwise in node order, so the result does not depend on thread count.
/// Throws TruncationError when the disk misses more than kQuadratureTailTol
/// of the outcome distribution.
TeleportIntegral integrate_teleportation(const DensityOperator& rho_ab, Complex alpha,
                                         const QuadratureGrid& grid);

double average_fidelity_quadrature(const DensityOperator& rho_ab, Complex alpha,
                                   const QuadratureGrid& grid);
double average_fidelity_quadrature(const DensityOperator& rho_ab, Complex alpha);

/// Outcome-averaged fidelity with the IPS resource, summed in closed form.
double average_fidelity_closed(double x, double tau_eff);

/// (1 + x) / 2
double twb_average_fidelity(double x);

}  // namespace ipstele
