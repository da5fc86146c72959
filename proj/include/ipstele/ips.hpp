#pragma once

// Inconclusive photon subtraction: each twin-beam arm passes a beam splitter
// and the reflected modes (c, d) are watched by ON/OFF detectors; the state
// of (a, b) is kept when both detectors click.

#include <array>
#include <utility>

#include "ipstele/fock.hpp"

namespace ipstele {

/// Protocol knobs (x, tau, eta). tau_eff = 1 - eta (1 - tau).
class IpsParams {
 public:
  IpsParams(double x, double tau, double eta);

  /// (x, tau_eff, eta = 1): the ideal-detector parametrization.
  static IpsParams effective(double x, double tau_eff) { return IpsParams(x, tau_eff, 1.0); }

  double x() const { return x_; }
  double tau() const { return tau_; }
  double eta() const { return eta_; }
  double tau_eff() const;
  bool can_condition() const { return eta_ * (1.0 - tau_) > 0.0; }

 private:
  double x_;
  double tau_;
  double eta_;
};

double effective_transmissivity(double tau, double eta);

/// {Pi_0, Pi_1} of one ON/OFF detector with quantum efficiency eta.
std::pair<FockOperator, FockOperator> on_off_povm(double eta, const TruncationConfig& trunc);

/// {Pi_00, Pi_01, Pi_10, Pi_11} on the two detected modes (c, d).
std::array<FockOperator, 4> product_povm(double eta, const TruncationConfig& trunc);
FockOperator product_povm_11(double eta, const TruncationConfig& trunc);

/// Weight of the term with h photons reflected from a and k from b.
double f_hk(int h, int k, double tau, double eta);

/// Double-click probability written in (x, tau, eta).
double p11_closed(const IpsParams& params);
/// Double-click probability written in (x, tau_eff).
double p11_effective(double x, double tau_eff);

/// Per-mode cutoff for conditional IPS quantities: x^(2d) <= tail_tol * p11,
/// which bounds the mass lost after renormalizing by p11.
int ips_cutoff(const IpsParams& params, double tail_tol = TruncationConfig::kDefaultTailTol);
TruncationConfig ips_truncation(const IpsParams& params,
                                double tail_tol = TruncationConfig::kDefaultTailTol);

/// Tr{ rho_BS 1 (x) 1 (x) Pi_11 } from the simulated four-mode state.
/// `trunc` is the (a, b) space; the detected modes share its cutoff.
double p11_numerical(const IpsParams& params, const TruncationConfig& trunc);

/// Conditional (a, b) state by simulating beam splitters, detection and the
/// partial trace over (c, d).
DensityOperator ips_state_simulated(const IpsParams& params, const TruncationConfig& trunc);

/// Conditional (a, b) state from the explicit double-sum matrix elements.
DensityOperator ips_state_direct(const IpsParams& params, const TruncationConfig& trunc);

/// Photon-number moments of the IPS state, computed from the diagonal of the
/// conditional state (its photon-number distribution) in O(d^2). Usable far
/// beyond the cutoffs where dense states fit in memory.
struct IpsMoments {
  double weight = 0.0;     // unnormalized trace: p11 up to truncation
  double mean_a = 0.0;
  double mean_b = 0.0;
  double var_diff = 0.0;   // <(n_a - n_b)^2> - <n_a - n_b>^2
};

IpsMoments ips_moments(const IpsParams& params, int dim);
IpsMoments ips_moments(const IpsParams& params, double tail_tol = TruncationConfig::kDefaultTailTol);

}  // namespace ipstele
