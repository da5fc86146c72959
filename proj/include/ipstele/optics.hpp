#pragma once

// Optical states and elements: twin beam, coherent states, beam splitters,
// displacements, and the four-mode state after both beam splitters.

#include "ipstele/fock.hpp"

namespace ipstele {

/// Beam splitter of transmissivity tau, mixing angle lambda = arctan sqrt((1-tau)/tau).
class BeamSplitterSpec {
 public:
  explicit BeamSplitterSpec(double tau);
  double tau() const { return tau_; }
  double lambda() const;

 private:
  double tau_;
};

/// Twin-beam parameter x = tanh(G), 0 < x < 1.
class TwbSpec {
 public:
  explicit TwbSpec(double x);
  double x() const { return x_; }
  double gain() const;

 private:
  double x_;
};

/// Smallest per-mode cutoff d with x^(2d) <= tail_tol (x^(2d) is the exact
/// twin-beam mass beyond the cutoff).
int twb_cutoff(double x, double tail_tol = TruncationConfig::kDefaultTailTol);

/// Smallest cutoff with coherent-state mass beyond it at most tail_tol.
int coherent_cutoff(Complex alpha, double tail_tol = TruncationConfig::kDefaultTailTol);

PureState twb_state(const TwbSpec& spec, const TruncationConfig& trunc);
PureState twb_state(const TwbSpec& spec, double tail_tol = TruncationConfig::kDefaultTailTol);

/// e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n < dim, not renormalized. These are
/// the exact overlaps <n|alpha>, so projecting a state supported on the first
/// `dim` levels onto them is exact whatever the coherent tail.
CVector coherent_amplitudes(Complex alpha, int dim);

PureState coherent_state(Complex alpha, const TruncationConfig& trunc);

FockOperator beam_splitter_unitary(const BeamSplitterSpec& spec, const TruncationConfig& trunc);

/// Exact Fock matrix elements <m|D(beta)|n> for m < rows, n < cols.
CMatrix displacement_matrix(Complex beta, int rows, int cols);

FockOperator displacement_operator(Complex beta, const TruncationConfig& trunc);

/// U_ac(tau) U_bd(tau) |twb>_ab |0>_c |0>_d on modes (a, b, c, d), all with
/// the cutoff of the twin beam.
PureState post_bs_state(const TwbSpec& twb, const BeamSplitterSpec& bs, const TruncationConfig& trunc);

/// Same state from the explicit double-sum expansion of the amplitudes.
PureState post_bs_state_explicit(const TwbSpec& twb, const BeamSplitterSpec& bs,
                                 const TruncationConfig& trunc);

/// Single-mode pure-loss channel of transmissivity t applied to every mode
/// listed in `modes` of rho.
DensityOperator apply_loss(const DensityOperator& rho, double t, std::span<const int> modes);

}  // namespace ipstele
