#include "ipstele/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ipstele/errors.hpp"
#include "ipstele/optics.hpp"
#include "ipstele/quadrature.hpp"
#include "ipstele/summation.hpp"

namespace ipstele {

namespace {

constexpr double kInvPi = std::numbers::inv_pi;
constexpr double kMinProbability = 1e-300;

void require_two_modes(const DensityOperator& rho) {
  if (rho.trunc().modes() != 2) throw DimensionError("teleportation: resource must have two modes (a, b)");
}

// sigma_b = <g|_a rho |g>_a, unnormalized. `u` holds <n|g> for n < d_a.
CMatrix project_mode_a(const DensityOperator& rho, const CVector& u) {
  const int da = rho.trunc().dim(0);
  const int db = rho.trunc().dim(1);
  const CMatrix& r = rho.matrix();
  CMatrix t = CMatrix::Zero(r.rows(), db);
  for (int a = 0; a < da; ++a) t.noalias() += u(a) * r.middleCols(static_cast<Index>(a) * db, db);
  CMatrix s = CMatrix::Zero(db, db);
  for (int a = 0; a < da; ++a) s.noalias() += std::conj(u(a)) * t.middleRows(static_cast<Index>(a) * db, db);
  return s;
}

double mean_photons_a(const DensityOperator& rho) {
  const int db = rho.trunc().dim(1);
  double n = 0.0;
  for (Index i = 0; i < rho.matrix().rows(); ++i) n += static_cast<double>(i / db) * rho.element(i, i).real();
  return n / rho.trace();
}

// Rows of D(-d) needed so every column keeps all but `tol` of its norm.
CMatrix bob_unitary_block(Complex delta, int cols, int min_rows, double tol) {
  const double r = std::abs(delta);
  int rows = std::max({cols, min_rows, static_cast<int>(std::ceil(std::pow(r + std::sqrt(cols) + 6.0, 2)))});
  const int cap = std::max(4 * rows, 4096);
  double prev_deficit = 2.0;
  for (;;) {
    CMatrix d = displacement_matrix(-delta, rows, cols);
    const double deficit = 1.0 - d.colwise().squaredNorm().minCoeff();
    // Past ~1e-13 the deficit is rounding in the Laguerre values, not tail.
    if (deficit <= tol || (deficit <= 1e-10 && deficit >= prev_deficit)) return d;
    if (rows >= cap) {
      throw TruncationError("teleportation: displaced state keeps " + std::to_string(deficit) +
                            " outside " + std::to_string(rows) + " levels");
    }
    prev_deficit = deficit;
    rows += rows / 2 + 8;
  }
}

}  // namespace

FockOperator heterodyne_povm(Complex alpha, Complex beta, const TruncationConfig& trunc) {
  if (trunc.modes() != 1) throw DimensionError("heterodyne POVM: single-mode truncation required");
  const Complex g = heterodyne_center(alpha, beta);
  const CVector u = coherent_amplitudes(g, trunc.dim(0));
  const double tail = 1.0 - u.squaredNorm();
  if (tail > trunc.tail_tol()) {
    throw TruncationError("heterodyne POVM: |alpha* + beta|^2 = " + std::to_string(std::norm(g)) +
                          " leaves tail mass " + std::to_string(tail) + " beyond cutoff " +
                          std::to_string(trunc.dim(0)));
  }
  return FockOperator::dense(trunc, kInvPi * (u * u.adjoint()));
}

double outcome_probability(const DensityOperator& rho_ab, Complex alpha, Complex beta) {
  require_two_modes(rho_ab);
  const CVector u = coherent_amplitudes(heterodyne_center(alpha, beta), rho_ab.trunc().dim(0));
  return std::max(0.0, kInvPi * project_mode_a(rho_ab, u).trace().real());
}

DensityOperator conditional_state_b(const DensityOperator& rho_ab, Complex alpha, Complex beta) {
  require_two_modes(rho_ab);
  const CVector u = coherent_amplitudes(heterodyne_center(alpha, beta), rho_ab.trunc().dim(0));
  CMatrix s = project_mode_a(rho_ab, u);
  const double p = kInvPi * s.trace().real();
  if (!(p >= kMinProbability)) {
    throw ConditioningError("teleportation: outcome probability " + std::to_string(p) +
                            " is numerically zero; the conditional state is undefined");
  }
  s /= s.trace().real();
  return DensityOperator(rho_ab.trunc().select(std::vector<int>{1}), std::move(s));
}

DensityOperator teleported_state(const DensityOperator& rho_ab, Complex alpha, Complex beta) {
  const DensityOperator rho_b = conditional_state_b(rho_ab, alpha, beta);
  const double tol = rho_ab.trunc().tail_tol();
  const int db = rho_b.trunc().dim(0);
  const CMatrix d = bob_unitary_block(bob_displacement(beta), db, coherent_cutoff(alpha, tol), tol);
  CMatrix out = d * rho_b.matrix() * d.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(single_mode(static_cast<int>(d.rows()), tol), std::move(out));
}

double conditional_fidelity(const DensityOperator& rho_ab, Complex alpha, Complex beta) {
  const DensityOperator out = teleported_state(rho_ab, alpha, beta);
  const CVector c = coherent_amplitudes(alpha, out.trunc().dim(0));
  return c.dot(out.matrix() * c).real();
}

TeleportOutcome teleport_outcome(const DensityOperator& rho_ab, Complex alpha, Complex beta) {
  DensityOperator out = teleported_state(rho_ab, alpha, beta);
  const CVector c = coherent_amplitudes(alpha, out.trunc().dim(0));
  const double f = c.dot(out.matrix() * c).real();
  return {beta, outcome_probability(rho_ab, alpha, beta), std::move(out), f};
}

QuadratureGrid default_grid(const DensityOperator& rho_ab, Complex alpha, int radial_nodes,
                            int angular_nodes) {
  require_two_modes(rho_ab);
  // The outcome density is the Q function of mode a shifted to -alpha*; a
  // thermal-like Q function decays as exp(-r^2 / (n_a + 1)).
  const double spread = std::sqrt((mean_photons_a(rho_ab) + 1.0) * std::log(1e12));
  QuadratureGrid g;
  g.radial_nodes = radial_nodes;
  g.angular_nodes = angular_nodes;
  g.radius = std::max({6.0, std::abs(alpha) + 6.0, spread});
  return g;
}

TeleportIntegral integrate_teleportation(const DensityOperator& rho_ab, Complex alpha,
                                         const QuadratureGrid& grid) {
  require_two_modes(rho_ab);
  if (grid.radial_nodes < 1 || grid.angular_nodes < 1 || !(grid.radius > 0.0)) {
    throw DomainError("quadrature grid: node counts must be positive and the radius > 0");
  }
  const int da = rho_ab.trunc().dim(0);
  const int db = rho_ab.trunc().dim(1);
  const std::vector<PlaneNode> nodes =
      polar_disk_rule(-std::conj(alpha), grid.radius, grid.radial_nodes, grid.angular_nodes);
  const CMatrix& r = rho_ab.matrix();
  const CMatrix rho_a = [&] {
    CMatrix m = CMatrix::Zero(da, da);
    for (int a = 0; a < da; ++a)
      for (int c = 0; c < da; ++c)
        for (int b = 0; b < db; ++b) m(a, c) += r(static_cast<Index>(a) * db + b, static_cast<Index>(c) * db + b);
    return m;
  }();

  const auto count = static_cast<std::ptrdiff_t>(nodes.size());
  std::vector<double> p_terms(nodes.size()), pf_terms(nodes.size());

  // Per node: p = <g|rho_a|g> / pi and p F = <v|rho|v> / pi with
  // v = |g> (x) D(beta*)|alpha>. D(beta*)|alpha> is |alpha + beta*> up to a
  // global phase, so v is a product of two truncated coherent vectors.
#pragma omp parallel
  {
    CVector v(r.rows());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const PlaneNode& node = nodes[static_cast<std::size_t>(i)];
      const Complex beta = node.point;
      const CVector u = coherent_amplitudes(heterodyne_center(alpha, beta), da);
      const CVector w = coherent_amplitudes(alpha + bob_displacement(beta), db);
      for (int a = 0; a < da; ++a) v.segment(static_cast<Index>(a) * db, db) = u(a) * w;
      const double p = u.dot(rho_a * u).real();
      const double pf = v.dot(r * v).real();
      p_terms[static_cast<std::size_t>(i)] = node.weight * kInvPi * p;
      pf_terms[static_cast<std::size_t>(i)] = node.weight * kInvPi * pf;
    }
  }

  TeleportIntegral out;
  out.normalization = pairwise_sum(std::span<const double>(p_terms));
  out.fidelity = pairwise_sum(std::span<const double>(pf_terms));
  out.tail_mass = std::abs(1.0 - out.normalization);
  out.nodes = nodes.size();
  if (out.tail_mass > kQuadratureTailTol) {
    throw TruncationError("quadrature: outcome density integrates to " + std::to_string(out.normalization) +
                          " over radius " + std::to_string(grid.radius) +
                          "; increase the radius or the node counts");
  }
  return out;
}

double average_fidelity_quadrature(const DensityOperator& rho_ab, Complex alpha, const QuadratureGrid& grid) {
  return integrate_teleportation(rho_ab, alpha, grid).fidelity;
}

double average_fidelity_quadrature(const DensityOperator& rho_ab, Complex alpha) {
  return average_fidelity_quadrature(rho_ab, alpha, default_grid(rho_ab, alpha));
}

double average_fidelity_closed(double x, double tau_eff) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("average fidelity: x must lie in [0, 1)");
  if (!(tau_eff > 0.0 && tau_eff <= 1.0)) throw DomainError("average fidelity: tau_eff must lie in (0, 1]");
  const double t = tau_eff;
  const double x2 = x * x;
  const double num = (1.0 + x) * (1.0 + x * t) * (1.0 - x2 * t) * (2.0 - 2.0 * x * t + x2 * t);
  const double den = (1.0 + x2 * t) * (1.0 + (1.0 - t) * x) * (2.0 - (2.0 + (1.0 - t) * x) * x * t);
  return 0.5 * num / den;
}

double twb_average_fidelity(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("TWB fidelity: x must lie in [0, 1)");
  return 0.5 * (1.0 + x);
}

}  // namespace ipstele
