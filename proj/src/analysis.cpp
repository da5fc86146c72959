#include "ipstele/analysis.hpp"

#include <cmath>

#include "ipstele/errors.hpp"

namespace ipstele {

double twb_entanglement(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("twb_entanglement: x must lie in (0, 1)");
  const double x2 = x * x;
  return -std::log1p(-x2) - x2 * std::log(x2) / (1.0 - x2);
}

double twb_entanglement_from_photons(double total_photons) {
  if (!(total_photons > 0.0)) throw DomainError("twb_entanglement_from_photons: N must be positive");
  const double h = 0.5 * total_photons;
  return std::log1p(h) + h * std::log1p(1.0 / h);
}

double twb_mean_photons(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("twb_mean_photons: x must lie in [0, 1)");
  return 2.0 * x * x / (1.0 - x * x);
}

double subtracted_twb_mean_photons(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("subtracted_twb_mean_photons: x must lie in [0, 1)");
  const double y = x * x;
  return 4.0 * y * (2.0 + y) / (1.0 - y * y);
}

std::pair<double, double> mean_photons_numerical(const DensityOperator& rho) {
  if (rho.trunc().modes() != 2) throw DimensionError("mean photons: two-mode state required");
  return {expectation(rho, number_operator(rho.trunc(), 0)).real(),
          expectation(rho, number_operator(rho.trunc(), 1)).real()};
}

double difference_squeezing_closed(double x, double tau_eff) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("difference squeezing: x must lie in (0, 1)");
  if (!(tau_eff > 0.0 && tau_eff <= 1.0)) {
    throw DomainError("difference squeezing: tau_eff must lie in (0, 1]");
  }
  if (tau_eff == 1.0) return 0.0;
  const double t = tau_eff;
  const double x2 = x * x;
  const double num = (1.0 - t) * std::pow(1.0 - x2 * t * t, 2) * (2.0 - x2 - x2 * x2 * t);
  const double den =
      (1.0 + t) * (1.0 - x2 * t) * (2.0 - x2 * (1.0 + t + t * t) + x2 * x2 * x2 * t * t * t);
  return num / den;
}

CorrelationReport correlation_report(const DensityOperator& rho) {
  const TruncationConfig& trunc = rho.trunc();
  if (trunc.modes() != 2) throw DimensionError("correlation report: two-mode state required");
  const CVector diag = rho.matrix().diagonal();
  double na = 0.0, nb = 0.0, dm = 0.0, d2 = 0.0;
  for (Index i = 0; i < diag.size(); ++i) {
    const auto idx = trunc.multi_index(i);
    const double p = diag(i).real();
    const double diff = idx[0] - idx[1];
    na += p * idx[0];
    nb += p * idx[1];
    dm += p * diff;
    d2 += p * diff * diff;
  }
  CorrelationReport r;
  r.mean_a = na;
  r.mean_b = nb;
  r.var_diff = d2 - dm * dm;
  if (!(na + nb > 0.0)) throw DomainError("correlation report: zero total photon number");
  r.delta_ab = r.var_diff / (na + nb);
  return r;
}

CorrelationReport correlation_report(const IpsMoments& m) {
  CorrelationReport r;
  r.mean_a = m.mean_a;
  r.mean_b = m.mean_b;
  r.var_diff = m.var_diff;
  if (!(m.mean_a + m.mean_b > 0.0)) throw DomainError("correlation report: zero total photon number");
  r.delta_ab = m.var_diff / (m.mean_a + m.mean_b);
  return r;
}

double von_neumann_entropy(const DensityOperator& rho) {
  const CMatrix herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-15) s -= l * std::log(l);
  }
  return s;
}

}  // namespace ipstele
