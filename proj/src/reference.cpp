#include "ipstele/reference.hpp"

#include <cmath>
#include <vector>

#include "ipstele/binomial.hpp"
#include "ipstele/quadrature.hpp"

namespace ipstele::reference {

TeleportIntegral integrate_teleportation(const DensityOperator& rho_ab, Complex alpha,
                                         const QuadratureGrid& grid) {
  const std::vector<PlaneNode> nodes =
      polar_disk_rule(-std::conj(alpha), grid.radius, grid.radial_nodes, grid.angular_nodes);
  TeleportIntegral out;
  for (const PlaneNode& node : nodes) {
    const double p = outcome_probability(rho_ab, alpha, node.point);
    out.normalization += node.weight * p;
    if (p > 1e-300) out.fidelity += node.weight * p * conditional_fidelity(rho_ab, alpha, node.point);
  }
  out.tail_mass = std::abs(1.0 - out.normalization);
  out.nodes = nodes.size();
  return out;
}

IpsMoments ips_moments(const IpsParams& params, int dim) {
  const double x = params.x();
  const double tau = params.tau();
  const double eta = params.eta();
  double z = 0.0, na = 0.0, nb = 0.0, diff2 = 0.0;
  for (int n = 0; n < dim; ++n) {
    const double xw = std::pow(x, 2.0 * n);
    for (int h = 1; h <= n; ++h) {
      const double gh = 1.0 - std::pow(1.0 - eta, h);
      for (int k = 1; k <= n; ++k) {
        const double gk = 1.0 - std::pow(1.0 - eta, k);
        // diagonal element at |n-h, n-k>
        const double w = xw * binomial_pmf(n, h, tau) * binomial_pmf(n, k, tau) * gh * gk;
        z += w;
        na += w * (n - h);
        nb += w * (n - k);
        diff2 += w * static_cast<double>(k - h) * (k - h);
      }
    }
  }
  IpsMoments m;
  m.weight = (1.0 - x * x) * z;
  m.mean_a = na / z;
  m.mean_b = nb / z;
  const double d = m.mean_a - m.mean_b;
  m.var_diff = diff2 / z - d * d;
  return m;
}

}  // namespace ipstele::reference
