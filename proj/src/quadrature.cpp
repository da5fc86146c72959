#include "ipstele/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ipstele/errors.hpp"

namespace ipstele {

GaussLegendreRule gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  GaussLegendreRule rule{std::vector<double>(static_cast<std::size_t>(n)),
                         std::vector<double>(static_cast<std::size_t>(n))};
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    const auto lo_i = static_cast<std::size_t>(i);
    const auto hi_i = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo_i] = mid - half * z;
    rule.nodes[hi_i] = mid + half * z;
    rule.weights[lo_i] = 2.0 * half / ((1.0 - z * z) * pp * pp);
    rule.weights[hi_i] = rule.weights[lo_i];
  }
  return rule;
}

std::vector<PlaneNode> polar_disk_rule(std::complex<double> center, double radius, int radial_nodes,
                                       int angular_nodes) {
  if (!(radius > 0.0)) throw DomainError("polar rule: radius must be positive");
  if (angular_nodes < 1) throw DomainError("polar rule: need at least one angular node");
  const GaussLegendreRule radial = gauss_legendre(radial_nodes, 0.0, radius);
  const double dtheta = 2.0 * std::numbers::pi / angular_nodes;
  std::vector<PlaneNode> out;
  out.reserve(static_cast<std::size_t>(radial_nodes) * static_cast<std::size_t>(angular_nodes));
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double r = radial.nodes[i];
    for (int j = 0; j < angular_nodes; ++j) {
      out.push_back({center + std::polar(r, j * dtheta), radial.weights[i] * r * dtheta});
    }
  }
  return out;
}

}  // namespace ipstele
