#pragma once

#include <complex>
#include <vector>

namespace ipstele {

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lo, hi].
GaussLegendreRule gauss_legendre(int n, double lo, double hi);

struct PlaneNode {
  std::complex<double> point;
  double weight;
};

/// Disk of radius `radius` around `center`: Gauss-Legendre in r (with the
/// Jacobian r folded into the weights) times the trapezoid rule in angle.
/// Nodes are ordered radial-major.
std::vector<PlaneNode> polar_disk_rule(std::complex<double> center, double radius, int radial_nodes,
                                       int angular_nodes);

}  // namespace ipstele
