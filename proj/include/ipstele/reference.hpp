#pragma once

// Straightforward serial versions of the parallel kernels. They are slower
// and share as little code with the kernels as practical; tests and the
// benchmark compare the two.

#include "ipstele/ips.hpp"
#include "ipstele/teleport.hpp"

namespace ipstele::reference {

/// Node-by-node average fidelity: for every node the full conditional state
/// is built, displaced and overlapped with |alpha>.
TeleportIntegral integrate_teleportation(const DensityOperator& rho_ab, Complex alpha,
                                         const QuadratureGrid& grid);

/// IPS photon-number moments from the explicit diagonal, O(d^3).
IpsMoments ips_moments(const IpsParams& params, int dim);

}  // namespace ipstele::reference
