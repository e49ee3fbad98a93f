#pragma once

#include "dtc/floquet.hpp"

namespace dtc::detail {

// Full density-matrix evolution of the dephased Floquet channel. Used by
// evolve_exact for p > 0; requires n <= kMaxDensityQubits.
MagnetizationTrace evolve_exact_density(const FloquetParams& params);

}  // namespace dtc::detail
