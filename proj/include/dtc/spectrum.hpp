#pragma once

#include <vector>

#include "dtc/floquet.hpp"

// Fourier analysis of magnetization traces. The trace starts at t = T
// (k = 1), and the bin amplitude at grid frequency j is
//     |(1/K) sum_{k=1..K} m_k exp(-2 pi i j k / K)|,
// so a perfectly alternating trace gives amplitude 1 at j = K/2. The order
// parameter h is exactly that j = K/2 bin, which with e^{-i pi k} = (-1)^k
// reduces to the alternating sum |(1/K) sum (-1)^k m_k|. K must be even so
// that half the drive frequency lies on the grid.

namespace dtc {

struct Spectrum {
    std::vector<double> freq;       // j/K, in units of the drive frequency
    std::vector<double> amplitude;  // |c_j| for j = 0..K/2
};

// Direct O(K^2) summation; K stays small enough that a fast transform
// would buy nothing.
Spectrum dft_spectrum(const MagnetizationTrace& trace);

// The subharmonic amplitude h at omega_0 / 2. Throws on odd K.
double order_parameter(const MagnetizationTrace& trace);

}  // namespace dtc
