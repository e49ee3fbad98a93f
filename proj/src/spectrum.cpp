#include "dtc/spectrum.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dtc {

namespace {

// |(1/K) sum (-1)^k m_k|: the j = K/2 bin with its exact sign pattern, so
// order_parameter and dft_spectrum share one arithmetic path for that bin.
double alternating_amplitude(const MagnetizationTrace& trace) {
    const int k_steps = trace.steps();
    double acc = 0.0;
    for (int k = 1; k <= k_steps; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc += sign * trace.values[static_cast<std::size_t>(k - 1)];
    }
    return std::abs(acc) / k_steps;
}

}  // namespace

Spectrum dft_spectrum(const MagnetizationTrace& trace) {
    const int k_steps = trace.steps();
    if (k_steps < 2) {
        throw std::invalid_argument("dft_spectrum: need at least 2 periods, got " +
                                    std::to_string(k_steps));
    }
    Spectrum spec;
    const int bins = k_steps / 2 + 1;
    spec.freq.reserve(static_cast<std::size_t>(bins));
    spec.amplitude.reserve(static_cast<std::size_t>(bins));
    for (int j = 0; j < bins; ++j) {
        spec.freq.push_back(static_cast<double>(j) / k_steps);
        if (2 * j == k_steps) {
            spec.amplitude.push_back(alternating_amplitude(trace));
            continue;
        }
        cdouble acc{0.0, 0.0};
        for (int k = 1; k <= k_steps; ++k) {
            // Reduce j*k mod K before forming the angle.
            const int r = (j * k) % k_steps;
            const double angle = -2.0 * std::numbers::pi * r / k_steps;
            acc += trace.values[static_cast<std::size_t>(k - 1)] * std::polar(1.0, angle);
        }
        spec.amplitude.push_back(std::abs(acc) / k_steps);
    }
    return spec;
}

double order_parameter(const MagnetizationTrace& trace) {
    const int k_steps = trace.steps();
    if (k_steps < 2 || k_steps % 2 != 0) {
        throw std::invalid_argument(
            "order_parameter: the subharmonic bin requires an even number of periods, got K=" +
            std::to_string(k_steps));
    }
    return alternating_amplitude(trace);
}

}  // namespace dtc
