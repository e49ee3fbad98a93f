#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dtc/reference.hpp"
#include "dtc/seed.hpp"
#include "dtc/state.hpp"

// Shared test helpers: deterministic random states, phase-insensitive
// comparisons, and a small Jacobi eigensolver for the positivity checks.

namespace dtc::test {

inline cdouble random_unit_complex(SplitMix64& rng) {
    return {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
}

inline PureState random_pure_state(int n, SplitMix64& rng) {
    PureState s(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = random_unit_complex(rng);
        norm += std::norm(s[i]);
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= inv;
    return s;
}

// Mixture of a few random pure states: Hermitian, PSD, unit trace.
inline DensityMatrix random_density_matrix(int n, SplitMix64& rng, int rank = 4) {
    DensityMatrix rho(n);
    const std::size_t d = rho.dim();
    for (std::size_t i = 0; i < d * d; ++i) rho.data()[i] = 0.0;
    std::vector<double> w(static_cast<std::size_t>(rank));
    double wsum = 0.0;
    for (double& x : w) {
        x = rng.uniform(0.05, 1.0);
        wsum += x;
    }
    for (int m = 0; m < rank; ++m) {
        const PureState psi = random_pure_state(n, rng);
        const double weight = w[static_cast<std::size_t>(m)] / wsum;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                rho.at(r, c) += weight * psi[r] * std::conj(psi[c]);
            }
        }
    }
    return rho;
}

inline double max_abs_diff(const PureState& a, const PureState& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

// Max deviation after aligning the global phase of b to a.
inline double max_abs_diff_up_to_phase(const PureState& a, const PureState& b) {
    cdouble overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(b[i]) * a[i];
    const double mag = std::abs(overlap);
    const cdouble phase = mag > 0.0 ? overlap / mag : cdouble{1.0, 0.0};
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - phase * b[i]));
    return m;
}

// Smallest eigenvalue of a Hermitian matrix via cyclic Jacobi on the real
// symmetric embedding [[Re, -Im], [Im, Re]] (eigenvalues appear twice).
inline double min_eigenvalue_hermitian(const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    const std::size_t n2 = 2 * d;
    std::vector<double> a(n2 * n2);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const cdouble v = rho.at(r, c);
            a[r * n2 + c] = v.real();
            a[r * n2 + (c + d)] = -v.imag();
            a[(r + d) * n2 + c] = v.imag();
            a[(r + d) * n2 + (c + d)] = v.real();
        }
    }
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n2; ++p)
            for (std::size_t q = p + 1; q < n2; ++q) off += a[p * n2 + q] * a[p * n2 + q];
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n2; ++p) {
            for (std::size_t q = p + 1; q < n2; ++q) {
                const double apq = a[p * n2 + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q * n2 + q] - a[p * n2 + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n2; ++k) {
                    const double akp = a[k * n2 + p];
                    const double akq = a[k * n2 + q];
                    a[k * n2 + p] = c * akp - s * akq;
                    a[k * n2 + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n2; ++k) {
                    const double apk = a[p * n2 + k];
                    const double aqk = a[q * n2 + k];
                    a[p * n2 + k] = c * apk - s * aqk;
                    a[q * n2 + k] = s * apk + c * aqk;
                }
            }
        }
    }
    double mn = a[0];
    for (std::size_t k = 1; k < n2; ++k) mn = std::min(mn, a[k * n2 + k]);
    return mn;
}

}  // namespace dtc::test
