#pragma once

#include <cstdint>
#include <vector>

#include "dtc/seed.hpp"
#include "dtc/state.hpp"

// The disordered DTC Floquet step and the two noise backends:
//   evolve_exact      - full density matrix, dephasing channel applied
//                       exactly each period (no sampling error)
//   evolve_trajectory - pure state with Z gates inserted after each period
//                       per a sampled NoiseConfiguration; the ensemble
//                       average realizes the same channel
// One period applies the kick layer (every qubit), then the coupling layer
// (bonds 0..n-2, open boundary), then for the exact backend the dephasing
// channel on every qubit. Observables are indexed by step number k = 1..K.

namespace dtc {

struct FloquetParams {
    int n = 0;                      // chain length
    double eps = 0.0;               // kick perturbation, [0, 1]
    std::vector<double> couplings;  // n-1 bond angles J_q
    double p = 0.0;                 // per-qubit dephasing probability, [0, 1]
    int steps = 0;                  // stroboscopic periods K

    void validate() const;  // throws std::invalid_argument on violation
};

struct DisorderSpec {
    int count = 0;  // realizations
    double low = 0.0;
    double high = 0.0;
    std::uint64_t master_seed = 0;
};

// Z-insertion pattern of one trajectory: flip[(k-1)*n + q] != 0 means a Z
// (rotation angle pi) hits qubit q after step k. Sampling draws one
// Bernoulli(p) per qubit per period, k-major then q.
struct NoiseConfiguration {
    int steps = 0;
    int n = 0;
    std::vector<std::uint8_t> flip;

    static NoiseConfiguration none(int steps, int n);
    static NoiseConfiguration sample(int steps, int n, double p, SplitMix64& stream);
    bool any() const;
};

// Site-averaged <Z> after step k, for k = 1..K. The t = 0 value is not
// stored.
struct MagnetizationTrace {
    std::vector<double> values;

    int steps() const { return static_cast<int>(values.size()); }
};

struct AveragedTrace {
    MagnetizationTrace mean;
    std::vector<double> standard_error;  // per step
    int trajectory_count = 0;
};

// n-1 independent uniforms in [low, high) from the stream derived from
// (master_seed, disorder tag, realization). Identical on any platform,
// thread count and schedule.
std::vector<double> sample_disorder(const DisorderSpec& spec, std::uint64_t realization, int n);

void floquet_step(PureState& state, const FloquetParams& params);
void floquet_step(DensityMatrix& rho, const FloquetParams& params);

// Exact channel evolution from |0><0|^n; requires n <= 12. At p = 0 the
// channel is the identity and the evolution runs on the pure backend.
MagnetizationTrace evolve_exact(const FloquetParams& params);

// One trajectory = one noise configuration, mirroring one hardware circuit.
MagnetizationTrace evolve_trajectory(const FloquetParams& params, const NoiseConfiguration& noise);

// Mean trace and per-step standard error over trajectory_count
// configurations sampled from streams keyed by (key, trajectory index).
AveragedTrace trajectory_average(const FloquetParams& params, int trajectory_count,
                                 const StreamKey& key);

}  // namespace dtc
