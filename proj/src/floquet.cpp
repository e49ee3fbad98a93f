#include "dtc/floquet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "exact_engine.hpp"
#include "parallel_for.hpp"

namespace dtc {

namespace {

constexpr std::size_t kParallelCutoff = std::size_t{1} << 16;

// The coupling layer is one diagonal phase exp(i sum_q J_q z_q z_{q+1}).
// The angle splits into contributions from the low and high halves of the
// index plus the one bond that straddles the split, so the pass needs two
// half-size tables instead of a 2^n one (the pure backend goes up to
// n = 24).
class CouplingPhasePass {
  public:
    explicit CouplingPhasePass(const FloquetParams& params) : n_(params.n) {
        if (n_ < 2) return;
        mid_ = n_ / 2;
        const auto& j = params.couplings;

        low_.resize(std::size_t{1} << mid_);
        for (std::size_t il = 0; il < low_.size(); ++il) {
            double angle = 0.0;
            for (int q = 0; q + 1 <= mid_ - 1; ++q) {
                angle += j[static_cast<std::size_t>(q)] * sign_bit(il, q) * sign_bit(il, q + 1);
            }
            low_[il] = std::polar(1.0, angle);
        }

        high_.resize(std::size_t{1} << (n_ - mid_));
        for (std::size_t ih = 0; ih < high_.size(); ++ih) {
            double angle = 0.0;
            for (int q = mid_; q + 1 <= n_ - 1; ++q) {
                angle += j[static_cast<std::size_t>(q)] * sign_bit(ih, q - mid_) *
                         sign_bit(ih, q + 1 - mid_);
            }
            high_[ih] = std::polar(1.0, angle);
        }

        cross_eq_ = std::polar(1.0, j[static_cast<std::size_t>(mid_ - 1)]);
        cross_ne_ = std::conj(cross_eq_);
    }

    void apply(PureState& state) const {
        if (n_ < 2) return;
        cdouble* v = state.data();
        const std::size_t size = state.size();
        const std::size_t lowmask = (std::size_t{1} << mid_) - 1;
        const int mid = mid_;
        detail::indexed_loop(static_cast<std::ptrdiff_t>(size), size >= kParallelCutoff,
                             [&](std::ptrdiff_t i) {
                                 const std::size_t u = static_cast<std::size_t>(i);
                                 cdouble ph = low_[u & lowmask] * high_[u >> mid];
                                 ph *= (((u >> (mid - 1)) ^ (u >> mid)) & 1u) ? cross_ne_
                                                                              : cross_eq_;
                                 v[u] *= ph;
                             });
    }

  private:
    static double sign_bit(std::size_t value, int bit) {
        return ((value >> bit) & 1u) ? -1.0 : 1.0;
    }

    int n_;
    int mid_ = 0;
    std::vector<cdouble> low_, high_;
    cdouble cross_eq_{1.0, 0.0}, cross_ne_{1.0, 0.0};
};

// Z on every qubit in the mask, applied as one parity sign pass.
void apply_sign_mask(PureState& state, std::size_t mask) {
    cdouble* v = state.data();
    const std::size_t size = state.size();
    detail::indexed_loop(static_cast<std::ptrdiff_t>(size), size >= kParallelCutoff,
                         [&](std::ptrdiff_t i) {
                             const std::size_t u = static_cast<std::size_t>(i);
                             if (std::popcount(u & mask) & 1) v[u] = -v[u];
                         });
}

}  // namespace

void FloquetParams::validate() const {
    if (n < 1) throw std::invalid_argument("params: n must be >= 1, got " + std::to_string(n));
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("params: eps=" + std::to_string(eps) + " outside [0,1]");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("params: p=" + std::to_string(p) + " outside [0,1]");
    }
    if (steps < 1) throw std::invalid_argument("params: steps must be >= 1");
    if (static_cast<int>(couplings.size()) != n - 1) {
        throw std::invalid_argument("params: expected " + std::to_string(n - 1) +
                                    " couplings, got " + std::to_string(couplings.size()));
    }
}

NoiseConfiguration NoiseConfiguration::none(int steps, int n) {
    NoiseConfiguration cfg;
    cfg.steps = steps;
    cfg.n = n;
    cfg.flip.assign(static_cast<std::size_t>(steps) * n, 0);
    return cfg;
}

NoiseConfiguration NoiseConfiguration::sample(int steps, int n, double p, SplitMix64& stream) {
    NoiseConfiguration cfg = none(steps, n);
    for (int k = 0; k < steps; ++k) {
        for (int q = 0; q < n; ++q) {
            cfg.flip[static_cast<std::size_t>(k) * n + q] = stream.bernoulli(p) ? 1 : 0;
        }
    }
    return cfg;
}

bool NoiseConfiguration::any() const {
    return std::any_of(flip.begin(), flip.end(), [](std::uint8_t f) { return f != 0; });
}

std::vector<double> sample_disorder(const DisorderSpec& spec, std::uint64_t realization, int n) {
    if (!(spec.low < spec.high)) {
        throw std::invalid_argument("disorder: low must be < high");
    }
    SplitMix64 rng(StreamKey{spec.master_seed, StreamPurpose::disorder, realization});
    std::vector<double> couplings(static_cast<std::size_t>(n - 1));
    for (double& j : couplings) j = rng.uniform(spec.low, spec.high);
    return couplings;
}

void floquet_step(PureState& state, const FloquetParams& params) {
    params.validate();
    if (state.num_qubits() != params.n) {
        throw std::invalid_argument("floquet_step: state has " +
                                    std::to_string(state.num_qubits()) + " qubits, params.n=" +
                                    std::to_string(params.n));
    }
    for (int q = 0; q < params.n; ++q) apply_kick(state, q, params.eps);
    for (int q = 0; q + 1 < params.n; ++q) {
        apply_zz(state, q, params.couplings[static_cast<std::size_t>(q)]);
    }
}

void floquet_step(DensityMatrix& rho, const FloquetParams& params) {
    params.validate();
    if (rho.num_qubits() != params.n) {
        throw std::invalid_argument("floquet_step: state has " + std::to_string(rho.num_qubits()) +
                                    " qubits, params.n=" + std::to_string(params.n));
    }
    for (int q = 0; q < params.n; ++q) apply_kick(rho, q, params.eps);
    for (int q = 0; q + 1 < params.n; ++q) {
        apply_zz(rho, q, params.couplings[static_cast<std::size_t>(q)]);
    }
}

MagnetizationTrace evolve_exact(const FloquetParams& params) {
    params.validate();
    if (params.p == 0.0) {
        // Closed-system limit: the channel is the identity, so the pure
        // backend reproduces the exact trace at 2^n instead of 4^n cost.
        return evolve_trajectory(params, NoiseConfiguration::none(params.steps, params.n));
    }
    if (params.n > kMaxDensityQubits) {
        throw capacity_error("evolve_exact: density backend supports up to " +
                             std::to_string(kMaxDensityQubits) + " qubits, got n=" +
                             std::to_string(params.n));
    }
    return detail::evolve_exact_density(params);
}

MagnetizationTrace evolve_trajectory(const FloquetParams& params,
                                     const NoiseConfiguration& noise) {
    params.validate();
    if (noise.steps != params.steps || noise.n != params.n) {
        throw std::invalid_argument("evolve_trajectory: noise configuration is " +
                                    std::to_string(noise.steps) + "x" + std::to_string(noise.n) +
                                    ", params need " + std::to_string(params.steps) + "x" +
                                    std::to_string(params.n));
    }
    PureState state(params.n);
    const CouplingPhasePass coupling(params);
    MagnetizationTrace trace;
    trace.values.reserve(static_cast<std::size_t>(params.steps));
    for (int k = 0; k < params.steps; ++k) {
        for (int q = 0; q < params.n; ++q) apply_kick(state, q, params.eps);
        coupling.apply(state);
        std::size_t mask = 0;
        for (int q = 0; q < params.n; ++q) {
            if (noise.flip[static_cast<std::size_t>(k) * params.n + q]) mask |= std::size_t{1} << q;
        }
        if (mask) apply_sign_mask(state, mask);
        trace.values.push_back(expectation_z_mean(state));
    }
    return trace;
}

AveragedTrace trajectory_average(const FloquetParams& params, int trajectory_count,
                                 const StreamKey& key) {
    params.validate();
    if (trajectory_count < 1) {
        throw std::invalid_argument("trajectory_average: trajectory_count must be >= 1");
    }
    const int k_steps = params.steps;
    std::vector<double> all(static_cast<std::size_t>(trajectory_count) * k_steps);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < trajectory_count; ++t) {
        StreamKey tkey = key;
        tkey.purpose = StreamPurpose::noise;
        tkey.trajectory = static_cast<std::uint64_t>(t);
        SplitMix64 rng(tkey);
        const auto noise = NoiseConfiguration::sample(k_steps, params.n, params.p, rng);
        const auto tr = evolve_trajectory(params, noise);
        std::copy(tr.values.begin(), tr.values.end(),
                  all.begin() + static_cast<std::size_t>(t) * k_steps);
    }

    AveragedTrace out;
    out.trajectory_count = trajectory_count;
    out.mean.values.assign(static_cast<std::size_t>(k_steps), 0.0);
    out.standard_error.assign(static_cast<std::size_t>(k_steps), 0.0);
    for (int k = 0; k < k_steps; ++k) {
        double sum = 0.0;
        for (int t = 0; t < trajectory_count; ++t) {
            sum += all[static_cast<std::size_t>(t) * k_steps + k];
        }
        const double mean = sum / trajectory_count;
        double m2 = 0.0;
        for (int t = 0; t < trajectory_count; ++t) {
            const double d = all[static_cast<std::size_t>(t) * k_steps + k] - mean;
            m2 += d * d;
        }
        out.mean.values[static_cast<std::size_t>(k)] = mean;
        out.standard_error[static_cast<std::size_t>(k)] =
            trajectory_count > 1
                ? std::sqrt(m2 / (static_cast<double>(trajectory_count) * (trajectory_count - 1)))
                : 0.0;
    }
    return out;
}

}  // namespace dtc
