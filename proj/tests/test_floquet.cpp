#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dtc/floquet.hpp"
#include "dtc/reference.hpp"
#include "support.hpp"

using namespace dtc;
namespace ref = dtc::reference;

namespace {

FloquetParams make_params(int n, double eps, double p, int steps, std::uint64_t seed = 7) {
    FloquetParams params;
    params.n = n;
    params.eps = eps;
    params.p = p;
    params.steps = steps;
    DisorderSpec spec{1, std::numbers::pi / 4, 3 * std::numbers::pi / 4, seed};
    params.couplings = sample_disorder(spec, 0, n);
    return params;
}

// Single-qubit Bloch recursion: kick rotates (y, z) by 2 phi, dephasing
// scales x and y by 1 - 2p. Independent of the density-matrix code path.
std::vector<double> bloch_trace(double eps, double p, int steps) {
    const double phi = std::numbers::pi / 2.0 * (1.0 - eps);
    const double c = std::cos(2.0 * phi), s = std::sin(2.0 * phi);
    const double d = 1.0 - 2.0 * p;
    double x = 0.0, y = 0.0, z = 1.0;
    std::vector<double> out;
    for (int k = 0; k < steps; ++k) {
        const double ny = c * y + s * z;
        const double nz = c * z - s * y;
        y = d * ny;
        z = nz;
        x = d * x;
        out.push_back(z);
    }
    return out;
}

}  // namespace

TEST_CASE("params validation") {
    FloquetParams params = make_params(4, 0.1, 0.0, 10);
    CHECK_NOTHROW(params.validate());
    params.couplings.pop_back();
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params = make_params(4, 1.2, 0.0, 10);
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params = make_params(4, 0.1, -0.2, 10);
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params = make_params(4, 0.1, 0.0, 0);
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}

TEST_CASE("disorder sampling: range, determinism, degenerate interval") {
    DisorderSpec spec{10, std::numbers::pi / 4, 3 * std::numbers::pi / 4, 42};
    const auto first = sample_disorder(spec, 0, 4);
    CHECK(first.size() == 3);
    for (double j : first) {
        CHECK(j >= spec.low);
        CHECK(j < spec.high);
    }
    const auto again = sample_disorder(spec, 0, 4);
    CHECK(first == again);  // bit-identical rerun
    const auto other = sample_disorder(spec, 1, 4);
    CHECK(first != other);

    const double mid = std::numbers::pi / 2;
    DisorderSpec tight{1, mid - 1e-13, mid + 1e-13, 3};
    for (double j : sample_disorder(tight, 5, 6)) CHECK(j == doctest::Approx(mid).epsilon(1e-12));
}

TEST_CASE("disorder sampling: empirical mean of the uniform draw") {
    DisorderSpec spec{1, std::numbers::pi / 4, 3 * std::numbers::pi / 4, 1234};
    const int draws = 100000;
    double sum = 0.0;
    for (int r = 0; r < draws; ++r) {
        for (double j : sample_disorder(spec, static_cast<std::uint64_t>(r), 2)) sum += j;
    }
    const double mean = sum / draws;
    const double expected = (spec.low + spec.high) / 2.0;
    const double sigma = (spec.high - spec.low) / std::sqrt(12.0 * draws);
    CHECK(std::abs(mean - expected) < 3.0 * sigma);
}

TEST_CASE("floquet step: perfect flip limit") {
    FloquetParams params = make_params(4, 0.0, 0.0, 2);
    PureState s(4);
    floquet_step(s, params);
    CHECK(expectation_z_mean(s) == doctest::Approx(-1.0).epsilon(1e-12));
    floquet_step(s, params);
    CHECK(expectation_z_mean(s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("floquet step matches the dense operator product") {
    FloquetParams params;
    params.n = 2;
    params.eps = 0.3;
    params.p = 0.0;
    params.steps = 1;
    params.couplings = {0.9};

    PureState s(2);
    floquet_step(s, params);

    PureState dense(2);
    ref::apply_unitary(dense, ref::kick_matrix(2, 0, 0.3));
    ref::apply_unitary(dense, ref::kick_matrix(2, 1, 0.3));
    ref::apply_unitary(dense, ref::zz_matrix(2, 0, 0.9));
    CHECK(dtc::test::max_abs_diff(s, dense) < 1e-13);
}

TEST_CASE("floquet step: dimension mismatch") {
    FloquetParams params = make_params(3, 0.1, 0.0, 1);
    PureState s(4);
    CHECK_THROWS_AS(floquet_step(s, params), std::invalid_argument);
    DensityMatrix rho(2);
    CHECK_THROWS_AS(floquet_step(rho, params), std::invalid_argument);
}

TEST_CASE("exact evolution: eps = 0 alternates exactly for any p") {
    for (double p : {0.0, 0.06, 0.5, 1.0}) {
        FloquetParams params = make_params(5, 0.0, p, 8, 99);
        const auto trace = evolve_exact(params);
        for (int k = 1; k <= 8; ++k) {
            const double expect = (k % 2 == 0) ? 1.0 : -1.0;
            CHECK(std::abs(trace.values[static_cast<std::size_t>(k - 1)] - expect) < 1e-10);
        }
    }
}

TEST_CASE("exact evolution equals the kernel-by-kernel composition") {
    // The transfer-matrix engine must reproduce floquet_step + per-qubit
    // dephasing + readout, which are themselves pinned against the dense
    // reference. n = 8 and 9 exercise the split sweeps around the
    // transpose, including the odd-split cross bond.
    for (int n : {1, 2, 3, 4, 8, 9}) {
        FloquetParams params = make_params(n, 0.22, 0.07, 6, 17);
        const auto fused = evolve_exact(params);

        DensityMatrix rho(n);
        for (int k = 0; k < params.steps; ++k) {
            floquet_step(rho, params);
            for (int q = 0; q < n; ++q) apply_dephasing_exact(rho, q, params.p);
            const double expect = expectation_z_mean(rho);
            CHECK(std::abs(fused.values[static_cast<std::size_t>(k)] - expect) < 1e-11);
        }
    }
}

TEST_CASE("exact evolution: p = 0 equals the pure-state evolution") {
    FloquetParams params = make_params(5, 0.15, 0.0, 10, 23);
    const auto exact = evolve_exact(params);
    const auto pure = evolve_trajectory(params, NoiseConfiguration::none(10, 5));
    CHECK(exact.values == pure.values);

    // And the density backend agrees with both within 1e-10.
    DensityMatrix rho(5);
    for (int k = 0; k < params.steps; ++k) {
        floquet_step(rho, params);
        CHECK(std::abs(exact.values[static_cast<std::size_t>(k)] - expectation_z_mean(rho)) <
              1e-10);
    }
}

TEST_CASE("single-qubit trace follows the Bloch recursion") {
    FloquetParams params;
    params.n = 1;
    params.eps = 0.1;
    params.p = 0.2;
    params.steps = 5;
    const auto trace = evolve_exact(params);
    const auto oracle = bloch_trace(0.1, 0.2, 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(trace.values[static_cast<std::size_t>(k)] ==
              doctest::Approx(oracle[static_cast<std::size_t>(k)]).epsilon(1e-12));
    }
}

TEST_CASE("single-qubit damping contracts the Bloch vector") {
    // The p = 0 envelope is 1 (pure rotation); under p > 0 the transverse
    // damping makes the Bloch norm non-increasing, which bounds |m_k|.
    const double eps = 0.3, p = 0.15;
    const double phi = std::numbers::pi / 2.0 * (1.0 - eps);
    const double c = std::cos(2.0 * phi), s = std::sin(2.0 * phi);
    const double d = 1.0 - 2.0 * p;
    double y = 0.0, z = 1.0;
    double prev_norm = 1.0;
    FloquetParams params;
    params.n = 1;
    params.eps = eps;
    params.p = p;
    params.steps = 24;
    const auto trace = evolve_exact(params);
    for (int k = 0; k < params.steps; ++k) {
        const double ny = d * (c * y + s * z);
        const double nz = c * z - s * y;
        y = ny;
        z = nz;
        const double norm = std::sqrt(y * y + z * z);
        CHECK(norm <= prev_norm + 1e-12);
        CHECK(std::abs(trace.values[static_cast<std::size_t>(k)]) <= prev_norm + 1e-12);
        prev_norm = norm;
    }
}

TEST_CASE("trajectories: zero noise and eps = 0 limits") {
    FloquetParams params = make_params(4, 0.2, 0.0, 6, 31);
    const auto a = evolve_trajectory(params, NoiseConfiguration::none(6, 4));
    const auto b = evolve_exact(params);
    CHECK(a.values == b.values);

    // eps = 0: inserted Z gates only rephase basis states.
    FloquetParams flip = make_params(4, 0.0, 0.4, 6, 31);
    SplitMix64 rng(5);
    const auto noise = NoiseConfiguration::sample(6, 4, 0.4, rng);
    const auto trace = evolve_trajectory(flip, noise);
    for (int k = 1; k <= 6; ++k) {
        const double expect = (k % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(trace.values[static_cast<std::size_t>(k - 1)] - expect) < 1e-10);
    }
}

TEST_CASE("trajectory noise dimensions are enforced") {
    FloquetParams params = make_params(4, 0.2, 0.1, 6);
    CHECK_THROWS_AS(evolve_trajectory(params, NoiseConfiguration::none(5, 4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve_trajectory(params, NoiseConfiguration::none(6, 3)),
                    std::invalid_argument);
}

TEST_CASE("trajectory mean converges to the exact channel") {
    FloquetParams params = make_params(3, 0.15, 0.1, 8, 77);
    const auto exact = evolve_exact(params);
    StreamKey key;
    key.master_seed = 101;
    const auto avg = trajectory_average(params, 4000, key);
    for (int k = 0; k < 8; ++k) {
        const double err = std::abs(avg.mean.values[static_cast<std::size_t>(k)] -
                                    exact.values[static_cast<std::size_t>(k)]);
        CHECK(err <= 4.0 * avg.standard_error[static_cast<std::size_t>(k)] + 1e-12);
    }
}

TEST_CASE("trajectory averaging: degenerate counts and p = 0") {
    FloquetParams params = make_params(3, 0.2, 0.0, 6, 13);
    StreamKey key;
    key.master_seed = 55;
    const auto single = trajectory_average(params, 1, key);
    const auto noiseless = evolve_trajectory(params, NoiseConfiguration::none(6, 3));
    CHECK(single.mean.values == noiseless.values);
    for (double se : single.standard_error) CHECK(se == 0.0);

    // All 16 trajectories are identical; the averaged trace matches up to
    // the rounding of the 16-term sum and the residual spread is pure
    // float noise.
    const auto many = trajectory_average(params, 16, key);
    for (int k = 0; k < 6; ++k) {
        CHECK(std::abs(many.mean.values[static_cast<std::size_t>(k)] -
                       noiseless.values[static_cast<std::size_t>(k)]) < 1e-15);
        CHECK(many.standard_error[static_cast<std::size_t>(k)] < 1e-15);
    }
}

TEST_CASE("standard error shrinks like the central limit theorem") {
    FloquetParams params = make_params(3, 0.2, 0.12, 6, 909);
    double ratio_sum = 0.0;
    const int repeats = 10;
    for (int rep = 0; rep < repeats; ++rep) {
        StreamKey key;
        key.master_seed = 2000 + static_cast<std::uint64_t>(rep);
        const auto small = trajectory_average(params, 256, key);
        StreamKey key2 = key;
        key2.realization = 1;  // fresh trajectory streams
        const auto big = trajectory_average(params, 512, key2);
        double se_small = 0.0, se_big = 0.0;
        for (int k = 0; k < 6; ++k) {
            se_small += small.standard_error[static_cast<std::size_t>(k)];
            se_big += big.standard_error[static_cast<std::size_t>(k)];
        }
        ratio_sum += se_big / se_small;
    }
    const double mean_ratio = ratio_sum / repeats;
    CHECK(mean_ratio > 0.6);
    CHECK(mean_ratio < 0.8);
}

TEST_CASE("coupling layer is irrelevant at eps = 0") {
    FloquetParams with = make_params(5, 0.0, 0.0, 8, 3);
    FloquetParams without = with;
    for (double& j : without.couplings) j = 0.0;
    const auto a = evolve_exact(with);
    const auto b = evolve_exact(without);
    for (int k = 0; k < 8; ++k) {
        CHECK(std::abs(a.values[static_cast<std::size_t>(k)] -
                       b.values[static_cast<std::size_t>(k)]) < 1e-12);
    }
}

TEST_CASE("exact backend capacity") {
    FloquetParams params = make_params(13, 0.1, 0.05, 2);
    CHECK_THROWS_AS(evolve_exact(params), capacity_error);
}
