// Kernel benchmark: strided OpenMP kernels against the serial dense
// reference, the fused exact-channel step against the kernel-by-kernel
// composition, and thread scaling of one full evolution.

#include <chrono>
#include <functional>
#include <cstdio>
#include <string>
#include <vector>

#include "omp.h"

#include "dtc/floquet.hpp"
#include "dtc/reference.hpp"
#include "dtc/seed.hpp"
#include "dtc/state.hpp"

using namespace dtc;
namespace ref = dtc::reference;

namespace {

double seconds_per_run(const std::function<void()>& body, int reps) {
    body();  // warm up
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count() / reps;
}

PureState random_state(int n, SplitMix64& rng) {
    PureState s(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        norm += std::norm(s[i]);
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= inv;
    return s;
}

FloquetParams bench_params(int n, double p, int steps) {
    FloquetParams params;
    params.n = n;
    params.eps = 0.25;
    params.p = p;
    params.steps = steps;
    DisorderSpec spec{1, 0.8, 2.3, 99};
    params.couplings = sample_disorder(spec, 0, n);
    return params;
}

void bench_kernels_vs_reference() {
    std::printf("\n== single-qubit kick: strided kernel vs dense reference (pure state) ==\n");
    std::printf("%4s %14s %14s %10s\n", "n", "kernel [us]", "dense [us]", "speedup");
    SplitMix64 rng(1);
    for (int n : {6, 8, 10}) {
        PureState s = random_state(n, rng);
        const auto u = ref::kick_matrix(n, n / 2, 0.25);
        const double fast =
            seconds_per_run([&] { apply_kick(s, n / 2, 0.25); }, 200);
        const double slow = seconds_per_run([&] { ref::apply_unitary(s, u); }, n >= 10 ? 3 : 20);
        std::printf("%4d %14.2f %14.2f %9.0fx\n", n, fast * 1e6, slow * 1e6, slow / fast);
    }

    std::printf("\n== dephasing layer: strided kernel vs Kraus reference (density) ==\n");
    std::printf("%4s %14s %14s %10s\n", "n", "kernel [us]", "kraus [us]", "speedup");
    for (int n : {4, 6, 8}) {
        DensityMatrix rho(n);
        for (int q = 0; q < n; ++q) apply_kick(rho, q, 0.3);
        const double fast = seconds_per_run([&] { apply_dephasing_exact(rho, 0, 0.05); }, 50);
        const double slow =
            seconds_per_run([&] { ref::apply_dephasing_kraus(rho, 0, 0.05); }, n >= 8 ? 2 : 10);
        std::printf("%4d %14.2f %14.2f %9.0fx\n", n, fast * 1e6, slow * 1e6, slow / fast);
    }
}

void bench_fused_step() {
    std::printf("\n== exact channel period: fused engine vs kernel composition ==\n");
    std::printf("%4s %16s %16s %10s\n", "n", "fused [ms/step]", "kernels [ms/step]", "speedup");
    for (int n : {6, 8, 10}) {
        const int steps = n >= 10 ? 6 : 20;
        FloquetParams params = bench_params(n, 0.05, steps);
        const double fused = seconds_per_run([&] { evolve_exact(params); }, 2) / steps;

        const double composed = seconds_per_run(
                                    [&] {
                                        DensityMatrix rho(n);
                                        for (int k = 0; k < steps; ++k) {
                                            floquet_step(rho, params);
                                            for (int q = 0; q < n; ++q) {
                                                apply_dephasing_exact(rho, q, params.p);
                                            }
                                            expectation_z_mean(rho);
                                        }
                                    },
                                    2) /
                                steps;
        std::printf("%4d %16.3f %16.3f %9.1fx\n", n, fused * 1e3, composed * 1e3,
                    composed / fused);
    }
}

void bench_thread_scaling() {
    std::printf("\n== thread scaling of one n=10, K=50 exact evolution ==\n");
    std::printf("%8s %14s\n", "threads", "seconds");
    FloquetParams params = bench_params(10, 0.06, 50);
    const int max_threads = omp_get_max_threads();
    for (int t = 1; t <= max_threads; ++t) {
        omp_set_num_threads(t);
        const double secs = seconds_per_run([&] { evolve_exact(params); }, 1);
        std::printf("%8d %14.3f\n", t, secs);
    }
    omp_set_num_threads(max_threads);

    std::printf("\n== thread scaling of a 2x13x20 heatmap-style sweep (n=8, K=20) ==\n");
    std::printf("%8s %14s\n", "threads", "seconds");
    for (int t = 1; t <= max_threads; ++t) {
        omp_set_num_threads(t);
        const double secs = seconds_per_run(
            [&] {
                const int realizations = 20;
#pragma omp parallel for schedule(dynamic)
                for (int task = 0; task < 2 * 13 * realizations; ++task) {
                    const int pi = task / (13 * realizations);
                    const int rest = task % (13 * realizations);
                    FloquetParams p = bench_params(8, pi == 0 ? 0.02 : 0.06, 20);
                    p.eps = 0.5 * (rest / realizations) / 12.0;
                    DisorderSpec spec{realizations, 0.8, 2.3, 7};
                    p.couplings = sample_disorder(spec, rest % realizations, 8);
                    evolve_exact(p);
                }
            },
            1);
        std::printf("%8d %14.3f\n", t, secs);
    }
    omp_set_num_threads(max_threads);
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    std::printf("dtc kernel benchmark (%d threads available)\n", omp_get_max_threads());
    bench_kernels_vs_reference();
    bench_fused_step();
    if (!quick) bench_thread_scaling();
    return 0;
}
