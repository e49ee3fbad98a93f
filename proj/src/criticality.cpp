#include "dtc/criticality.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dtc/spectrum.hpp"

namespace dtc {

namespace {

void check_grid(std::span<const double> grid, const char* name) {
    if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1])) {
            throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
        }
    }
}

double order_parameter_for(int n, double eps, double p, const DisorderSpec& disorder, int steps,
                           Backend backend, int trajectory_count, std::uint64_t realization,
                           std::uint64_t eps_index, std::uint64_t p_index) {
    FloquetParams params;
    params.n = n;
    params.eps = eps;
    params.p = p;
    params.steps = steps;
    params.couplings = sample_disorder(disorder, realization, n);
    if (backend == Backend::exact) {
        return order_parameter(evolve_exact(params));
    }
    StreamKey key;
    key.master_seed = disorder.master_seed;
    key.realization = realization;
    key.eps_index = eps_index;
    key.p_index = p_index;
    return order_parameter(trajectory_average(params, trajectory_count, key).mean);
}

}  // namespace

double unbiased_variance(std::span<const double> samples) {
    const std::size_t count = samples.size();
    if (count < 2) {
        throw std::invalid_argument("variance needs at least 2 samples, got " +
                                    std::to_string(count));
    }
    double sum = 0.0;
    for (double v : samples) sum += v;
    const double mean = sum / static_cast<double>(count);
    double m2 = 0.0;
    for (double v : samples) m2 += (v - mean) * (v - mean);
    return m2 / static_cast<double>(count - 1);
}

VarianceData variance_curve(int n, std::span<const double> eps_grid, double p,
                            const DisorderSpec& disorder, int steps, Backend backend,
                            int trajectory_count, int p_index) {
    check_grid(eps_grid, "eps");
    if (disorder.count < 2) {
        throw std::invalid_argument("variance_curve: need at least 2 disorder realizations");
    }
    const int eps_count = static_cast<int>(eps_grid.size());
    const int realizations = disorder.count;

    VarianceData out;
    out.h.assign(static_cast<std::size_t>(eps_count),
                 std::vector<double>(static_cast<std::size_t>(realizations), 0.0));

    const std::ptrdiff_t tasks = static_cast<std::ptrdiff_t>(eps_count) * realizations;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t task = 0; task < tasks; ++task) {
        const int e = static_cast<int>(task / realizations);
        const int r = static_cast<int>(task % realizations);
        out.h[static_cast<std::size_t>(e)][static_cast<std::size_t>(r)] = order_parameter_for(
            n, eps_grid[static_cast<std::size_t>(e)], p, disorder, steps, backend,
            trajectory_count, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(e),
            static_cast<std::uint64_t>(p_index));
    }

    out.curve.eps.assign(eps_grid.begin(), eps_grid.end());
    out.curve.variance.resize(static_cast<std::size_t>(eps_count));
    out.curve.count.assign(static_cast<std::size_t>(eps_count), realizations);
    for (int e = 0; e < eps_count; ++e) {
        out.curve.variance[static_cast<std::size_t>(e)] =
            unbiased_variance(out.h[static_cast<std::size_t>(e)]);
    }
    return out;
}

PeakEstimate batched_peak_estimate(std::span<const double> eps_grid,
                                   const std::vector<std::vector<double>>& h, int batch_count) {
    check_grid(eps_grid, "eps");
    if (h.size() != eps_grid.size()) {
        throw std::invalid_argument("batched_peak_estimate: h rows do not match the eps grid");
    }
    const int realizations = static_cast<int>(h.front().size());
    if (batch_count < 1) throw std::invalid_argument("batched_peak_estimate: batch_count < 1");
    if (batch_count == 1) {
        if (realizations < 2) {
            throw std::invalid_argument("batched_peak_estimate: need at least 2 realizations");
        }
    } else if (realizations < 2 * batch_count) {
        throw std::invalid_argument("batched_peak_estimate: need at least 2*batch_count=" +
                                    std::to_string(2 * batch_count) + " realizations, got " +
                                    std::to_string(realizations));
    }

    const std::size_t eps_count = eps_grid.size();
    PeakEstimate out;

    // Full-ensemble curve and peak.
    std::vector<double> full_var(eps_count);
    for (std::size_t e = 0; e < eps_count; ++e) full_var[e] = unbiased_variance(h[e]);
    const PeakResult full = estimate_peak(eps_grid, full_var);
    out.location = full.location;
    out.boundary = full.boundary;

    // Contiguous batches; the first (realizations % batch_count) batches
    // take one extra realization.
    const int base = realizations / batch_count;
    const int rem = realizations % batch_count;
    int start = 0;
    std::vector<double> batch_var(eps_count);
    for (int b = 0; b < batch_count; ++b) {
        const int size = base + (b < rem ? 1 : 0);
        for (std::size_t e = 0; e < eps_count; ++e) {
            batch_var[e] = unbiased_variance(
                std::span<const double>(h[e]).subspan(static_cast<std::size_t>(start),
                                                      static_cast<std::size_t>(size)));
        }
        out.batch_locations.push_back(estimate_peak(eps_grid, batch_var).location);
        start += size;
    }

    double sum = 0.0;
    for (double loc : out.batch_locations) sum += loc;
    out.mean = sum / batch_count;
    if (batch_count > 1) {
        double m2 = 0.0;
        for (double loc : out.batch_locations) m2 += (loc - out.mean) * (loc - out.mean);
        out.sigma = std::sqrt(m2 / (batch_count - 1));
    } else {
        out.sigma = 0.0;
        out.single_batch = true;
    }
    out.band1_lo = out.mean - out.sigma;
    out.band1_hi = out.mean + out.sigma;
    out.band2_lo = out.mean - 2.0 * out.sigma;
    out.band2_hi = out.mean + 2.0 * out.sigma;
    return out;
}

std::vector<SizeScanRow> size_scan(std::span<const int> n_list, std::span<const double> eps_grid,
                                   double p, const DisorderSpec& disorder, int steps,
                                   int batch_count) {
    if (n_list.empty()) throw std::invalid_argument("size_scan: empty n list");
    std::vector<SizeScanRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) {
        const VarianceData data = variance_curve(n, eps_grid, p, disorder, steps);
        SizeScanRow row;
        row.n = n;
        row.peak = batched_peak_estimate(eps_grid, data.h, batch_count);
        rows.push_back(std::move(row));
    }
    return rows;
}

HeatmapData heatmap_sweep(std::span<const double> eps_grid, std::span<const double> p_grid,
                          const DisorderSpec& disorder, int n, int steps) {
    check_grid(eps_grid, "eps");
    check_grid(p_grid, "p");
    if (n > kMaxDensityQubits) {
        throw capacity_error("heatmap_sweep: exact backend supports up to " +
                             std::to_string(kMaxDensityQubits) + " qubits, got n=" +
                             std::to_string(n));
    }
    if (disorder.count < 2) {
        throw std::invalid_argument("heatmap_sweep: need at least 2 disorder realizations");
    }
    const int eps_count = static_cast<int>(eps_grid.size());
    const int p_count = static_cast<int>(p_grid.size());
    const int realizations = disorder.count;

    HeatmapData out;
    out.h.assign(static_cast<std::size_t>(p_count),
                 std::vector<std::vector<double>>(
                     static_cast<std::size_t>(eps_count),
                     std::vector<double>(static_cast<std::size_t>(realizations), 0.0)));

    const std::ptrdiff_t tasks =
        static_cast<std::ptrdiff_t>(p_count) * eps_count * realizations;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t task = 0; task < tasks; ++task) {
        const int pi = static_cast<int>(task / (static_cast<std::ptrdiff_t>(eps_count) * realizations));
        const int rest = static_cast<int>(task % (static_cast<std::ptrdiff_t>(eps_count) * realizations));
        const int e = rest / realizations;
        const int r = rest % realizations;
        out.h[static_cast<std::size_t>(pi)][static_cast<std::size_t>(e)]
             [static_cast<std::size_t>(r)] = order_parameter_for(
                 n, eps_grid[static_cast<std::size_t>(e)], p_grid[static_cast<std::size_t>(pi)],
                 disorder, steps, Backend::exact, 1, static_cast<std::uint64_t>(r),
                 static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(pi));
    }

    out.grid.eps.assign(eps_grid.begin(), eps_grid.end());
    out.grid.p.assign(p_grid.begin(), p_grid.end());
    out.grid.variance.resize(static_cast<std::size_t>(p_count) * eps_count);
    for (int pi = 0; pi < p_count; ++pi) {
        for (int e = 0; e < eps_count; ++e) {
            out.grid.variance[static_cast<std::size_t>(pi) * eps_count + e] = unbiased_variance(
                out.h[static_cast<std::size_t>(pi)][static_cast<std::size_t>(e)]);
        }
    }
    return out;
}

}  // namespace dtc
