#pragma once

#include <span>
#include <vector>

#include "dtc/floquet.hpp"
#include "dtc/spline.hpp"

// Disorder-ensemble statistics: variance of the order parameter across
// coupling realizations, smoothing-spline peak estimation with batched
// confidence intervals, finite-size scans and the (eps, p) heatmap.
//
// One disorder ensemble (derived from the master seed and the realization
// index alone) is shared by every grid point, so parameter effects are not
// masked by resampling noise. Grid points and realizations are independent
// tasks; every reduction runs in fixed index order, so results are
// bit-identical for any worker count.

namespace dtc {

enum class Backend { exact, trajectory };

struct VarianceCurve {
    std::vector<double> eps;
    std::vector<double> variance;  // unbiased, over disorder realizations
    std::vector<int> count;
};

struct VarianceData {
    VarianceCurve curve;
    std::vector<std::vector<double>> h;  // raw samples, h[eps_index][realization]
};

struct PeakEstimate {
    double location = 0.0;  // peak of the full-ensemble curve
    bool boundary = false;
    std::vector<double> batch_locations;
    double mean = 0.0;   // over batch peaks
    double sigma = 0.0;  // standard deviation of batch peaks
    double band1_lo = 0.0, band1_hi = 0.0;  // mean -+ sigma
    double band2_lo = 0.0, band2_hi = 0.0;  // mean -+ 2 sigma
    bool single_batch = false;
};

struct HeatmapGrid {
    std::vector<double> eps;
    std::vector<double> p;
    std::vector<double> variance;  // row-major over (p, eps)

    double at(std::size_t p_index, std::size_t eps_index) const {
        return variance[p_index * eps.size() + eps_index];
    }
};

struct HeatmapData {
    HeatmapGrid grid;
    std::vector<std::vector<std::vector<double>>> h;  // [p_index][eps_index][realization]
};

struct SizeScanRow {
    int n = 0;
    PeakEstimate peak;
};

// Runs the evolution for every (eps, realization) pair and returns both the
// variance curve and the raw per-realization h samples for batching.
VarianceData variance_curve(int n, std::span<const double> eps_grid, double p,
                            const DisorderSpec& disorder, int steps,
                            Backend backend = Backend::exact, int trajectory_count = 1,
                            int p_index = 0);

// Contiguous equal-size batches by realization index (remainder spread
// one-per-batch from the front); per-batch variance curves and spline
// peaks; mean, sigma and the 1/2-sigma bands over the batch peaks.
PeakEstimate batched_peak_estimate(std::span<const double> eps_grid,
                                   const std::vector<std::vector<double>>& h,
                                   int batch_count = 20);

std::vector<SizeScanRow> size_scan(std::span<const int> n_list, std::span<const double> eps_grid,
                                   double p, const DisorderSpec& disorder, int steps,
                                   int batch_count = 20);

// Full (p, eps) variance matrix on the exact backend (channel semantics,
// no Monte-Carlo noise in the variance); n <= 12.
HeatmapData heatmap_sweep(std::span<const double> eps_grid, std::span<const double> p_grid,
                          const DisorderSpec& disorder, int n, int steps);

// Helpers shared by the sweep drivers and tests.
double unbiased_variance(std::span<const double> samples);

}  // namespace dtc
