#pragma once

#include <span>
#include <vector>

// Natural cubic smoothing spline in the Reinsch formulation: minimize
//   sum_i (y_i - f(x_i))^2 + lambda * integral f''(x)^2 dx
// over natural cubic splines with knots at the data points. With the usual
// second-difference matrix Q (n x n-2) and tridiagonal R, the interior
// second derivatives solve (R + lambda Q^T Q) g = Q^T y and the fitted
// knot values are f = y - lambda Q g. The system is pentadiagonal SPD and
// is solved by a banded Cholesky factorization.
//
// lambda = auto picks the generalized cross-validation minimizer over a
// fixed grid of 25 logarithmically spaced values spanning
// [1e-8, 1e2] x (x_max - x_min)^3; the cube is the natural unit of lambda.
// The grid and criterion are pinned so independent implementations agree.

namespace dtc {

class SmoothingSpline {
  public:
    static SmoothingSpline fit(std::span<const double> x, std::span<const double> y,
                               double lambda);
    static SmoothingSpline fit_auto(std::span<const double> x, std::span<const double> y);

    double operator()(double xq) const;  // clamped extrapolation outside the knots

    const std::vector<double>& fitted() const { return f_; }
    double lambda() const { return lambda_; }
    double gcv() const { return gcv_; }

  private:
    std::vector<double> x_, f_, g2_;  // knots, fitted values, second derivatives
    double lambda_ = 0.0;
    double gcv_ = 0.0;
};

struct PeakResult {
    double location = 0.0;
    bool boundary = false;  // argmax landed on an end of the evaluation grid
};

// Peak of the auto-smoothed curve: evaluated on a 1000-point dense grid
// over [min x, max x], refined by one quadratic interpolation through the
// argmax and its neighbors. Boundary argmaxes are flagged, not refined.
PeakResult estimate_peak(std::span<const double> x, std::span<const double> y);

}  // namespace dtc
