#include "dtc/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dtc {

namespace {

struct BandSystem {
    // Symmetric pentadiagonal matrix: main, first and second diagonals.
    std::vector<double> b0, b1, b2;
};

// Cholesky factors of a bandwidth-2 SPD matrix; lk[j] stores L[j, j-k].
struct BandCholesky {
    std::vector<double> l0, l1, l2;

    explicit BandCholesky(const BandSystem& b) {
        const std::size_t m = b.b0.size();
        l0.assign(m, 0.0);
        l1.assign(m, 0.0);
        l2.assign(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            if (j >= 2) l2[j] = b.b2[j - 2] / l0[j - 2];
            if (j >= 1) l1[j] = (b.b1[j - 1] - (j >= 2 ? l2[j] * l1[j - 1] : 0.0)) / l0[j - 1];
            const double d = b.b0[j] - l1[j] * l1[j] - l2[j] * l2[j];
            if (!(d > 0.0)) {
                throw std::runtime_error("smoothing spline: banded system not positive definite");
            }
            l0[j] = std::sqrt(d);
        }
    }

    std::vector<double> solve(std::vector<double> rhs) const {
        const std::size_t m = l0.size();
        for (std::size_t j = 0; j < m; ++j) {
            double v = rhs[j];
            if (j >= 1) v -= l1[j] * rhs[j - 1];
            if (j >= 2) v -= l2[j] * rhs[j - 2];
            rhs[j] = v / l0[j];
        }
        for (std::size_t jj = m; jj-- > 0;) {
            double v = rhs[jj];
            if (jj + 1 < m) v -= l1[jj + 1] * rhs[jj + 1];
            if (jj + 2 < m) v -= l2[jj + 2] * rhs[jj + 2];
            rhs[jj] = v / l0[jj];
        }
        return rhs;
    }
};

struct ReinschWork {
    std::size_t m = 0, interior = 0;
    std::vector<double> h;           // knot spacings
    std::vector<double> qe, qf, qg;  // nonzeros of Q's columns
    std::vector<double> rd, ro;      // tridiagonal R
    std::vector<double> q0, q1, q2;  // Q^T Q diagonals
    std::vector<double> qty;         // Q^T y

    ReinschWork(std::span<const double> x, std::span<const double> y) {
        m = x.size();
        interior = m - 2;
        h.resize(m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            h[i] = x[i + 1] - x[i];
            if (!(h[i] > 0.0)) {
                throw std::invalid_argument("smoothing spline: x must be strictly increasing");
            }
        }
        qe.resize(interior);
        qf.resize(interior);
        qg.resize(interior);
        rd.resize(interior);
        ro.assign(interior, 0.0);
        qty.resize(interior);
        for (std::size_t j = 0; j < interior; ++j) {
            qe[j] = 1.0 / h[j];
            qg[j] = 1.0 / h[j + 1];
            qf[j] = -qe[j] - qg[j];
            rd[j] = (h[j] + h[j + 1]) / 3.0;
            if (j + 1 < interior) ro[j] = h[j + 1] / 6.0;
            qty[j] = qe[j] * y[j] + qf[j] * y[j + 1] + qg[j] * y[j + 2];
        }
        q0.resize(interior);
        q1.assign(interior, 0.0);
        q2.assign(interior, 0.0);
        for (std::size_t j = 0; j < interior; ++j) {
            q0[j] = qe[j] * qe[j] + qf[j] * qf[j] + qg[j] * qg[j];
            if (j + 1 < interior) q1[j] = qf[j] * qe[j + 1] + qg[j] * qf[j + 1];
            if (j + 2 < interior) q2[j] = qg[j] * qe[j + 2];
        }
    }

    BandSystem system(double lambda) const {
        BandSystem b;
        b.b0.resize(interior);
        b.b1.resize(interior);
        b.b2.resize(interior);
        for (std::size_t j = 0; j < interior; ++j) {
            b.b0[j] = rd[j] + lambda * q0[j];
            b.b1[j] = ro[j] + lambda * q1[j];
            b.b2[j] = lambda * q2[j];
        }
        return b;
    }

    // Q g, length m.
    std::vector<double> apply_q(const std::vector<double>& g) const {
        std::vector<double> out(m, 0.0);
        for (std::size_t j = 0; j < interior; ++j) {
            out[j] += qe[j] * g[j];
            out[j + 1] += qf[j] * g[j];
            out[j + 2] += qg[j] * g[j];
        }
        return out;
    }

    // tr((R + lambda Q^T Q)^{-1} Q^T Q) by solving one banded system per
    // column; the effective degrees of freedom are m - lambda * trace.
    double trace_binv_qtq(const BandCholesky& chol) const {
        double trace = 0.0;
        std::vector<double> col(interior);
        for (std::size_t k = 0; k < interior; ++k) {
            std::fill(col.begin(), col.end(), 0.0);
            if (k >= 2) col[k - 2] = q2[k - 2];
            if (k >= 1) col[k - 1] = q1[k - 1];
            col[k] = q0[k];
            if (k + 1 < interior) col[k + 1] = q1[k];
            if (k + 2 < interior) col[k + 2] = q2[k];
            trace += chol.solve(col)[k];
        }
        return trace;
    }
};

void check_inputs(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("smoothing spline: x and y lengths differ");
    }
    if (x.size() < 4) {
        throw std::invalid_argument("smoothing spline: need at least 4 points, got " +
                                    std::to_string(x.size()));
    }
}

}  // namespace

SmoothingSpline SmoothingSpline::fit(std::span<const double> x, std::span<const double> y,
                                     double lambda) {
    check_inputs(x, y);
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("smoothing spline: lambda must be finite and >= 0");
    }
    const ReinschWork w(x, y);
    const BandCholesky chol(w.system(lambda));
    std::vector<double> g = chol.solve(w.qty);

    SmoothingSpline s;
    s.lambda_ = lambda;
    s.x_.assign(x.begin(), x.end());
    s.f_.assign(y.begin(), y.end());
    const std::vector<double> qg = w.apply_q(g);
    for (std::size_t i = 0; i < w.m; ++i) s.f_[i] -= lambda * qg[i];
    s.g2_.assign(w.m, 0.0);
    for (std::size_t j = 0; j < w.interior; ++j) s.g2_[j + 1] = g[j];

    if (lambda > 0.0) {
        double rss = 0.0;
        for (std::size_t i = 0; i < w.m; ++i) {
            const double r = y[i] - s.f_[i];
            rss += r * r;
        }
        const double denom = lambda * w.trace_binv_qtq(chol);
        s.gcv_ = static_cast<double>(w.m) * rss / (denom * denom);
    }
    return s;
}

SmoothingSpline SmoothingSpline::fit_auto(std::span<const double> x, std::span<const double> y) {
    check_inputs(x, y);
    const double scale = std::pow(x.back() - x.front(), 3);
    constexpr int kGridSize = 25;
    SmoothingSpline best;
    bool have = false;
    for (int i = 0; i < kGridSize; ++i) {
        const double exponent = -8.0 + 10.0 * i / (kGridSize - 1);
        const double lambda = scale * std::pow(10.0, exponent);
        SmoothingSpline cand = fit(x, y, lambda);
        if (!have || cand.gcv_ < best.gcv_) {
            best = std::move(cand);
            have = true;
        }
    }
    return best;
}

double SmoothingSpline::operator()(double xq) const {
    const std::size_t m = x_.size();
    xq = std::clamp(xq, x_.front(), x_.back());
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin());
    i = std::clamp<std::size_t>(i, 1, m - 1) - 1;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - xq) / h;
    const double b = (xq - x_[i]) / h;
    const double cc = (a * a * a - a) * h * h / 6.0;
    const double dd = (b * b * b - b) * h * h / 6.0;
    return a * f_[i] + b * f_[i + 1] + cc * g2_[i] + dd * g2_[i + 1];
}

PeakResult estimate_peak(std::span<const double> x, std::span<const double> y) {
    const SmoothingSpline s = SmoothingSpline::fit_auto(x, y);
    constexpr int kDense = 1000;
    const double lo = x.front();
    const double hi = x.back();
    const double step = (hi - lo) / (kDense - 1);
    std::vector<double> val(kDense);
    int arg = 0;
    for (int j = 0; j < kDense; ++j) {
        val[static_cast<std::size_t>(j)] = s(lo + step * j);
        if (val[static_cast<std::size_t>(j)] > val[static_cast<std::size_t>(arg)]) arg = j;
    }
    PeakResult out;
    if (arg == 0 || arg == kDense - 1) {
        out.location = lo + step * arg;
        out.boundary = true;
        return out;
    }
    const double vm = val[static_cast<std::size_t>(arg - 1)];
    const double v0 = val[static_cast<std::size_t>(arg)];
    const double vp = val[static_cast<std::size_t>(arg + 1)];
    const double denom = vm - 2.0 * v0 + vp;
    double loc = lo + step * arg;
    if (denom != 0.0) {
        const double offset = 0.5 * (vm - vp) / denom;
        if (std::isfinite(offset)) loc += std::clamp(offset, -1.0, 1.0) * step;
    }
    out.location = std::clamp(loc, lo, hi);
    return out;
}

}  // namespace dtc
