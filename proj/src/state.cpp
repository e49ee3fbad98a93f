#include "dtc/state.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parallel_for.hpp"

namespace dtc {

namespace {

// Below this many entries the OpenMP fork costs more than the loop.
constexpr std::size_t kParallelCutoff = std::size_t{1} << 16;

// Fixed reduction block so sums are independent of the thread count.
constexpr std::size_t kReductionBlock = std::size_t{1} << 14;

using detail::indexed_loop;

void check_qubit(int q, int n, const char* what) {
    if (q < 0 || q >= n) {
        throw std::out_of_range(std::string(what) + ": qubit index " + std::to_string(q) +
                                " out of range for n=" + std::to_string(n));
    }
}

// Applies [[a00, a01], [a10, a11]] to the amplitude pairs split by bit b.
void pair_transform(cdouble* v, std::size_t size, int b, cdouble a00, cdouble a01, cdouble a10,
                    cdouble a11) {
    const std::size_t stride = std::size_t{1} << b;
    const std::size_t half = size >> 1;
    indexed_loop(static_cast<std::ptrdiff_t>(half), half >= kParallelCutoff,
                 [&](std::ptrdiff_t t) {
                     const std::size_t u = static_cast<std::size_t>(t);
                     const std::size_t lo = ((u >> b) << (b + 1)) | (u & (stride - 1));
                     const std::size_t hi = lo | stride;
                     const cdouble x = v[lo];
                     const cdouble y = v[hi];
                     v[lo] = a00 * x + a01 * y;
                     v[hi] = a10 * x + a11 * y;
                 });
}

// Fixed-block sum of block_value(i) over [0, count) in index order.
template <class F>
double blocked_sum(std::size_t count, F&& term) {
    const std::size_t nblocks = (count + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partial(nblocks, 0.0);
    indexed_loop(static_cast<std::ptrdiff_t>(nblocks), nblocks > 4, [&](std::ptrdiff_t b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
        const std::size_t hi = std::min(lo + kReductionBlock, count);
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(b)] = acc;
    });
    double total = 0.0;
    for (double x : partial) total += x;
    return total;
}

}  // namespace

PureState::PureState(int n) : n_(n) {
    if (n < 1 || n > kMaxPureQubits) {
        throw capacity_error("pure backend supports 1.." + std::to_string(kMaxPureQubits) +
                             " qubits, got n=" + std::to_string(n));
    }
    amps_.assign(std::size_t{1} << n, cdouble{0.0, 0.0});
    amps_[0] = 1.0;
}

double PureState::norm() const {
    const cdouble* v = amps_.data();
    return blocked_sum(amps_.size(), [v](std::size_t i) { return std::norm(v[i]); });
}

DensityMatrix::DensityMatrix(int n) : n_(n) {
    if (n < 1 || n > kMaxDensityQubits) {
        throw capacity_error("density backend supports 1.." + std::to_string(kMaxDensityQubits) +
                             " qubits, got n=" + std::to_string(n));
    }
    dim_ = std::size_t{1} << n;
    rho_.assign(dim_ * dim_, cdouble{0.0, 0.0});
    rho_[0] = 1.0;
}

double DensityMatrix::trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += rho_[i * dim_ + i].real();
    return t;
}

void apply_kick(PureState& state, int q, double eps) {
    check_qubit(q, state.num_qubits(), "apply_kick");
    const double phi = std::numbers::pi / 2.0 * (1.0 - eps);
    const double c = std::cos(phi);
    const cdouble is{0.0, std::sin(phi)};
    pair_transform(state.data(), state.size(), q, c, is, is, c);
}

void apply_kick(DensityMatrix& rho, int q, double eps) {
    check_qubit(q, rho.num_qubits(), "apply_kick");
    const int n = rho.num_qubits();
    const double phi = std::numbers::pi / 2.0 * (1.0 - eps);
    const double c = std::cos(phi);
    const cdouble is{0.0, std::sin(phi)};
    // vec(rho) view: row bits are the high n bits, so U rho U^dag is U on
    // bit n+q and conj(U) on bit q.
    pair_transform(rho.data(), rho.size(), n + q, c, is, is, c);
    pair_transform(rho.data(), rho.size(), q, c, -is, -is, c);
}

void apply_zz(PureState& state, int q, double coupling) {
    const int n = state.num_qubits();
    if (q < 0 || q >= n - 1) {
        throw std::out_of_range("apply_zz: bond index " + std::to_string(q) +
                                " out of range for n=" + std::to_string(n));
    }
    const cdouble equal = std::polar(1.0, coupling);
    const cdouble diff = std::polar(1.0, -coupling);
    cdouble* v = state.data();
    const std::size_t size = state.size();
    indexed_loop(static_cast<std::ptrdiff_t>(size), size >= kParallelCutoff,
                 [&](std::ptrdiff_t i) {
                     const std::size_t u = static_cast<std::size_t>(i);
                     v[u] *= (((u >> q) ^ (u >> (q + 1))) & 1u) ? diff : equal;
                 });
}

void apply_zz(DensityMatrix& rho, int q, double coupling) {
    const int n = rho.num_qubits();
    if (q < 0 || q >= n - 1) {
        throw std::out_of_range("apply_zz: bond index " + std::to_string(q) +
                                " out of range for n=" + std::to_string(n));
    }
    const std::size_t dim = rho.dim();
    // Phase difference between the row and column parities: 1 when they
    // agree, e^{+-2iJ} when they differ.
    const cdouble up = std::polar(1.0, 2.0 * coupling);
    const cdouble down = std::polar(1.0, -2.0 * coupling);
    cdouble* m = rho.data();
    indexed_loop(static_cast<std::ptrdiff_t>(dim), rho.size() >= kParallelCutoff,
                 [&](std::ptrdiff_t r) {
                     const std::size_t ur = static_cast<std::size_t>(r);
                     const unsigned pr = ((ur >> q) ^ (ur >> (q + 1))) & 1u;
                     cdouble* row = m + ur * dim;
                     for (std::size_t c = 0; c < dim; ++c) {
                         const unsigned pc = ((c >> q) ^ (c >> (q + 1))) & 1u;
                         if (pr != pc) row[c] *= pr ? down : up;
                     }
                 });
}

void apply_z(PureState& state, int q) {
    check_qubit(q, state.num_qubits(), "apply_z");
    cdouble* v = state.data();
    const std::size_t size = state.size();
    indexed_loop(static_cast<std::ptrdiff_t>(size), size >= kParallelCutoff,
                 [&](std::ptrdiff_t i) {
                     const std::size_t u = static_cast<std::size_t>(i);
                     if ((u >> q) & 1u) v[u] = -v[u];
                 });
}

void apply_dephasing_exact(DensityMatrix& rho, int q, double p) {
    check_qubit(q, rho.num_qubits(), "apply_dephasing_exact");
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("apply_dephasing_exact: p=" + std::to_string(p) +
                                    " outside [0,1]");
    }
    const double damp = 1.0 - 2.0 * p;
    const std::size_t dim = rho.dim();
    cdouble* m = rho.data();
    indexed_loop(static_cast<std::ptrdiff_t>(dim), rho.size() >= kParallelCutoff,
                 [&](std::ptrdiff_t r) {
                     const std::size_t ur = static_cast<std::size_t>(r);
                     const unsigned br = (ur >> q) & 1u;
                     cdouble* row = m + ur * dim;
                     for (std::size_t c = 0; c < dim; ++c) {
                         if (((c >> q) & 1u) != br) row[c] *= damp;
                     }
                 });
}

double expectation_z(const PureState& state, int q) {
    check_qubit(q, state.num_qubits(), "expectation_z");
    const cdouble* v = state.data();
    return blocked_sum(state.size(), [v, q](std::size_t i) {
        const double pr = std::norm(v[i]);
        return ((i >> q) & 1u) ? -pr : pr;
    });
}

double expectation_z(const DensityMatrix& rho, int q) {
    check_qubit(q, rho.num_qubits(), "expectation_z");
    const std::size_t dim = rho.dim();
    double total = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double pr = rho.at(i, i).real();
        total += ((i >> q) & 1u) ? -pr : pr;
    }
    return total;
}

double expectation_z_mean(const PureState& state) {
    // (1/n) sum_q <Z_q> = sum_i |a_i|^2 (n - 2 popcount(i)) / n.
    const int n = state.num_qubits();
    const cdouble* v = state.data();
    const double total = blocked_sum(state.size(), [v, n](std::size_t i) {
        return std::norm(v[i]) * static_cast<double>(n - 2 * std::popcount(i));
    });
    return total / n;
}

double expectation_z_mean(const DensityMatrix& rho) {
    const int n = rho.num_qubits();
    const std::size_t dim = rho.dim();
    double total = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        total += rho.at(i, i).real() * static_cast<double>(n - 2 * std::popcount(i));
    }
    return total / n;
}

}  // namespace dtc
