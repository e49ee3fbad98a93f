#include "exact_engine.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

// Density-matrix evolution in the Pauli-transfer representation. The state
// is the real coefficient vector x[P] = tr(sigma_P rho) over the 4^n Pauli
// strings, two bits per qubit with I=0, X=1, Y=2, Z=3. In this basis one
// period of the dephased Floquet channel is
//
//   kick on qubit q:  rotates the (Y_q, Z_q) coefficient pairs by 2 phi
//   bond (q, q+1)  :  rotates string pairs P <-> P xor (1111 << 2q) by 2 J_q
//                     for strings where exactly one of the two fields
//                     anticommutes with Z (the pair member holding X gains
//                     +sin, the one holding Y gains -sin)
//   dephasing      :  scales x[P] by (1-2p)^(# X/Y fields of P)
//
// and <Z_q> is the single coefficient x[Z_q]. The trace coefficient x[0]
// is never touched. Dephasing commutes with the bond rotations (they
// preserve the X/Y count), which lets the step split into two
// cache-resident sweeps around a transpose: low-half fields in rows of one
// layout, high-half fields after transposing, and the one straddling bond
// as a separate row-pair pass.

namespace dtc::detail {

namespace {

constexpr int kSplitThreshold = 8;   // below this the state fits in cache
constexpr std::size_t kScatterBlock = 8;  // 8 doubles = one cache line

inline void rotate_pair(double& u, double& w, double c, double s) {
    const double nu = c * u + s * w;
    const double nw = c * w - s * u;
    u = nu;
    w = nw;
}

// (Y, Z) rotation by 2 phi on field f of a 4^m slab.
void kick_field(double* __restrict x, int m, int f, double c, double s) {
    const std::size_t q4 = std::size_t{1} << (2 * f);
    const std::size_t blk = q4 << 2;
    const std::size_t size = std::size_t{1} << (2 * m);
    for (std::size_t base = 0; base < size; base += blk) {
        double* __restrict y = x + base + 2 * q4;
        double* __restrict z = x + base + 3 * q4;
        for (std::size_t i = 0; i < q4; ++i) {
            const double ny = c * y[i] + s * z[i];
            const double nz = c * z[i] - s * y[i];
            y[i] = ny;
            z[i] = nz;
        }
    }
}

// Kick on fields 0 and 1 plus bond (0,1) on one 16-double tile held in
// registers; the inner strides are too short to vectorize as loops.
inline void low_tile16(double* __restrict t, double ck, double sk, double cz, double sz,
                       bool has_bond) {
    rotate_pair(t[2], t[3], ck, sk);
    rotate_pair(t[6], t[7], ck, sk);
    rotate_pair(t[10], t[11], ck, sk);
    rotate_pair(t[14], t[15], ck, sk);
    rotate_pair(t[8], t[12], ck, sk);
    rotate_pair(t[9], t[13], ck, sk);
    rotate_pair(t[10], t[14], ck, sk);
    rotate_pair(t[11], t[15], ck, sk);
    if (has_bond) {
        rotate_pair(t[1], t[14], cz, sz);
        rotate_pair(t[13], t[2], cz, sz);
        rotate_pair(t[4], t[11], cz, sz);
        rotate_pair(t[7], t[8], cz, sz);
    }
}

// Bond rotation between fields f and f+1 of a 4^m slab; four canonical
// pair patterns, the X holder listed first.
void zz_bond(double* __restrict x, int m, int f, double c, double s) {
    const std::size_t a4 = std::size_t{1} << (2 * f);
    const std::size_t b4 = a4 << 2;
    const std::size_t blk = a4 << 4;
    const std::size_t size = std::size_t{1} << (2 * m);
    for (std::size_t base = 0; base < size; base += blk) {
        double* __restrict ctx = x + base;
        for (std::size_t i = 0; i < a4; ++i) {
            rotate_pair(ctx[i + a4], ctx[i + 2 * a4 + 3 * b4], c, s);          // XI <-> YZ
            rotate_pair(ctx[i + a4 + 3 * b4], ctx[i + 2 * a4], c, s);          // XZ <-> YI
            rotate_pair(ctx[i + b4], ctx[i + 3 * a4 + 2 * b4], c, s);          // IX <-> ZY
            rotate_pair(ctx[i + 3 * a4 + b4], ctx[i + 2 * b4], c, s);          // ZX <-> IY
        }
    }
}

// Per-half tables and geometry.
struct Half {
    int fields = 0;               // qubit count in this half
    int first_qubit = 0;          // global index of the half's lowest qubit
    std::size_t dim = 1;          // 4^fields
    std::vector<int> bonds;       // global bond indices internal to the half
    std::vector<double> dephase;  // (1-2p)^xyCount(half index)
};

int xy_count(std::size_t idx, int fields) {
    int count = 0;
    for (int f = 0; f < fields; ++f) {
        const unsigned v = (idx >> (2 * f)) & 3u;
        count += (v == 1u || v == 2u) ? 1 : 0;
    }
    return count;
}

class PauliEvolver {
  public:
    explicit PauliEvolver(const FloquetParams& params)
        : n_(params.n), steps_(params.steps), couplings_(params.couplings) {
        const double phi = std::numbers::pi / 2.0 * (1.0 - params.eps);
        ck_ = std::cos(2.0 * phi);
        sk_ = std::sin(2.0 * phi);
        for (double j : couplings_) {
            czz_.push_back(std::cos(2.0 * j));
            szz_.push_back(std::sin(2.0 * j));
        }
        const double damp = 1.0 - 2.0 * params.p;

        split_ = n_ >= kSplitThreshold;
        low_.fields = split_ ? n_ / 2 : n_;
        high_.fields = n_ - (split_ ? low_.fields : n_);
        low_.first_qubit = 0;
        high_.first_qubit = low_.fields;
        low_.dim = std::size_t{1} << (2 * low_.fields);
        high_.dim = std::size_t{1} << (2 * high_.fields);
        for (int q = 0; q + 1 < n_; ++q) {
            if (q + 1 <= low_.fields - 1) {
                low_.bonds.push_back(q);
            } else if (q >= low_.fields) {
                high_.bonds.push_back(q);
            }  // q == low_.fields - 1 straddles the halves
        }
        for (Half* half : {&low_, &high_}) {
            half->dephase.resize(half->dim);
            for (std::size_t i = 0; i < half->dim; ++i) {
                half->dephase[i] = std::pow(damp, xy_count(i, half->fields));
            }
        }

        const std::size_t size = std::size_t{1} << (2 * n_);
        a_.assign(size, 0.0);
        if (split_) b_.assign(size, 0.0);

        // |0><0|^n: coefficient 1 on every I/Z-only string. Layout starts
        // high-major (low fields contiguous).
        for (std::size_t bits = 0; bits < (std::size_t{1} << n_); ++bits) {
            std::size_t idx = 0;
            for (int q = 0; q < n_; ++q) {
                if ((bits >> q) & 1u) idx |= std::size_t{3} << (2 * q);
            }
            a_[idx] = 1.0;
        }
        lo_major_ = false;
    }

    MagnetizationTrace run() {
        MagnetizationTrace trace;
        trace.values.reserve(static_cast<std::size_t>(steps_));
        for (int k = 0; k < steps_; ++k) {
            if (split_) {
                step_split();
            } else {
                step_simple();
            }
            trace.values.push_back(magnetization());
        }
        return trace;
    }

  private:
    void step_simple() { row_ops(a_.data(), low_); }

    // Applies one half's kicks, internal bonds and dephasing to one
    // contiguous row.
    void row_ops(double* row, const Half& half) const {
        const int m = half.fields;
        if (m >= 2) {
            const bool has_bond0 =
                !half.bonds.empty() && half.bonds.front() == half.first_qubit;
            const double cz = has_bond0 ? czz_[static_cast<std::size_t>(half.first_qubit)] : 1.0;
            const double sz = has_bond0 ? szz_[static_cast<std::size_t>(half.first_qubit)] : 0.0;
            for (std::size_t base = 0; base < half.dim; base += 16) {
                low_tile16(row + base, ck_, sk_, cz, sz, has_bond0);
            }
            for (int f = 2; f < m; ++f) kick_field(row, m, f, ck_, sk_);
            for (int q : half.bonds) {
                const int f = q - half.first_qubit;
                if (f == 0) continue;  // fused into the tile pass
                zz_bond(row, m, f, czz_[static_cast<std::size_t>(q)],
                        szz_[static_cast<std::size_t>(q)]);
            }
        } else {
            for (int f = 0; f < m; ++f) kick_field(row, m, f, ck_, sk_);
        }
        const double* __restrict d = half.dephase.data();
        for (std::size_t i = 0; i < half.dim; ++i) row[i] *= d[i];
    }

    void step_split() {
        // Row content half before the transpose, and after it.
        const Half& first = lo_major_ ? high_ : low_;
        const Half& second = lo_major_ ? low_ : high_;
        const std::size_t rlen = first.dim;   // row length in the input layout
        const std::size_t rows = second.dim;  // row count in the input layout

        double* src = a_.data();
        double* dst = b_.data();

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t rb = 0; rb < static_cast<std::ptrdiff_t>(rows);
             rb += static_cast<std::ptrdiff_t>(kScatterBlock)) {
            static thread_local std::vector<double> scratch;
            scratch.resize(kScatterBlock * rlen);
            const std::size_t r0 = static_cast<std::size_t>(rb);
            const std::size_t nr = std::min(kScatterBlock, rows - r0);
            for (std::size_t j = 0; j < nr; ++j) {
                double* row = scratch.data() + j * rlen;
                const double* in = src + (r0 + j) * rlen;
                for (std::size_t i = 0; i < rlen; ++i) row[i] = in[i];
                row_ops(row, first);
            }
            for (std::size_t col = 0; col < rlen; ++col) {
                double* out = dst + col * rows + r0;
                for (std::size_t j = 0; j < nr; ++j) out[j] = scratch[j * rlen + col];
            }
        }

        // Second sweep plus the straddling bond in one pass: the four rows
        // that differ only in the boundary field of the row index form a
        // closed quad under the cross-bond rotation.
        const int row_shift = lo_major_ ? 0 : 2 * (low_.fields - 1);
        const int col_shift = lo_major_ ? 2 * (low_.fields - 1) : 0;
        const std::size_t rq = std::size_t{1} << row_shift;
        const double cx = czz_[static_cast<std::size_t>(low_.fields - 1)];
        const double sx = szz_[static_cast<std::size_t>(low_.fields - 1)];
        const std::size_t quads = rlen / 4;

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(quads); ++t) {
            const std::size_t u = static_cast<std::size_t>(t);
            const std::size_t base = ((u >> row_shift) << (row_shift + 2)) | (u & (rq - 1));
            double* quad[4];
            for (int v = 0; v < 4; ++v) {
                quad[v] = dst + (base + static_cast<std::size_t>(v) * rq) * rows;
                row_ops(quad[v], second);
            }
            cross_quad(quad, rows, col_shift, cx, sx);
        }

        a_.swap(b_);
        lo_major_ = !lo_major_;
    }

    // Cross-bond rotation between the row field (value v of quad[v]) and
    // the column field at col_shift. Four disjoint pair patterns, the X
    // holder first.
    static void cross_quad(double* quad[4], std::size_t rlen, int col_shift, double c, double s) {
        const std::size_t c4 = std::size_t{1} << col_shift;
        double* __restrict ri = quad[0];
        double* __restrict rx = quad[1];
        double* __restrict ry = quad[2];
        double* __restrict rz = quad[3];
        for (std::size_t b = 0; b < rlen; b += 4 * c4) {
            for (std::size_t i = b; i < b + c4; ++i) {
                rotate_pair(rx[i], ry[i + 3 * c4], c, s);          // (X,I) <-> (Y,Z)
                rotate_pair(rx[i + 3 * c4], ry[i], c, s);          // (X,Z) <-> (Y,I)
                rotate_pair(ri[i + c4], rz[i + 2 * c4], c, s);     // (I,X) <-> (Z,Y)
                rotate_pair(rz[i + c4], ri[i + 2 * c4], c, s);     // (Z,X) <-> (I,Y)
            }
        }
    }

    double magnetization() const {
        double acc = 0.0;
        for (int q = 0; q < n_; ++q) {
            std::size_t idx;
            if (!split_) {
                idx = std::size_t{3} << (2 * q);
            } else if (q < low_.fields) {
                const std::size_t lo = std::size_t{3} << (2 * q);
                idx = lo_major_ ? lo * high_.dim : lo;
            } else {
                const std::size_t hi = std::size_t{3} << (2 * (q - low_.fields));
                idx = lo_major_ ? hi : hi * low_.dim;
            }
            acc += a_[idx];
        }
        return acc / n_;
    }

    int n_;
    int steps_;
    std::vector<double> couplings_;
    std::vector<double> czz_, szz_;
    double ck_ = 0.0, sk_ = 0.0;
    bool split_ = false;
    bool lo_major_ = false;
    Half low_, high_;
    std::vector<double> a_, b_;
};

}  // namespace

MagnetizationTrace evolve_exact_density(const FloquetParams& params) {
    return PauliEvolver(params).run();
}

}  // namespace dtc::detail
