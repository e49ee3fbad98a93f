#include "dtc/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtc::reference {

Matrix Matrix::identity(std::size_t dim) {
    Matrix m = zero(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::zero(std::size_t dim) {
    Matrix m;
    m.dim = dim;
    m.a.assign(dim * dim, cdouble{0.0, 0.0});
    return m;
}

Matrix matmul(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim != rhs.dim) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix out = Matrix::zero(lhs.dim);
    const std::size_t d = lhs.dim;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const cdouble v = lhs.at(i, k);
            if (v == cdouble{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < d; ++j) out.at(i, j) += v * rhs.at(k, j);
        }
    }
    return out;
}

Matrix dagger(const Matrix& m) {
    Matrix out = Matrix::zero(m.dim);
    for (std::size_t r = 0; r < m.dim; ++r)
        for (std::size_t c = 0; c < m.dim; ++c) out.at(c, r) = std::conj(m.at(r, c));
    return out;
}

Matrix kron(const Matrix& high, const Matrix& low) {
    Matrix out = Matrix::zero(high.dim * low.dim);
    for (std::size_t rh = 0; rh < high.dim; ++rh)
        for (std::size_t ch = 0; ch < high.dim; ++ch)
            for (std::size_t rl = 0; rl < low.dim; ++rl)
                for (std::size_t cl = 0; cl < low.dim; ++cl)
                    out.at(rh * low.dim + rl, ch * low.dim + cl) =
                        high.at(rh, ch) * low.at(rl, cl);
    return out;
}

Matrix embed_one_qubit(int n, int q, const Matrix& u) {
    if (u.dim != 2) throw std::invalid_argument("embed_one_qubit: u must be 2x2");
    Matrix out = kron(Matrix::identity(std::size_t{1} << (n - 1 - q)), u);
    return kron(out, Matrix::identity(std::size_t{1} << q));
}

Matrix kick_matrix(int n, int q, double eps) {
    const double phi = std::numbers::pi / 2.0 * (1.0 - eps);
    Matrix u = Matrix::zero(2);
    u.at(0, 0) = std::cos(phi);
    u.at(0, 1) = cdouble{0.0, std::sin(phi)};
    u.at(1, 0) = cdouble{0.0, std::sin(phi)};
    u.at(1, 1) = std::cos(phi);
    return embed_one_qubit(n, q, u);
}

Matrix zz_matrix(int n, int q, double coupling) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix out = Matrix::zero(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double zq = ((i >> q) & 1u) ? -1.0 : 1.0;
        const double zq1 = ((i >> (q + 1)) & 1u) ? -1.0 : 1.0;
        out.at(i, i) = std::polar(1.0, coupling * zq * zq1);
    }
    return out;
}

Matrix z_matrix(int n, int q) {
    Matrix z = Matrix::zero(2);
    z.at(0, 0) = 1.0;
    z.at(1, 1) = -1.0;
    return embed_one_qubit(n, q, z);
}

Matrix cnot_matrix(int n, int control, int target) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix out = Matrix::zero(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t j = i;
        if ((i >> control) & 1u) j ^= std::size_t{1} << target;
        out.at(j, i) = 1.0;
    }
    return out;
}

Matrix rz_matrix(int n, int q, double theta) {
    Matrix u = Matrix::zero(2);
    u.at(0, 0) = std::polar(1.0, -theta / 2.0);
    u.at(1, 1) = std::polar(1.0, theta / 2.0);
    return embed_one_qubit(n, q, u);
}

void apply_unitary(PureState& state, const Matrix& u) {
    if (u.dim != state.size()) throw std::invalid_argument("apply_unitary: dimension mismatch");
    std::vector<cdouble> out(u.dim, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < u.dim; ++i)
        for (std::size_t j = 0; j < u.dim; ++j) out[i] += u.at(i, j) * state[j];
    for (std::size_t i = 0; i < u.dim; ++i) state[i] = out[i];
}

void apply_unitary(DensityMatrix& rho, const Matrix& u) {
    if (u.dim != rho.dim()) throw std::invalid_argument("apply_unitary: dimension mismatch");
    const std::size_t d = u.dim;
    Matrix tmp = Matrix::zero(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const cdouble v = u.at(i, k);
            if (v == cdouble{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < d; ++j) tmp.at(i, j) += v * rho.at(k, j);
        }
    const Matrix ud = dagger(u);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            cdouble acc{0.0, 0.0};
            for (std::size_t k = 0; k < d; ++k) acc += tmp.at(i, k) * ud.at(k, j);
            rho.at(i, j) = acc;
        }
}

void apply_dephasing_kraus(DensityMatrix& rho, int q, double p) {
    const Matrix z = z_matrix(rho.num_qubits(), q);
    const std::size_t d = rho.dim();
    DensityMatrix flipped = rho;
    apply_unitary(flipped, z);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rho.at(i, j) = (1.0 - p) * rho.at(i, j) + p * flipped.at(i, j);
}

double expectation_z(const PureState& state, int q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double pr = std::norm(state[i]);
        acc += ((i >> q) & 1u) ? -pr : pr;
    }
    return acc;
}

double expectation_z(const DensityMatrix& rho, int q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        const double pr = rho.at(i, i).real();
        acc += ((i >> q) & 1u) ? -pr : pr;
    }
    return acc;
}

}  // namespace dtc::reference
