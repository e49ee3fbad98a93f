#pragma once

#include <cstddef>
#include <vector>

#include "dtc/state.hpp"

// Serial reference implementations. Every gate is built as a dense
// 2^n x 2^n matrix and applied by plain matrix arithmetic — a different
// algorithm from the strided kernels, so tests can use these as an
// independent oracle. Also the baseline for the kernel benchmark.
// O(4^n) per gate on pure states, O(8^n) on density matrices: small n only.

namespace dtc::reference {

// Row-major square complex matrix.
struct Matrix {
    std::size_t dim = 0;
    std::vector<cdouble> a;

    static Matrix identity(std::size_t dim);
    static Matrix zero(std::size_t dim);
    cdouble& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const cdouble& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

Matrix matmul(const Matrix& lhs, const Matrix& rhs);
Matrix dagger(const Matrix& m);

// Kronecker product; the first factor owns the high bits, matching the
// bit-q-is-qubit-q index convention.
Matrix kron(const Matrix& high, const Matrix& low);

// I x ... x U x ... x I with the 2x2 block U on qubit q of an n-qubit space.
Matrix embed_one_qubit(int n, int q, const Matrix& u);

Matrix kick_matrix(int n, int q, double eps);
Matrix zz_matrix(int n, int q, double coupling);
Matrix z_matrix(int n, int q);
Matrix cnot_matrix(int n, int control, int target);
Matrix rz_matrix(int n, int q, double theta);

void apply_unitary(PureState& state, const Matrix& u);
void apply_unitary(DensityMatrix& rho, const Matrix& u);  // U rho U^dag

// Kraus sum (1-p) rho + p Z_q rho Z_q with dense Z matrices.
void apply_dephasing_kraus(DensityMatrix& rho, int q, double p);

double expectation_z(const PureState& state, int q);
double expectation_z(const DensityMatrix& rho, int q);

}  // namespace dtc::reference
