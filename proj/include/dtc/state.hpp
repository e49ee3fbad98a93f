#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "dtc/errors.hpp"

// State representations and the gate/channel/measurement kernels everything
// else is built on. Basis convention, fixed globally: basis index bit q
// holds the computational value of qubit q, so |0...0> is index 0 and
// qubit 0 is the least significant bit.
//
// Kernels are strided bit-pair passes parallelized with OpenMP. They are
// pure elementwise maps (no floating-point reductions), so results are
// identical for any thread count; expectation values use a fixed-block
// reduction for the same reason.

namespace dtc {

using cdouble = std::complex<double>;

inline constexpr int kMaxPureQubits = 24;     // 2^24 amplitudes = 256 MiB
inline constexpr int kMaxDensityQubits = 12;  // 4^12 entries    = 256 MiB

// Complex amplitude vector over the 2^n computational basis states.
// Constructed in |0>^n.
class PureState {
  public:
    explicit PureState(int n);

    int num_qubits() const { return n_; }
    std::size_t size() const { return amps_.size(); }
    cdouble* data() { return amps_.data(); }
    const cdouble* data() const { return amps_.data(); }
    cdouble& operator[](std::size_t i) { return amps_[i]; }
    const cdouble& operator[](std::size_t i) const { return amps_[i]; }

    // Sum of |amplitude|^2; 1 within 1e-10 after any unitary kernel chain.
    double norm() const;

  private:
    int n_;
    std::vector<cdouble> amps_;
};

// Dense 2^n x 2^n operator, row-major, same bit convention as PureState.
// Constructed in |0><0|.
class DensityMatrix {
  public:
    explicit DensityMatrix(int n);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return rho_.size(); }
    cdouble* data() { return rho_.data(); }
    const cdouble* data() const { return rho_.data(); }
    cdouble& at(std::size_t r, std::size_t c) { return rho_[r * dim_ + c]; }
    const cdouble& at(std::size_t r, std::size_t c) const { return rho_[r * dim_ + c]; }

    double trace_real() const;

  private:
    int n_;
    std::size_t dim_;
    std::vector<cdouble> rho_;
};

// exp(i phi X_q) with phi = (pi/2)(1 - eps): matrix
// [[cos phi, i sin phi], [i sin phi, cos phi]] on qubit q.
void apply_kick(PureState& state, int q, double eps);
void apply_kick(DensityMatrix& rho, int q, double eps);

// exp(i J Z_q Z_{q+1}) as a direct diagonal phase: e^{+iJ} on equal bits,
// e^{-iJ} otherwise. Equivalence with the CNOT-RZ-CNOT circuit form is a
// test, not a runtime path. Requires q < n-1 (open boundary).
void apply_zz(PureState& state, int q, double coupling);
void apply_zz(DensityMatrix& rho, int q, double coupling);

// Pauli Z on qubit q; trajectory sampler only.
void apply_z(PureState& state, int q);

// E_q(rho) = (1-p) rho + p Z_q rho Z_q, applied as the algebraically
// identical (1-2p) damping of every entry whose bit q differs between row
// and column. One pass, no temporaries.
void apply_dephasing_exact(DensityMatrix& rho, int q, double p);

double expectation_z(const PureState& state, int q);
double expectation_z(const DensityMatrix& rho, int q);

// Mean of <Z_q> over all qubits, computed in a single pass.
double expectation_z_mean(const PureState& state);
double expectation_z_mean(const DensityMatrix& rho);

}  // namespace dtc
