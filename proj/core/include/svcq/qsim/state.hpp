#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace svcq {

// Normalized complex amplitude vector over n_qubits (length 2^n).
struct StateVector {
    int n_qubits = 1;
    Eigen::VectorXcd amplitudes;

    Eigen::Index dim() const { return amplitudes.size(); }
    // throws when the squared amplitudes do not sum to 1 within 1e-10
    void validate() const;
};

// Hermitian, unit-trace, positive semidefinite matrix.
struct DensityMatrix {
    Eigen::MatrixXcd entries;

    Eigen::Index dim() const { return entries.rows(); }
    void validate() const;
};

struct EncodedState {
    StateVector state;
    double norm = 0.0;  // original vector norm, kept for descaling
};

// Amplitude encoding: pads x with zeros to the next power of two (at
// least 2) and normalizes. The discarded norm is returned alongside.
EncodedState amplitude_encode(const Eigen::VectorXd& x);

// Emulated QRAM read: weights address a superposition of cells, each cell
// amplitude-encoded into a shared data register,
//   sum_l w_l |l> |cell_l>.
// Weights must already be normalized; cells must be nonzero.
StateVector qram_superposition(const std::vector<Eigen::VectorXd>& cells,
                               const Eigen::VectorXcd& weights);

// Reduced density matrix of the leading `keep_qubits` register.
DensityMatrix partial_trace_back(const StateVector& s, int keep_qubits);

// |<a|b>|^2, the phase-insensitive comparison used everywhere.
double overlap_sq(const StateVector& a, const StateVector& b);

StateVector tensor(const StateVector& a, const StateVector& b);

}  // namespace svcq
