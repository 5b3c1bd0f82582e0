#include "svcq/qsim/state.hpp"

#include <cmath>
#include <stdexcept>

namespace svcq {

namespace {

int qubits_for(Eigen::Index count) {
    int n = 1;
    while ((Eigen::Index{1} << n) < count) ++n;
    return n;
}

}  // namespace

void StateVector::validate() const {
    if (n_qubits < 1) throw std::invalid_argument("state needs at least one qubit");
    if (dim() != (Eigen::Index{1} << n_qubits))
        throw std::invalid_argument("amplitude count does not match qubit count");
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-10)
        throw std::invalid_argument("state not normalized: |amp|^2 = " + std::to_string(norm2));
}

void DensityMatrix::validate() const {
    if (entries.rows() != entries.cols())
        throw std::invalid_argument("density matrix must be square");
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("density matrix not Hermitian");
    if (std::abs(entries.trace().real() - 1.0) > 1e-10 || std::abs(entries.trace().imag()) > 1e-10)
        throw std::invalid_argument("density matrix trace must be 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(entries);
    if (eig.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

EncodedState amplitude_encode(const Eigen::VectorXd& x) {
    const double norm = x.norm();
    if (norm == 0.0) throw std::invalid_argument("cannot amplitude-encode the zero vector");

    const int n = qubits_for(x.size());
    const Eigen::Index padded = Eigen::Index{1} << n;
    EncodedState out;
    out.norm = norm;
    out.state.n_qubits = n;
    out.state.amplitudes = Eigen::VectorXcd::Zero(padded);
    for (Eigen::Index i = 0; i < x.size(); ++i) out.state.amplitudes(i) = x(i) / norm;
    out.state.validate();
    return out;
}

StateVector qram_superposition(const std::vector<Eigen::VectorXd>& cells,
                               const Eigen::VectorXcd& weights) {
    if (cells.empty()) throw std::invalid_argument("qram needs at least one cell");
    if (weights.size() != static_cast<Eigen::Index>(cells.size()))
        throw std::invalid_argument("weight count does not match cell count");
    if (std::abs(weights.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("qram weights must be normalized");

    Eigen::Index max_dim = 0;
    for (const auto& c : cells) max_dim = std::max(max_dim, c.size());
    const int data_qubits = qubits_for(max_dim);
    const int addr_qubits = qubits_for(static_cast<Eigen::Index>(cells.size()));
    const Eigen::Index data_dim = Eigen::Index{1} << data_qubits;
    const Eigen::Index addr_dim = Eigen::Index{1} << addr_qubits;

    StateVector s;
    s.n_qubits = addr_qubits + data_qubits;
    s.amplitudes = Eigen::VectorXcd::Zero(addr_dim * data_dim);
    for (std::size_t l = 0; l < cells.size(); ++l) {
        const auto enc = amplitude_encode(cells[l]);  // rejects zero cells
        for (Eigen::Index m = 0; m < enc.state.dim(); ++m)
            s.amplitudes(static_cast<Eigen::Index>(l) * data_dim + m) =
                weights(static_cast<Eigen::Index>(l)) * enc.state.amplitudes(m);
    }
    s.validate();
    return s;
}

DensityMatrix partial_trace_back(const StateVector& s, int keep_qubits) {
    if (keep_qubits < 1 || keep_qubits > s.n_qubits)
        throw std::invalid_argument("partial trace: bad register split");
    const Eigen::Index keep_dim = Eigen::Index{1} << keep_qubits;
    const Eigen::Index drop_dim = Eigen::Index{1} << (s.n_qubits - keep_qubits);

    DensityMatrix rho;
    rho.entries = Eigen::MatrixXcd::Zero(keep_dim, keep_dim);
    for (Eigen::Index a = 0; a < keep_dim; ++a)
        for (Eigen::Index b = 0; b < keep_dim; ++b)
            for (Eigen::Index m = 0; m < drop_dim; ++m)
                rho.entries(a, b) +=
                    s.amplitudes(a * drop_dim + m) * std::conj(s.amplitudes(b * drop_dim + m));
    return rho;
}

double overlap_sq(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits)
        throw std::invalid_argument("overlap: qubit count mismatch");
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    StateVector out;
    out.n_qubits = a.n_qubits + b.n_qubits;
    out.amplitudes = Eigen::VectorXcd::Zero(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        for (Eigen::Index j = 0; j < b.dim(); ++j)
            out.amplitudes(i * b.dim() + j) = a.amplitudes(i) * b.amplitudes(j);
    return out;
}

}  // namespace svcq
