#include "svcq/qsim/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace svcq {

namespace {

void require_hermitian(const Eigen::MatrixXcd& h, const char* what) {
    if (h.rows() != h.cols()) throw std::invalid_argument(std::string(what) + ": not square");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument(std::string(what) + ": not Hermitian within 1e-9");
}

double operator_norm(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

Eigen::MatrixXd star_graph(long m) {
    if (m < 1) throw std::invalid_argument("star graph needs m >= 1");
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m + 1, m + 1);
    j.row(0).tail(m).setOnes();
    j.col(0).tail(m).setOnes();
    return j;
}

double hermitian_norm(const Eigen::MatrixXcd& h) {
    require_hermitian(h, "hermitian_norm");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd hermitian_propagator(const Eigen::MatrixXcd& h, double scale) {
    require_hermitian(h, "propagator");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("propagator: eigendecomposition failed");
    const Eigen::Index n = h.rows();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const double a = -eig.eigenvalues()(r) * scale;
        phases(r) = std::complex<double>(std::cos(a), std::sin(a));
    }
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

TrotterResult trotter_exp(const Eigen::MatrixXcd& j, const Eigen::MatrixXcd& k,
                          const Eigen::MatrixXcd& gamma_inv_identity, double dt, double tr_f) {
    require_hermitian(j, "trotter factor J");
    require_hermitian(k, "trotter factor K");
    require_hermitian(gamma_inv_identity, "trotter factor gamma^-1 I");
    if (j.rows() != k.rows() || j.rows() != gamma_inv_identity.rows())
        throw std::invalid_argument("trotter factors must share one dimension");
    if (tr_f == 0.0) throw std::invalid_argument("trotter: tr_f must be nonzero");

    const double scale = dt / tr_f;
    TrotterResult r;
    r.approx = hermitian_propagator(j, scale) * hermitian_propagator(k, scale) *
               hermitian_propagator(gamma_inv_identity, scale);
    r.exact = hermitian_propagator(j + k + gamma_inv_identity, scale);
    r.error = operator_norm(r.approx - r.exact);
    return r;
}

DensityMatrix density_commutator_step(const DensityMatrix& rho, const Eigen::MatrixXcd& k_hat,
                                      double dt) {
    rho.validate();
    require_hermitian(k_hat, "density step generator");
    if (k_hat.rows() != rho.dim())
        throw std::invalid_argument("density step: dimension mismatch");
    const double knorm = hermitian_norm(k_hat);
    if (std::abs(dt) * knorm > 0.1 + 1e-15)
        throw std::invalid_argument("density step requires |dt| * ||K|| <= 0.1");

    const Eigen::MatrixXcd u = hermitian_propagator(k_hat, dt);
    DensityMatrix out;
    out.entries = u * rho.entries * u.adjoint();
    return out;
}

SpectralSolution spectral_invert(const Eigen::MatrixXd& f_hat, const Eigen::VectorXd& y,
                                 double eig_floor, int t_bits) {
    if (f_hat.rows() != f_hat.cols()) throw std::invalid_argument("spectral_invert: not square");
    if ((f_hat - f_hat.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("spectral_invert: matrix not symmetric within 1e-9");
    if (y.size() != f_hat.rows())
        throw std::invalid_argument("spectral_invert: right-hand side dimension mismatch");
    if (y.norm() == 0.0) throw std::invalid_argument("spectral_invert: zero right-hand side");
    if (!(eig_floor > 0.0)) throw std::invalid_argument("spectral_invert: eig_floor must be > 0");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f_hat);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("spectral_invert: eigendecomposition failed");

    Eigen::VectorXd u = Eigen::VectorXd::Zero(y.size());
    bool any_kept = false;
    for (Eigen::Index r = 0; r < y.size(); ++r) {
        double lambda = eig.eigenvalues()(r);
        if (t_bits > 0) {
            const double quantum = std::ldexp(1.0, -t_bits);
            lambda = std::round(lambda / quantum) * quantum;
        }
        if (std::abs(lambda) < eig_floor) continue;
        any_kept = true;
        u += (eig.eigenvectors().col(r).dot(y) / lambda) * eig.eigenvectors().col(r);
    }
    if (!any_kept)
        throw std::runtime_error("spectral_invert: every eigenvalue fell below the floor");

    SpectralSolution s;
    s.scale = u.norm();
    if (s.scale == 0.0)
        throw std::runtime_error("spectral_invert: right-hand side orthogonal to kept spectrum");
    s.solution_state = u / s.scale;
    return s;
}

}  // namespace svcq
