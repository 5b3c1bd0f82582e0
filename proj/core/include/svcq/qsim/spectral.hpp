#pragma once

#include <Eigen/Dense>

#include "svcq/qsim/state.hpp"

namespace svcq {

// (M+1) x (M+1) star-graph adjacency: hub row/column of ones, zero block
// elsewhere. Nonzero eigenvalues are +/- sqrt(M).
Eigen::MatrixXd star_graph(long m);

// max |eigenvalue| of a Hermitian matrix
double hermitian_norm(const Eigen::MatrixXcd& h);

// exp(-i H scale) for Hermitian H, through the eigendecomposition
Eigen::MatrixXcd hermitian_propagator(const Eigen::MatrixXcd& h, double scale);

struct TrotterResult {
    Eigen::MatrixXcd approx;  // product of the three factor propagators
    Eigen::MatrixXcd exact;   // propagator of the summed generator
    double error = 0.0;       // operator-norm difference, O(dt^2)
};

// First-order product formula for exp(-i (J + K + g I) dt / tr_f):
// the three factors applied in that order against the exact propagator.
TrotterResult trotter_exp(const Eigen::MatrixXcd& j, const Eigen::MatrixXcd& k,
                          const Eigen::MatrixXcd& gamma_inv_identity, double dt, double tr_f);

// Exact conjugation exp(-i K dt) rho exp(+i K dt). Enforces
// |dt| * ||K|| <= 0.1 so the first-order commutator expansion this models
// stays in its validity window.
DensityMatrix density_commutator_step(const DensityMatrix& rho, const Eigen::MatrixXcd& k_hat,
                                      double dt);

struct SpectralSolution {
    Eigen::VectorXd solution_state;  // unit vector
    double scale = 0.0;              // norm removed by the final normalization
};

// Filtered spectral inversion of a symmetric matrix: eigencomponents with
// |lambda| >= eig_floor are inverted, the rest dropped. When t_bits > 0
// each eigenvalue is first rounded to that many fractional binary digits,
// modeling a finite-width estimation register.
SpectralSolution spectral_invert(const Eigen::MatrixXd& f_hat, const Eigen::VectorXd& y,
                                 double eig_floor, int t_bits = 0);

}  // namespace svcq
