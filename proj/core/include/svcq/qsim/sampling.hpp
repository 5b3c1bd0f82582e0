#pragma once

#include <Eigen/Dense>

#include "svcq/qsim/state.hpp"
#include "svcq/rng.hpp"

namespace svcq {

// Measurement budget: either analytic probabilities (exact) or a finite
// shot count.
struct ShotCount {
    bool is_exact = true;
    long shots = 0;

    static ShotCount exact() { return ShotCount{true, 0}; }
    static ShotCount of(long n);
};

struct SwapTestResult {
    double p0 = 1.0;          // ancilla-0 probability, 1/2 + |<psi|phi>|^2 / 2
    double overlap_sq = 1.0;  // max(0, 2 p0 - 1)
};

// Swap test between two pure states of equal width. Shots mode estimates
// p0 from that many Bernoulli(p0) samples drawn through rng.
SwapTestResult swap_test(const StateVector& psi, const StateVector& phi, const ShotCount& sc,
                         SplitMix64& rng);

struct InnerProductEstimate {
    double dot = 0.0;
    double norms_sq_sum = 0.0;  // |x_i|^2 + |x_j|^2
};

// Estimates x_i . x_j as (Z - |x_i - x_j|^2) / 2 through the
// ancilla-register chain:
//   1. QRAM read of both cells into (|0>|x_i^> + |1>|x_j^>)/sqrt(2),
//   2. sigma_x-coupled evolution of the norm register at
//      t = 0.1 / max(|x_i|, |x_j|); the ancilla-1 statistics recover the
//      two norms and hence Z = |x_i|^2 + |x_j|^2,
//   3. swap test of (|x_i||0> - |x_j||1>)/sqrt(Z) against the reduced
//      address register, whose excess over 1/2 is |x_i - x_j|^2 / (4 Z).
// Exact mode inverts the analytic probabilities and matches the classical
// dot to machine precision. Shots mode treats the given shot count and
// ceil(eps^-2) as floors and raises the per-stage sample count until the
// propagated standard error is below eps / 3.5, so the estimate lands
// within eps with better than 99% probability.
InnerProductEstimate inner_product_estimate(const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
                                            const ShotCount& sc, double eps, SplitMix64& rng);

}  // namespace svcq
