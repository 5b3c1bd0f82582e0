#include "svcq/qsim/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace svcq {

ShotCount ShotCount::of(long n) {
    if (n < 1) throw std::invalid_argument("shot count must be >= 1");
    return ShotCount{false, n};
}

namespace {

long draw_binomial(long n, double p, SplitMix64& rng) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    std::binomial_distribution<long> dist(n, p);
    return dist(rng);
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

SwapTestResult swap_test(const StateVector& psi, const StateVector& phi, const ShotCount& sc,
                         SplitMix64& rng) {
    if (psi.n_qubits != phi.n_qubits)
        throw std::invalid_argument("swap test: qubit count mismatch");

    const double p0_exact = 0.5 + 0.5 * overlap_sq(psi, phi);
    SwapTestResult r;
    if (sc.is_exact) {
        r.p0 = p0_exact;
    } else {
        r.p0 = static_cast<double>(draw_binomial(sc.shots, p0_exact, rng)) /
               static_cast<double>(sc.shots);
    }
    r.overlap_sq = std::max(0.0, 2.0 * r.p0 - 1.0);
    return r;
}

namespace {

// Ancilla-1 probability on one branch of the norm-register evolution:
// after time t under |x| sigma_x, P(branch b, ancilla 1) = sin^2(|x_b| t)/2.
struct EvolutionStats {
    double p_anc1_branch0;
    double p_anc1_branch1;
};

EvolutionStats evolve_norm_register(double norm_i, double norm_j, double t) {
    const double si = std::sin(norm_i * t);
    const double sj = std::sin(norm_j * t);
    return EvolutionStats{0.5 * si * si, 0.5 * sj * sj};
}

double invert_norm(double p_anc1_branch, double t) {
    const double s = std::sqrt(clamp01(2.0 * p_anc1_branch));
    return std::asin(std::min(1.0, s)) / t;
}

}  // namespace

InnerProductEstimate inner_product_estimate(const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
                                            const ShotCount& sc, double eps, SplitMix64& rng) {
    if (!(eps > 0.0)) throw std::invalid_argument("accuracy eps must be > 0");
    const double ni = xi.norm();
    const double nj = xj.norm();
    if (ni == 0.0 || nj == 0.0)
        throw std::invalid_argument("inner product estimate needs nonzero vectors");
    if (xi.size() != xj.size())
        throw std::invalid_argument("inner product estimate: dimension mismatch");

    // evolution time keeps both angles within the monotone window
    const double t = 0.1 / std::max(ni, nj);
    const EvolutionStats ev = evolve_norm_register(ni, nj, t);

    // stage 2 of the chain: address register of the QRAM state against
    // the norm state (|x_i||0> - |x_j||1>)/sqrt(Z)
    const double z_true = ni * ni + nj * nj;
    const double w = std::sqrt(0.5);
    const Eigen::VectorXcd weights =
        (Eigen::VectorXcd(2) << std::complex<double>(w, 0.0), std::complex<double>(w, 0.0))
            .finished();
    const StateVector psi = qram_superposition({xi, xj}, weights);
    const DensityMatrix rho_addr = partial_trace_back(psi, 1);
    Eigen::VectorXcd phi(2);
    phi << ni / std::sqrt(z_true), -nj / std::sqrt(z_true);
    const double proj = (phi.adjoint() * rho_addr.entries * phi).value().real();
    const double p0_swap = clamp01(0.5 + 0.5 * proj);  // 1/2 + d^2/(4Z)

    InnerProductEstimate out;
    if (sc.is_exact) {
        const double zi = invert_norm(ev.p_anc1_branch0, t);
        const double zj = invert_norm(ev.p_anc1_branch1, t);
        out.norms_sq_sum = zi * zi + zj * zj;
        const double dist_sq = (2.0 * p0_swap - 1.0) * 2.0 * out.norms_sq_sum;
        out.dot = 0.5 * (out.norms_sq_sum - dist_sq);
        return out;
    }

    const long floor_shots = std::max(sc.shots, static_cast<long>(std::ceil(1.0 / (eps * eps))));

    // per-stage sample counts sized so each stage contributes at most
    // eps/5 of standard error to the final dot
    const double target = eps / 5.0;
    const long n_evolve = std::max(
        floor_shots,
        static_cast<long>(std::ceil(2.0 * z_true / (t * t * 0.25 * target * target))));
    const long n_swap = std::max(
        floor_shots,
        static_cast<long>(std::ceil(16.0 * z_true * z_true * 0.25 / (target * target))));

    // evolution stage: joint (branch, ancilla) counts; only the ancilla-1
    // cells feed the norm inversion
    const long c1b0 = draw_binomial(n_evolve, ev.p_anc1_branch0, rng);
    const long c1b1 = draw_binomial(n_evolve - c1b0,
                                    ev.p_anc1_branch1 / (1.0 - ev.p_anc1_branch0), rng);
    const double zi = invert_norm(static_cast<double>(c1b0) / static_cast<double>(n_evolve), t);
    const double zj = invert_norm(static_cast<double>(c1b1) / static_cast<double>(n_evolve), t);
    out.norms_sq_sum = zi * zi + zj * zj;

    // swap-test stage
    const long c0 = draw_binomial(n_swap, p0_swap, rng);
    const double p0_hat = static_cast<double>(c0) / static_cast<double>(n_swap);
    const double dist_sq = std::max(0.0, (2.0 * p0_hat - 1.0) * 2.0 * out.norms_sq_sum);
    out.dot = 0.5 * (out.norms_sq_sum - dist_sq);
    return out;
}

}  // namespace svcq
