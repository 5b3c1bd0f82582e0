// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "svcq/bench.hpp"
#include "svcq/qsim/grover.hpp"
#include "svcq/qsim/sampling.hpp"
#include "svcq/qsim/spectral.hpp"
#include "svcq/qsvc.hpp"
#include "test_util.hpp"

using namespace svcq;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  [%2d] %s%s%s\n", ok ? "PASS" : "FAIL", index, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

char buf[256];

// 1. training equals an independent dense solve on random instances
void criterion_1() {
    const auto t0 = Clock::now();
    SplitMix64 rng(20240202);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(31));
        const int n = 1 + static_cast<int>(rng.below(8));
        Dataset d;
        d.points.resize(m, n);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < n; ++j) d.points(i, j) = rng.gaussian();
        for (int i = 0; i < m; ++i) d.ids.push_back("p" + std::to_string(i));
        std::vector<int> labels;
        for (int i = 0; i < m; ++i) labels.push_back(rng.uniform01() < 0.5 ? 1 : -1);

        KernelSpec spec = KernelSpec::linear();
        if (trial % 3 == 1) spec = KernelSpec::polynomial(2 + static_cast<int>(rng.below(2)));
        if (trial % 3 == 2) spec = KernelSpec::gaussian(0.2 + rng.uniform01());
        TrainConfig cfg;
        cfg.gamma = 0.5 + 4.5 * rng.uniform01();

        const auto model = train(d, labels, spec, cfg);
        const auto f = assemble_system(kernel_matrix(spec, d), cfg.gamma);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
        for (int i = 0; i < m; ++i) rhs(i + 1) = labels[static_cast<std::size_t>(i)];
        const auto oracle = test::gauss_solve(f, rhs);

        worst = std::max(worst, std::abs(model.bias - oracle(0)));
        worst = std::max(worst, (model.alpha - oracle.tail(m)).cwiseAbs().maxCoeff());
    }
    const double secs = seconds_since(t0);
    std::snprintf(buf, sizeof(buf), "max component error %.2e, %.2f s", worst, secs);
    report(1, "LS-SVM oracle equivalence (100 random instances)", worst <= 1e-10 && secs < 5.0,
           buf);
}

// 2. hand-solved fixtures
void criterion_2() {
    Dataset d;
    d.points = Eigen::MatrixXd::Identity(2, 2);
    d.ids = {"a", "b"};
    TrainConfig cfg;

    const auto binary = train(d, {1, -1}, KernelSpec::linear(), cfg);
    const auto one_class = train_one_class(d, KernelSpec::linear(), cfg);

    const bool ok = std::abs(binary.bias) <= 1e-12 &&
                    std::abs(binary.alpha(0) - 0.5) <= 1e-12 &&
                    std::abs(binary.alpha(1) + 0.5) <= 1e-12 &&
                    std::abs(one_class.bias - 1.0) <= 1e-12 &&
                    one_class.alpha.cwiseAbs().maxCoeff() <= 1e-12;
    std::snprintf(buf, sizeof(buf), "binary (b=%.1e, a=(%.3f,%.3f)), one-class (b=%.12f)",
                  binary.bias, binary.alpha(0), binary.alpha(1), one_class.bias);
    report(2, "hand-solved training fixtures", ok, buf);
}

// 3. star graph spectrum
void criterion_3() {
    bool ok = true;
    for (long m : {2L, 4L, 9L, 16L, 64L}) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(star_graph(m));
        const double root = std::sqrt(static_cast<double>(m));
        ok = ok && std::abs(eig.eigenvalues()(0) + root) <= 1e-9 &&
             std::abs(eig.eigenvalues()(m) - root) <= 1e-9;
        for (long r = 1; r < m; ++r) ok = ok && std::abs(eig.eigenvalues()(r)) <= 1e-9;
    }
    report(3, "star graph extreme eigenvalues +/- sqrt(M)", ok, "M in {2,4,9,16,64}");
}

// 4. product-formula error order
void criterion_4() {
    SplitMix64 rng(77001);
    bool ok = true;
    double worst_lo = 10.0, worst_hi = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index dim = 4 + static_cast<Eigen::Index>(rng.below(13));
        Eigen::MatrixXcd j = test::random_hermitian(dim, rng);
        j -= (j.trace() / static_cast<double>(dim)) * Eigen::MatrixXcd::Identity(dim, dim);
        const auto k = test::random_hermitian(dim, rng);
        const Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(dim, dim);
        const double trf = static_cast<double>(dim);

        std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};
        std::vector<double> errs;
        for (double dt : dts) errs.push_back(trotter_exp(j, k, g, dt, trf).error);
        const double slope = loglog_slope(dts, errs);
        worst_lo = std::min(worst_lo, slope);
        worst_hi = std::max(worst_hi, slope);
        ok = ok && slope >= 1.8 && slope <= 2.2;
    }
    std::snprintf(buf, sizeof(buf), "slopes in [%.3f, %.3f]", worst_lo, worst_hi);
    report(4, "product-formula error slope in [1.8, 2.2]", ok, buf);
}

// 5. density conjugation vs first-order expansion
void criterion_5() {
    SplitMix64 rng(88001);
    bool ok = true;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::MatrixXcd a(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                a(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
        DensityMatrix rho;
        rho.entries = a * a.adjoint();
        rho.entries /= rho.entries.trace().real();
        const auto k = test::random_hermitian(4, rng);
        const double knorm = hermitian_norm(k);
        const double dt = (0.02 + 0.07 * rng.uniform01()) / std::max(knorm, 1e-9);

        const auto out = density_commutator_step(rho, k, dt);
        const Eigen::MatrixXcd commutator = k * rho.entries - rho.entries * k;
        const Eigen::MatrixXcd first_order =
            rho.entries - std::complex<double>(0.0, dt) * commutator;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.entries - first_order);
        const double diff = eig.eigenvalues().cwiseAbs().maxCoeff();
        const double bound = 2.0 * dt * dt * knorm * knorm;
        worst_ratio = std::max(worst_ratio, diff / bound);
        ok = ok && diff <= bound;
    }
    std::snprintf(buf, sizeof(buf), "worst remainder/bound ratio %.3f", worst_ratio);
    report(5, "density step within the first-order remainder bound", ok, buf);
}

// 6. grover exactness
void criterion_6() {
    bool ok = true;
    std::string detail;

    const auto n2 = grover_search([](std::uint64_t i) { return i == 1; }, 2, 1, 5);
    ok = ok && n2.iterations == 1 && std::abs(n2.success_probability - 1.0) <= 1e-9 &&
         n2.found_index && *n2.found_index == 1;

    const auto n3 = grover_search([](std::uint64_t i) { return i == 6; }, 3, 1, 5);
    const double expect3 = std::pow(std::sin(5.0 * std::asin(std::sqrt(1.0 / 8.0))), 2);
    ok = ok && std::abs(expect3 - 0.9453) <= 1e-4;
    ok = ok && std::abs(n3.success_probability - expect3) <= 1e-9;

    double worst = 0.0;
    for (int n = 1; n <= 10 && ok; ++n) {
        const std::uint64_t space = std::uint64_t{1} << n;
        for (std::uint64_t k = 1; k <= space; ++k) {
            const double theta =
                std::asin(std::sqrt(static_cast<double>(k) / static_cast<double>(space)));
            GroverSim sim(space, k);
            const long r = static_cast<long>(std::floor(0.25 * 3.14159265358979323846 /
                                                        std::max(theta, 1e-12)));
            for (long i = 0; i < r; ++i) sim.iterate();
            const double formula = std::abs(std::sin((2.0 * r + 1.0) * theta));
            worst = std::max(worst, std::abs(sim.marked_norm() - formula));
        }
    }
    ok = ok && worst <= 1e-9;
    std::snprintf(buf, sizeof(buf),
                  "n=2 p=%.9f after %ld iters; n=3 p=%.6f; amplitude-formula gap %.1e",
                  n2.success_probability, n2.iterations, n3.success_probability, worst);
    report(6, "grover success probabilities and amplitude formula", ok, buf);
}

// 7. kernel estimator statistics
void criterion_7() {
    SplitMix64 rng(99001);
    int hits = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(7));
        const Eigen::VectorXd a = test::random_unit(dim, rng);
        const Eigen::VectorXd b = test::random_unit(dim, rng);
        SplitMix64 stream(derive_seed(4242, static_cast<std::uint64_t>(trial)));
        const auto est = inner_product_estimate(a, b, ShotCount::of(10000), 0.02, stream);
        if (std::abs(est.dot - a.dot(b)) <= 0.02) ++hits;
    }
    std::snprintf(buf, sizeof(buf), "%d/100 pairs within 0.02", hits);
    report(7, "sampled kernel estimator accuracy (eps=0.02, 1e4 shots)", hits >= 95, buf);
}

// 8. backend agreement on the two-blob fixture
void criterion_8() {
    const auto t0 = Clock::now();
    const auto blobs = test::two_blob_fixture(42, 30);

    TrainConfig tc;
    const auto cm = fit_contour(blobs, KernelSpec::gaussian(2.0), tc);
    const auto classical = build_adjacency(cm, blobs, 10);
    const auto cpart = cluster_finding(classical.adjacency);

    QTrainConfig qc;
    qc.seed = 42;
    const auto qm = q_fit_contour(blobs, KernelSpec::gaussian(2.0), qc);
    const auto quantum = q_build_adjacency(qm, blobs, 10, qc);
    const auto qpart = quantum_cluster_finding(quantum.adjacency, qc).first;

    bool identical = true;
    for (long i = 0; i < 60 && identical; ++i)
        for (long j = 0; j < 60 && identical; ++j)
            identical = quantum.adjacency.at(i, j) == classical.adjacency.at(i, j);

    bool pure = cpart.cluster_count == 2;
    for (const auto& cluster : cpart.clusters) {
        const int blob = blob_of_id(blobs.ids[static_cast<std::size_t>(cluster.front())]);
        for (long v : cluster)
            pure = pure && blob_of_id(blobs.ids[static_cast<std::size_t>(v)]) == blob;
    }

    const double secs = seconds_since(t0);
    const bool ok = identical && pure && qpart.clusters == cpart.clusters &&
                    cpart.cluster_count == 2 && secs < 30.0;
    std::snprintf(buf, sizeof(buf),
                  "adjacency identical=%d, clusterCount=%d, partition match=%d, %.2f s",
                  identical, cpart.cluster_count, qpart.clusters == cpart.clusters, secs);
    report(8, "quantum-exact backend agreement on the two-blob fixture", ok, buf);
}

// 9. scaling fits
void criterion_9() {
    const auto t0 = Clock::now();
    std::vector<double> ms, scans, queries;
    for (long m : {64L, 256L, 1024L, 4096L}) {
        long s = 0;
        cluster_finding(AdjacencyMatrix::all_ones(m), &s);
        QTrainConfig qc;
        qc.seed = 7;
        const auto stats = quantum_cluster_finding(AdjacencyMatrix::all_ones(m), qc).second;
        ms.push_back(static_cast<double>(m));
        scans.push_back(static_cast<double>(s));
        queries.push_back(static_cast<double>(stats.oracle_queries));
    }
    const double classical_slope = loglog_slope(ms, scans);
    const double quantum_slope = loglog_slope(ms, queries);
    const double secs = seconds_since(t0);
    const bool ok = classical_slope >= 1.9 && classical_slope <= 2.1 && quantum_slope >= 1.3 &&
                    quantum_slope <= 1.7 && secs < 60.0;
    std::snprintf(buf, sizeof(buf), "classical %.3f, quantum %.3f, %.2f s", classical_slope,
                  quantum_slope, secs);
    report(9, "identification cost slopes over M in {64..4096}", ok, buf);
}

// 10. labeled-accuracy comparison
void criterion_10() {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "svcq_acceptance_table1";
    fs::remove_all(dir);
    fs::create_directories(dir);

    Eigen::VectorXd c0 = Eigen::VectorXd::Zero(30);
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(30);
    for (int i = 0; i < 3; ++i) {
        c0(i) = 1.5;
        c1(i) = -1.5;
    }
    auto d = synth_blobs(2025, {{c0, 1.0, 150}, {c1, 1.0, 150}});
    std::vector<int> labels;
    for (const auto& id : d.ids) labels.push_back(blob_of_id(id) == 0 ? 1 : -1);
    d.labels = labels;
    const auto csv = (dir / "labeled30.csv").string();
    save_csv(d, csv, true);

    const auto rep = run_table1(csv, 20, 11, dir.string());
    const auto& t1 = *rep.table1;
    const bool ok = t1.classical_accuracy >= 0.85 &&
                    std::abs(t1.classical_accuracy - t1.quantum_accuracy) <= 0.05 &&
                    t1.baseline_classical_accuracy == 0.99 &&
                    t1.baseline_quantum_accuracy == 0.90;
    std::snprintf(buf, sizeof(buf),
                  "classical %.4f, quantum-exact %.4f, baseline (0.99, 0.90) recorded",
                  t1.classical_accuracy, t1.quantum_accuracy);
    report(10, "labeled 30-feature accuracy comparison (20 training rows)", ok, buf);
    fs::remove_all(dir);
}

// 11. property sweep
void criterion_11() {
    SplitMix64 rng(31337);
    long cases = 0;
    long violations = 0;

    // adjacency symmetry/reflexivity + partition validity + monotonicity
    for (int trial = 0; trial < 140; ++trial) {
        const long n = 2 + static_cast<long>(rng.below(40));
        auto a = test::random_adjacency(n, 0.1, rng);
        for (long i = 0; i < n; ++i) {
            if (!a.at(i, i)) ++violations;
            ++cases;
        }
        for (int probe = 0; probe < 8; ++probe) {
            const long i = static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));
            const long j = static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));
            if (a.at(i, j) != a.at(j, i)) ++violations;
            ++cases;
        }

        const auto part = cluster_finding(a);
        std::vector<int> seen(static_cast<std::size_t>(n), 0);
        long covered = 0;
        for (const auto& c : part.clusters)
            for (long v : c) {
                ++seen[static_cast<std::size_t>(v)];
                ++covered;
            }
        bool valid = covered == n;
        for (int s : seen) valid = valid && s == 1;
        if (!valid) ++violations;
        ++cases;

        const int before = part.cluster_count;
        a.set(static_cast<long>(rng.below(static_cast<std::uint64_t>(n))),
              static_cast<long>(rng.below(static_cast<std::uint64_t>(n))), true);
        if (cluster_finding(a).cluster_count > before) ++violations;
        ++cases;
    }

    // state normalization
    for (int trial = 0; trial < 300; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(30));
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) x(i) = rng.gaussian();
        if (x.norm() == 0.0) x(0) = 1.0;
        const auto enc = amplitude_encode(x);
        if (std::abs(enc.state.amplitudes.squaredNorm() - 1.0) > 1e-10) ++violations;
        ++cases;
    }

    // exact swap test stays in [1/2, 1]
    for (int trial = 0; trial < 300; ++trial) {
        SplitMix64 local(rng.next());
        const auto u = amplitude_encode(test::random_unit(4, local)).state;
        const auto v = amplitude_encode(test::random_unit(4, local)).state;
        const auto r = swap_test(u, v, ShotCount::exact(), local);
        if (r.p0 < 0.5 || r.p0 > 1.0 + 1e-12) ++violations;
        ++cases;
    }

    std::snprintf(buf, sizeof(buf), "%ld randomized cases, %ld violations", cases, violations);
    report(11, "property sweep (adjacency, partitions, states, swap test)",
           cases >= 1000 && violations == 0, buf);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
