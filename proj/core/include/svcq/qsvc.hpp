#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "svcq/qsim/sampling.hpp"
#include "svcq/svc.hpp"

namespace svcq {

// Configuration of the quantum-emulated trainer and cluster search.
// zeta is the soft-margin weight (the same quantity the classical side
// calls gamma).
struct QTrainConfig {
    double zeta = 1.0;
    double eig_floor = 1e-8;         // spectral inversion cutoff
    double kernel_accuracy = 0.02;   // target accuracy of sampled kernel estimates
    ShotCount shots = ShotCount::exact();
    double grover_fail_prob = 0.1;   // per-step failure budget of the neighbor search
    std::uint64_t seed = 0;
    // Search spaces larger than this are charged analytically instead of
    // simulated; the default keeps real simulation up to 2^20 amplitudes.
    std::uint64_t counting_space_threshold = std::uint64_t{1} << 20;

    void validate() const;
};

// Trained quantum LS-SVM: the normalized solution state of the inverted
// saddle system plus the bookkeeping needed to descale it back to
// (bias, alpha).
struct QSvmModel {
    Eigen::VectorXd solution_state;  // unit vector of length M+1
    double scale = 0.0;              // pre-normalization solution norm
    double trace_norm = 0.0;         // trace the system was normalized by
    double margin_max = 1.0;         // max |training margin|, calibrates q_decide
    KernelSpec spec;
    Dataset train_points;
    QTrainConfig config;

    Eigen::Index size() const { return solution_state.size() - 1; }
    double bias() const { return solution_state(0) * scale / trace_norm; }
    Eigen::VectorXd alpha() const {
        return solution_state.tail(size()) * (scale / trace_norm);
    }
};

// Oracle-query bookkeeping across a cluster search.
struct QueryStats {
    long grover_iterations = 0;
    long oracle_queries = 0;          // iterations + verification measurements
    long grover_invocations = 0;      // schedules started
    long classical_fallback_scans = 0;  // neighbor scans in counting-only mode
    bool counting_only = false;

    QueryStats& operator+=(const QueryStats& other);
};

// Kernel value through the sampled estimator chain: linear is the
// estimated dot, polynomial its d-th power (norms reattached by the
// estimator), gaussian exp(-sigma d^2) with d^2 = Z - 2 dot.
double q_kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
                     const QTrainConfig& cfg, SplitMix64& rng);

// Solves the trace-normalized saddle system against (0, labels) by
// spectral inversion.
QSvmModel q_train(const Dataset& d, const std::vector<int>& labels, const KernelSpec& spec,
                  const QTrainConfig& cfg);

// q_train with all labels +1.
QSvmModel q_train_one_class(const Dataset& d, const KernelSpec& spec, const QTrainConfig& cfg);

// Quantum analog of fit_contour: same system, right-hand side (1, 0...0),
// threshold just inside the least dense training point. See fit_contour
// for why the all-ones label solve cannot delineate contours.
QSvmModel q_fit_contour(const Dataset& d, const KernelSpec& spec, const QTrainConfig& cfg);

struct QDecideResult {
    int label = 1;          // +1 when p_success < 1/2, else -1
    double p_success = 0.5; // calibrated swap-test success probability
};

// Classifies x from the margin of the descaled model under the quantum
// kernel, mapped to a success probability
//   P = clip(1/2 (1 - margin / margin_max))
// so that P < 1/2 coincides with a positive margin.
QDecideResult q_decide(const QSvmModel& m, const Eigen::VectorXd& x, const QTrainConfig& cfg);

AdjacencyBuild q_build_adjacency(const QSvmModel& m, const Dataset& d, int n_samples,
                                 const QTrainConfig& cfg);

// Component extraction where each "find an unvisited neighbor" step runs
// a Grover search over the padded row-index space. Steps whose schedule
// reports no solution are repeated until the residual failure probability
// is below grover_fail_prob (one schedule suffices at the 0.1 default;
// the capped schedule's false-negative rate is below that). Above the
// counting threshold the neighbor is located classically and the queries
// are charged through the analytic model.
std::vector<long> quantum_dfs(const AdjacencyMatrix& a, long start,
                              std::vector<std::uint8_t>& marks, const QTrainConfig& cfg,
                              QueryStats& stats);

std::pair<ClusterResult, QueryStats> quantum_cluster_finding(const AdjacencyMatrix& a,
                                                             const QTrainConfig& cfg);

std::string query_stats_to_json(const QueryStats& s);
std::string qmodel_to_json(const QSvmModel& m);

}  // namespace svcq
