#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "svcq/dataset.hpp"
#include "svcq/kernels.hpp"

namespace svcq {

struct TrainConfig {
    double gamma = 1.0;    // regularization weight, > 0
    double jitter = 1e-10; // diagonal remedy, applied only when near-singular

    void validate() const;
};

// Trained least-squares SVM. alpha is non-sparse; decide() treats any
// coefficient with |alpha_i| > sv_threshold as a support value.
struct SvmModel {
    double bias = 0.0;
    Eigen::VectorXd alpha;
    KernelSpec spec;
    Dataset train_points;
    std::vector<int> labels;
    double sv_threshold = 1e-8;

    Eigen::Index size() const { return alpha.size(); }
};

struct DecideResult {
    int sign = 1;        // +1 if margin >= 0 else -1
    double margin = 0.0; // sum_i alpha_i K(x_i, x) + bias over support values
};

// Builds the (M+1) x (M+1) saddle system
//   [ 0   1^T          ]
//   [ 1   K + gamma^-1 I ]
// from a symmetric kernel matrix. Throws if K is not symmetric to 1e-9.
Eigen::MatrixXd assemble_system(const Eigen::MatrixXd& kernel, double gamma);

// Solves the saddle system against (0, y) by pivoted dense factorization.
// When the condition estimate exceeds 1e12 the configured jitter is added
// to the lower-right diagonal once; a system still singular after that is
// reported with its condition estimate.
SvmModel train(const Dataset& d, const std::vector<int>& labels, const KernelSpec& spec,
               const TrainConfig& cfg);

// train() with all labels +1.
SvmModel train_one_class(const Dataset& d, const KernelSpec& spec, const TrainConfig& cfg);

DecideResult decide(const SvmModel& m, const Eigen::VectorXd& x);

// Training indices whose decision margin is negative (points outside
// every contour).
std::vector<Eigen::Index> identify_bsv(const SvmModel& m, const Dataset& d);

// Number of coefficients above the support threshold.
Eigen::Index active_support_count(const SvmModel& m);

// JSON round trip for reuse by the CLI.
std::string model_to_json(const SvmModel& m);
SvmModel model_from_json(const std::string& text);

namespace detail {
// Shared pivoted-LU solve with the jitter/condition policy described at
// train(); exposed for the contour fitter which solves a different
// right-hand side through the same machinery.
Eigen::VectorXd solve_regularized(Eigen::MatrixXd f, const Eigen::VectorXd& rhs, double jitter);
}  // namespace detail

}  // namespace svcq
