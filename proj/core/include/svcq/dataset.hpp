#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svcq {

// In-memory dataset: M points of dimension N, one row per point, with
// unique string ids and optional +/-1 labels.
struct Dataset {
    Eigen::MatrixXd points;                         // M x N
    std::vector<std::string> ids;                   // size M, unique
    std::optional<std::vector<int>> labels;         // +/-1 when present

    Eigen::Index size() const { return points.rows(); }
    Eigen::Index dim() const { return points.cols(); }
    Eigen::VectorXd point(Eigen::Index i) const { return points.row(i).transpose(); }

    // Checks the structural invariants (dimensions, id uniqueness, label
    // values); throws std::invalid_argument on violation.
    void validate() const;
};

// One synthetic gaussian blob: `count` points sampled around `center`
// with isotropic standard deviation `spread`.
struct BlobSpec {
    Eigen::VectorXd center;
    double spread = 1.0;
    int count = 1;
};

// Loads a comma-separated file. A header row is auto-detected (first row
// with any non-numeric cell). With has_labels, the last column must be
// +/-1. Errors report 1-based row numbers.
Dataset load_csv(const std::string& path, bool has_labels);

// Writes the dataset in the same format load_csv reads (no header,
// full-precision doubles; labels appended as the last column if present
// and with_labels is set).
void save_csv(const Dataset& d, const std::string& path, bool with_labels = true);

// Deterministic blob mixture for a fixed seed. Ids carry the generating
// blob, recoverable through blob_of_id.
Dataset synth_blobs(std::uint64_t seed, const std::vector<BlobSpec>& blobs);

// Ground-truth blob index encoded in ids produced by synth_blobs.
int blob_of_id(const std::string& id);

struct NormalizeResult {
    Dataset data;                // every point scaled to unit Euclidean norm
    std::vector<double> norms;   // original norms, one per point
};

// Rescales every point to unit norm, returning the original norms so an
// amplitude encoding can be undone later. Zero points are an error.
NormalizeResult unit_normalize(const Dataset& d);

// Projects onto the top-k principal components of the feature covariance
// (features centered to zero mean first). Components are ordered by
// decreasing variance; each component's largest-magnitude loading is made
// positive so the output is sign-deterministic.
Dataset pca_project(const Dataset& d, int k);

}  // namespace svcq
