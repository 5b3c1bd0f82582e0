#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svcq/lssvm.hpp"

namespace svcq {

// Symmetric reflexive boolean connectivity over M objects. all_ones(M)
// is stored implicitly so worst-case scaling runs do not need M^2 memory.
class AdjacencyMatrix {
public:
    explicit AdjacencyMatrix(long size);
    static AdjacencyMatrix all_ones(long size);

    long size() const { return size_; }
    bool at(long i, long j) const {
        check_index(i);
        check_index(j);
        if (implicit_ones_) return true;
        return bits_[static_cast<std::size_t>(i) * static_cast<std::size_t>(size_) +
                     static_cast<std::size_t>(j)] != 0;
    }
    // sets both (i,j) and (j,i); the diagonal stays fixed at 1
    void set(long i, long j, bool value);
    bool is_implicit_ones() const { return implicit_ones_; }

private:
    void check_index(long i) const;
    long size_;
    bool implicit_ones_ = false;
    std::vector<std::uint8_t> bits_;
};

// Connected-component partition. Components are ordered by their smallest
// contained index and members ascend within each component.
struct ClusterResult {
    int cluster_count = 0;
    std::vector<std::vector<long>> clusters;
    std::vector<int> membership;  // point index -> cluster index
};

struct AdjacencyBuild {
    AdjacencyMatrix adjacency;
    long segment_tests = 0;  // pair tests performed, M(M-1)/2
    long decide_calls = 0;   // decision evaluations across all segments
};

// True when the decision stays +1 on every one of n_samples equally
// spaced points of the segment [x_i, x_j] (endpoints included).
bool segment_connected(const SvmModel& m, const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
                       int n_samples, long* decide_calls = nullptr);

AdjacencyBuild build_adjacency(const SvmModel& m, const Dataset& d, int n_samples);

// Marks and returns the component of `start`, scanning the start row one
// entry at a time off an explicit stack. Each adjacency inspection bumps
// neighbor_scans (the classical O(M)-per-vertex cost being measured).
std::vector<long> depth_first_search(const AdjacencyMatrix& a, long start,
                                     std::vector<std::uint8_t>& marks, long& neighbor_scans);

ClusterResult cluster_finding(const AdjacencyMatrix& a, long* neighbor_scans = nullptr);

// Fits the clustering contour machine on unlabeled data.
//
// The plain one-class solve of the saddle system against (0, 1) collapses
// to the constant decision bias=1, alpha=0 (the first optimality row
// forces sum(alpha)=0, which with a positive definite block pins
// alpha=0), so it cannot delineate contours. This fitter solves the same
// system against (1, 0...0) instead: the resulting weights satisfy
// sum(alpha)=1 and score each location by its kernel density
// K(., x)^T alpha. The bias places the decision threshold slightly below
// the least dense training point, the equality-constrained analog of a
// hard-margin spherical boundary: every training point sits strictly
// inside its contour and segments crossing sparse regions test negative.
SvmModel fit_contour(const Dataset& d, const KernelSpec& spec, const TrainConfig& cfg);

// clusters.json payload: {clusterCount, clusters: [[ids...]], membership,
// metadata.bsv_ids}.
std::string clusters_to_json(const ClusterResult& r, const std::vector<std::string>& ids,
                             const std::vector<std::string>& bsv_ids);

}  // namespace svcq
