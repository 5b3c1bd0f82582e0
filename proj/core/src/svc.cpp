#include "svcq/svc.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace svcq {

AdjacencyMatrix::AdjacencyMatrix(long size) : size_(size) {
    if (size < 1) throw std::invalid_argument("adjacency size must be >= 1");
    bits_.assign(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0);
    for (long i = 0; i < size; ++i)
        bits_[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) +
              static_cast<std::size_t>(i)] = 1;
}

AdjacencyMatrix AdjacencyMatrix::all_ones(long size) {
    if (size < 1) throw std::invalid_argument("adjacency size must be >= 1");
    AdjacencyMatrix a(1);
    a.size_ = size;
    a.implicit_ones_ = true;
    a.bits_.clear();
    return a;
}

void AdjacencyMatrix::set(long i, long j, bool value) {
    check_index(i);
    check_index(j);
    if (implicit_ones_) throw std::logic_error("implicit all-ones adjacency is immutable");
    if (i == j) return;  // reflexive diagonal is fixed
    const auto n = static_cast<std::size_t>(size_);
    bits_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = value ? 1 : 0;
    bits_[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] = value ? 1 : 0;
}

void AdjacencyMatrix::check_index(long i) const {
    if (i < 0 || i >= size_) throw std::out_of_range("adjacency index out of range");
}

bool segment_connected(const SvmModel& m, const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
                       int n_samples, long* decide_calls) {
    if (n_samples < 2) throw std::invalid_argument("segment test needs n_samples >= 2");
    if (xi.size() != m.train_points.dim() || xj.size() != m.train_points.dim())
        throw std::invalid_argument("segment endpoints do not match training dimension");
    for (int s = 0; s < n_samples; ++s) {
        const double t = static_cast<double>(s) / static_cast<double>(n_samples - 1);
        const Eigen::VectorXd x = (1.0 - t) * xi + t * xj;
        if (decide_calls) ++*decide_calls;
        if (decide(m, x).sign < 0) return false;
    }
    return true;
}

AdjacencyBuild build_adjacency(const SvmModel& m, const Dataset& d, int n_samples) {
    const long n = d.size();
    AdjacencyBuild out{AdjacencyMatrix(n), 0, 0};
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            ++out.segment_tests;
            out.adjacency.set(i, j,
                              segment_connected(m, d.point(i), d.point(j), n_samples,
                                                &out.decide_calls));
        }
    }
    return out;
}

std::vector<long> depth_first_search(const AdjacencyMatrix& a, long start,
                                     std::vector<std::uint8_t>& marks, long& neighbor_scans) {
    if (static_cast<long>(marks.size()) != a.size())
        throw std::invalid_argument("mark set size does not match adjacency");
    if (marks[static_cast<std::size_t>(start)])
        throw std::invalid_argument("depth_first_search: start vertex already marked");

    std::vector<long> component;
    std::vector<long> stack{start};
    marks[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
        const long v = stack.back();
        stack.pop_back();
        component.push_back(v);
        for (long w = 0; w < a.size(); ++w) {
            if (w == v) continue;
            ++neighbor_scans;
            if (a.at(v, w) && !marks[static_cast<std::size_t>(w)]) {
                marks[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    return component;
}

ClusterResult cluster_finding(const AdjacencyMatrix& a, long* neighbor_scans) {
    ClusterResult r;
    r.membership.assign(static_cast<std::size_t>(a.size()), -1);
    std::vector<std::uint8_t> marks(static_cast<std::size_t>(a.size()), 0);
    long scans = 0;
    for (long v = 0; v < a.size(); ++v) {
        if (marks[static_cast<std::size_t>(v)]) continue;
        auto comp = depth_first_search(a, v, marks, scans);
        std::sort(comp.begin(), comp.end());
        const int idx = static_cast<int>(r.clusters.size());
        for (long w : comp) r.membership[static_cast<std::size_t>(w)] = idx;
        r.clusters.push_back(std::move(comp));
    }
    r.cluster_count = static_cast<int>(r.clusters.size());
    if (neighbor_scans) *neighbor_scans = scans;
    return r;
}

SvmModel fit_contour(const Dataset& d, const KernelSpec& spec, const TrainConfig& cfg) {
    cfg.validate();
    d.validate();
    const Eigen::MatrixXd k = kernel_matrix(spec, d);
    const Eigen::MatrixXd f = assemble_system(k, cfg.gamma);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d.size() + 1);
    rhs(0) = 1.0;
    const Eigen::VectorXd z = detail::solve_regularized(f, rhs, cfg.jitter);

    SvmModel m;
    m.alpha = z.tail(d.size());
    m.spec = spec;
    m.train_points = d;
    m.labels.assign(static_cast<std::size_t>(d.size()), 1);

    // Threshold just outside the least dense training point: the contour
    // sits a twentieth of the density range below it, so every training
    // point is strictly inside and sampled-kernel noise in the quantum
    // backend cannot flip boundary memberships.
    const Eigen::VectorXd density = k * m.alpha;
    const double lo = density.minCoeff();
    const double hi = density.maxCoeff();
    const double slack = 0.05 * std::max({hi - lo, std::abs(lo) * 1e-6, 1e-12});
    m.bias = -lo + slack;
    return m;
}

std::string clusters_to_json(const ClusterResult& r, const std::vector<std::string>& ids,
                             const std::vector<std::string>& bsv_ids) {
    if (ids.size() != r.membership.size())
        throw std::invalid_argument("id list does not match partition size");
    nlohmann::ordered_json j;
    j["clusterCount"] = r.cluster_count;
    std::vector<std::vector<std::string>> named;
    named.reserve(r.clusters.size());
    for (const auto& c : r.clusters) {
        std::vector<std::string> members;
        members.reserve(c.size());
        for (long v : c) members.push_back(ids[static_cast<std::size_t>(v)]);
        named.push_back(std::move(members));
    }
    j["clusters"] = named;
    nlohmann::ordered_json membership;
    for (std::size_t i = 0; i < ids.size(); ++i) membership[ids[i]] = r.membership[i];
    j["membership"] = membership;
    j["metadata"] = {{"bsv_ids", bsv_ids},
                     {"bsv_note", "points with negative decision margin stay as singletons"}};
    return j.dump(2);
}

}  // namespace svcq
