#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles
// here deliberately avoid the library code paths they check.

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "svcq/dataset.hpp"
#include "svcq/rng.hpp"
#include "svcq/svc.hpp"

namespace svcq::test {

// Dense Gauss-Jordan solve with partial pivoting, independent of the
// Eigen factorizations used by the implementation.
inline Eigen::VectorXd gauss_solve(Eigen::MatrixXd a, Eigen::VectorXd b) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == 0.0) throw std::runtime_error("gauss_solve: singular matrix");
        a.row(col).swap(a.row(pivot));
        std::swap(b(col), b(pivot));
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col) / a(col, col);
            a.row(r) -= f * a.row(col);
            b(r) -= f * b(col);
        }
    }
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = b(i) / a(i, i);
    return x;
}

// Union-find partition oracle over a symmetric boolean matrix.
class UnionFind {
public:
    explicit UnionFind(long n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0L);
    }
    long find(long v) {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            parent_[static_cast<std::size_t>(v)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }
    void unite(long a, long b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

private:
    std::vector<long> parent_;
};

inline std::vector<std::vector<long>> union_find_components(const AdjacencyMatrix& a) {
    UnionFind uf(a.size());
    for (long i = 0; i < a.size(); ++i)
        for (long j = i + 1; j < a.size(); ++j)
            if (a.at(i, j)) uf.unite(i, j);
    std::vector<std::vector<long>> by_root(static_cast<std::size_t>(a.size()));
    for (long v = 0; v < a.size(); ++v) by_root[static_cast<std::size_t>(uf.find(v))].push_back(v);
    std::vector<std::vector<long>> comps;
    for (auto& c : by_root)
        if (!c.empty()) comps.push_back(std::move(c));  // members ascend within a component
    std::sort(comps.begin(), comps.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return comps;
}

// Breadth-first traversal oracle for a single component.
inline std::vector<long> bfs_component(const AdjacencyMatrix& a, long start) {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(a.size()), 0);
    std::vector<long> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const long v = queue[head];
        for (long w = 0; w < a.size(); ++w)
            if (w != v && a.at(v, w) && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

inline AdjacencyMatrix random_adjacency(long n, double edge_prob, SplitMix64& rng) {
    AdjacencyMatrix a(n);
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) a.set(i, j, rng.uniform01() < edge_prob);
    return a;
}

inline Dataset two_blob_fixture(std::uint64_t seed = 42, int per_blob = 30) {
    Eigen::VectorXd c0(2), c1(2);
    c0 << 0.0, 0.0;
    c1 << 10.0, 10.0;
    return synth_blobs(seed, {{c0, 0.5, per_blob}, {c1, 0.5, per_blob}});
}

inline Eigen::VectorXd random_unit(int dim, SplitMix64& rng) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.gaussian();
    if (v.norm() == 0.0) v(0) = 1.0;
    return v / v.norm();
}

inline Eigen::MatrixXcd random_hermitian(Eigen::Index dim, SplitMix64& rng) {
    Eigen::MatrixXcd a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            a(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
    return 0.5 * (a + a.adjoint().eval());
}

}  // namespace svcq::test
