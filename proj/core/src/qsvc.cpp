#include "svcq/qsvc.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "svcq/qsim/grover.hpp"
#include "svcq/qsim/spectral.hpp"

namespace svcq {

void QTrainConfig::validate() const {
    if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be > 0");
    if (!(eig_floor > 0.0)) throw std::invalid_argument("eig_floor must be > 0");
    if (!(kernel_accuracy > 0.0)) throw std::invalid_argument("kernel accuracy must be > 0");
    if (!(grover_fail_prob > 0.0 && grover_fail_prob < 1.0))
        throw std::invalid_argument("grover failure budget must lie in (0,1)");
    if (!shots.is_exact && shots.shots < 1)
        throw std::invalid_argument("shot count must be >= 1");
}

QueryStats& QueryStats::operator+=(const QueryStats& other) {
    grover_iterations += other.grover_iterations;
    oracle_queries += other.oracle_queries;
    grover_invocations += other.grover_invocations;
    classical_fallback_scans += other.classical_fallback_scans;
    counting_only = counting_only || other.counting_only;
    return *this;
}

double q_kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
                     const QTrainConfig& cfg, SplitMix64& rng) {
    spec.validate();
    const auto est = inner_product_estimate(xi, xj, cfg.shots, cfg.kernel_accuracy, rng);
    switch (spec.kind) {
        case KernelKind::linear:
            return est.dot;
        case KernelKind::polynomial: {
            double r = 1.0;
            for (int i = 0; i < spec.degree; ++i) r *= est.dot;
            return r;
        }
        case KernelKind::gaussian: {
            const double dist_sq = std::max(0.0, est.norms_sq_sum - 2.0 * est.dot);
            return std::exp(-spec.sigma * dist_sq);
        }
    }
    throw std::logic_error("unreachable kernel kind");
}

namespace {

// Upper triangle through the estimator, mirrored so the matrix stays
// exactly symmetric in shots mode.
Eigen::MatrixXd q_kernel_matrix(const KernelSpec& spec, const Dataset& d, const QTrainConfig& cfg,
                                SplitMix64& rng) {
    const Eigen::Index m = d.size();
    Eigen::MatrixXd k(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i; j < m; ++j) {
            const double v = q_kernel_eval(spec, d.point(i), d.point(j), cfg, rng);
            k(i, j) = v;
            k(j, i) = v;
        }
    return k;
}

struct AssembledSystem {
    Eigen::MatrixXd f_hat;  // (J + K + zeta^-1 I) / tr F
    Eigen::MatrixXd kernel;
    double trace_norm = 0.0;
};

AssembledSystem q_assemble(const Dataset& d, const KernelSpec& spec, const QTrainConfig& cfg,
                           SplitMix64& rng) {
    const Eigen::Index m = d.size();
    AssembledSystem sys;
    sys.kernel = q_kernel_matrix(spec, d, cfg, rng);

    Eigen::MatrixXd f = star_graph(m);
    f.block(1, 1, m, m) += sys.kernel + Eigen::MatrixXd::Identity(m, m) / cfg.zeta;
    sys.trace_norm = f.trace();
    if (!(sys.trace_norm > 0.0))
        throw std::runtime_error("assembled system has non-positive trace");
    sys.f_hat = f / sys.trace_norm;
    return sys;
}

QSvmModel invert_system(const Dataset& d, const KernelSpec& spec, const QTrainConfig& cfg,
                        const AssembledSystem& sys, const Eigen::VectorXd& rhs) {
    const auto sol = spectral_invert(sys.f_hat, rhs, cfg.eig_floor);

    QSvmModel m;
    m.solution_state = sol.solution_state;
    m.scale = sol.scale;
    m.trace_norm = sys.trace_norm;
    m.spec = spec;
    m.train_points = d;
    m.config = cfg;

    // calibration scale for q_decide: largest |margin| over training points
    const Eigen::VectorXd margins =
        sys.kernel * m.alpha() + Eigen::VectorXd::Constant(d.size(), m.bias());
    m.margin_max = margins.cwiseAbs().maxCoeff();
    if (!(m.margin_max > 0.0)) m.margin_max = 1.0;
    return m;
}

}  // namespace

QSvmModel q_train(const Dataset& d, const std::vector<int>& labels, const KernelSpec& spec,
                  const QTrainConfig& cfg) {
    cfg.validate();
    d.validate();
    if (static_cast<Eigen::Index>(labels.size()) != d.size())
        throw std::invalid_argument("label count does not match dataset size");

    SplitMix64 rng(derive_seed(cfg.seed, 0x71));
    const auto sys = q_assemble(d, spec, cfg, rng);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d.size() + 1);
    for (Eigen::Index i = 0; i < d.size(); ++i)
        rhs(i + 1) = static_cast<double>(labels[static_cast<std::size_t>(i)]);
    return invert_system(d, spec, cfg, sys, rhs);
}

QSvmModel q_train_one_class(const Dataset& d, const KernelSpec& spec, const QTrainConfig& cfg) {
    return q_train(d, std::vector<int>(static_cast<std::size_t>(d.size()), 1), spec, cfg);
}

QSvmModel q_fit_contour(const Dataset& d, const KernelSpec& spec, const QTrainConfig& cfg) {
    cfg.validate();
    d.validate();

    SplitMix64 rng(derive_seed(cfg.seed, 0x71));
    const auto sys = q_assemble(d, spec, cfg, rng);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d.size() + 1);
    rhs(0) = 1.0;
    QSvmModel m = invert_system(d, spec, cfg, sys, rhs);

    // contour threshold a twentieth of the density range below the least
    // dense training point, mirroring fit_contour
    const Eigen::VectorXd density = sys.kernel * m.alpha();
    const double lo = density.minCoeff();
    const double hi = density.maxCoeff();
    const double slack = 0.05 * std::max({hi - lo, std::abs(lo) * 1e-6, 1e-12});
    const double bias = -lo + slack;

    // fold the bias back into the stored solution state so bias() and
    // alpha() keep descaling consistently
    Eigen::VectorXd z = m.solution_state * m.scale;
    z(0) = bias * m.trace_norm;
    m.scale = z.norm();
    m.solution_state = z / m.scale;

    const Eigen::VectorXd margins = density + Eigen::VectorXd::Constant(d.size(), bias);
    m.margin_max = margins.cwiseAbs().maxCoeff();
    if (!(m.margin_max > 0.0)) m.margin_max = 1.0;
    return m;
}

namespace {

// portable content hash so a decision at x is a pure function of
// (seed, x) in shots mode
std::uint64_t vector_stream_id(const Eigen::VectorXd& x) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        std::uint64_t bits;
        const double v = x(i);
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        h = (h ^ bits) * 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

QDecideResult q_decide(const QSvmModel& m, const Eigen::VectorXd& x, const QTrainConfig& cfg) {
    if (x.size() != m.train_points.dim())
        throw std::invalid_argument("q_decide: dimension mismatch");

    SplitMix64 rng(derive_seed(cfg.seed, vector_stream_id(x)));
    const Eigen::VectorXd alpha = m.alpha();
    double margin = m.bias();
    for (Eigen::Index i = 0; i < m.size(); ++i)
        margin += alpha(i) * q_kernel_eval(m.spec, m.train_points.point(i), x, cfg, rng);

    QDecideResult r;
    const double p = 0.5 * (1.0 - margin / m.margin_max);
    r.p_success = std::min(1.0, std::max(0.0, p));
    r.label = r.p_success < 0.5 ? 1 : -1;
    return r;
}

AdjacencyBuild q_build_adjacency(const QSvmModel& m, const Dataset& d, int n_samples,
                                 const QTrainConfig& cfg) {
    if (n_samples < 2) throw std::invalid_argument("segment test needs n_samples >= 2");
    const long n = d.size();
    AdjacencyBuild out{AdjacencyMatrix(n), 0, 0};
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            ++out.segment_tests;
            bool inside = true;
            for (int s = 0; s < n_samples && inside; ++s) {
                const double t = static_cast<double>(s) / static_cast<double>(n_samples - 1);
                const Eigen::VectorXd x = (1.0 - t) * d.point(i) + t * d.point(j);
                ++out.decide_calls;
                inside = q_decide(m, x, cfg).label > 0;
            }
            out.adjacency.set(i, j, inside);
        }
    }
    return out;
}

namespace {

int qubits_for_rows(long rows) {
    int n = 1;
    while ((std::uint64_t{1} << n) < static_cast<std::uint64_t>(rows)) ++n;
    return n;
}

// residual failure budget -> schedule repetitions, under the documented
// 0.1 false-negative bound of one capped schedule
int schedule_repetitions(double fail_prob) {
    int reps = 1;
    double residual = 0.1;
    while (residual > fail_prob && reps < 16) {
        residual *= 0.1;
        ++reps;
    }
    return reps;
}

}  // namespace

std::vector<long> quantum_dfs(const AdjacencyMatrix& a, long start,
                              std::vector<std::uint8_t>& marks, const QTrainConfig& cfg,
                              QueryStats& stats) {
    if (static_cast<long>(marks.size()) != a.size())
        throw std::invalid_argument("mark set size does not match adjacency");
    if (marks[static_cast<std::size_t>(start)])
        throw std::invalid_argument("quantum_dfs: start vertex already marked");

    const int n_qubits = qubits_for_rows(a.size());
    const std::uint64_t space = std::uint64_t{1} << n_qubits;
    const bool counting_only = space > cfg.counting_space_threshold;
    const int reps = schedule_repetitions(cfg.grover_fail_prob);
    stats.counting_only = stats.counting_only || counting_only;

    std::uint64_t call = 0;
    std::vector<long> component;
    std::vector<long> stack{start};
    marks[static_cast<std::size_t>(start)] = 1;
    component.push_back(start);

    while (!stack.empty()) {
        const long v = stack.back();
        const auto oracle = [&](std::uint64_t idx) {
            return idx < static_cast<std::uint64_t>(a.size()) &&
                   a.at(v, static_cast<long>(idx)) &&
                   !marks[static_cast<std::size_t>(idx)];
        };

        std::optional<long> neighbor;
        if (counting_only) {
            // analytic accounting; the neighbor itself is found by a scan
            long unmarked = 0;
            std::optional<long> first;
            for (long w = 0; w < a.size(); ++w) {
                ++stats.classical_fallback_scans;
                if (w != v && a.at(v, w) && !marks[static_cast<std::size_t>(w)]) {
                    ++unmarked;
                    if (!first) first = w;
                }
            }
            if (unmarked > 0) {
                ++stats.grover_invocations;
                const double q = grover_query_model(space, static_cast<std::uint64_t>(unmarked),
                                                    /*marked_known=*/false);
                const long iters = static_cast<long>(std::ceil(q));
                stats.grover_iterations += iters;
                stats.oracle_queries += iters + 1;  // schedule plus the verification
                neighbor = first;
            } else {
                for (int rr = 0; rr < reps; ++rr) {
                    ++stats.grover_invocations;
                    long iters = 0;
                    long verifs = 0;
                    grover_no_solution_charge(space, iters, verifs);
                    stats.grover_iterations += iters;
                    stats.oracle_queries += iters + verifs;
                }
            }
        } else {
            for (int rr = 0; rr < reps && !neighbor; ++rr) {
                ++stats.grover_invocations;
                const auto outcome = grover_search(oracle, n_qubits, std::nullopt,
                                                   derive_seed(cfg.seed, 0xdf5 + call++));
                stats.grover_iterations += outcome.iterations;
                stats.oracle_queries += outcome.oracle_queries;
                if (outcome.found_index) {
                    neighbor = static_cast<long>(*outcome.found_index);
                    break;
                }
            }
            if (!neighbor) {
                // correctness backstop: a residual schedule false negative
                // must not split the component, so the no-solution verdict
                // is confirmed by a row sweep, charged as classical work
                // rather than oracle queries.
                for (long w = 0; w < a.size(); ++w) {
                    ++stats.classical_fallback_scans;
                    if (w != v && a.at(v, w) && !marks[static_cast<std::size_t>(w)]) {
                        neighbor = w;
                        break;
                    }
                }
            }
        }

        if (neighbor) {
            marks[static_cast<std::size_t>(*neighbor)] = 1;
            component.push_back(*neighbor);
            stack.push_back(*neighbor);
        } else {
            stack.pop_back();
        }
    }
    return component;
}

std::pair<ClusterResult, QueryStats> quantum_cluster_finding(const AdjacencyMatrix& a,
                                                             const QTrainConfig& cfg) {
    cfg.validate();
    ClusterResult r;
    r.membership.assign(static_cast<std::size_t>(a.size()), -1);
    QueryStats stats;
    std::vector<std::uint8_t> marks(static_cast<std::size_t>(a.size()), 0);
    for (long v = 0; v < a.size(); ++v) {
        if (marks[static_cast<std::size_t>(v)]) continue;
        auto comp = quantum_dfs(a, v, marks, cfg, stats);
        std::sort(comp.begin(), comp.end());
        const int idx = static_cast<int>(r.clusters.size());
        for (long w : comp) r.membership[static_cast<std::size_t>(w)] = idx;
        r.clusters.push_back(std::move(comp));
    }
    r.cluster_count = static_cast<int>(r.clusters.size());
    return {r, stats};
}

std::string query_stats_to_json(const QueryStats& s) {
    nlohmann::ordered_json j;
    j["grover_iterations"] = s.grover_iterations;
    j["oracle_queries"] = s.oracle_queries;
    j["grover_invocations"] = s.grover_invocations;
    j["classical_fallback_scans"] = s.classical_fallback_scans;
    j["counting_only"] = s.counting_only;
    return j.dump();
}

std::string qmodel_to_json(const QSvmModel& m) {
    nlohmann::ordered_json j;
    j["solution_state"] = std::vector<double>(m.solution_state.data(),
                                              m.solution_state.data() + m.solution_state.size());
    j["scale"] = m.scale;
    j["trace_norm"] = m.trace_norm;
    j["margin_max"] = m.margin_max;
    j["bias"] = m.bias();
    const Eigen::VectorXd alpha = m.alpha();
    j["alpha"] = std::vector<double>(alpha.data(), alpha.data() + alpha.size());
    j["kernel"] = {{"kind", m.spec.name()}, {"degree", m.spec.degree}, {"sigma", m.spec.sigma}};
    j["ids"] = m.train_points.ids;
    return j.dump(2);
}

}  // namespace svcq
