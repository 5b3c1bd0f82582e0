#include "svcq/lssvm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace svcq {

void TrainConfig::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (jitter < 0.0 || jitter >= 1e-6)
        throw std::invalid_argument("jitter must be in [0, 1e-6)");
}

Eigen::MatrixXd assemble_system(const Eigen::MatrixXd& kernel, double gamma) {
    if (kernel.rows() != kernel.cols())
        throw std::invalid_argument("kernel matrix must be square");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    const double asym = (kernel - kernel.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9)
        throw std::invalid_argument("kernel matrix not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");

    const Eigen::Index m = kernel.rows();
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m + 1, m + 1);
    f.block(1, 1, m, m) = kernel + Eigen::MatrixXd::Identity(m, m) / gamma;
    f.row(0).tail(m).setOnes();
    f.col(0).tail(m).setOnes();
    return f;
}

namespace detail {

namespace {

// 1/rcond is unreliable for exactly singular inputs (the estimator can
// return a finite value), so the pivot ratio of U backs it up.
double condition_estimate(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
    const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
    const double lo = diag.minCoeff();
    const double pivot_ratio =
        lo > 0.0 ? diag.maxCoeff() / lo : std::numeric_limits<double>::infinity();
    const double r = lu.rcond();
    const double inv_rcond = r > 0.0 ? 1.0 / r : std::numeric_limits<double>::infinity();
    return std::max(pivot_ratio, inv_rcond);
}

}  // namespace

Eigen::VectorXd solve_regularized(Eigen::MatrixXd f, const Eigen::VectorXd& rhs, double jitter) {
    constexpr double kCondLimit = 1e12;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(f);
    const auto attempt = [&rhs](const Eigen::PartialPivLU<Eigen::MatrixXd>& fact,
                                const Eigen::MatrixXd& m) {
        Eigen::VectorXd z = fact.solve(rhs);
        const bool healthy = z.allFinite() &&
                             (m * z - rhs).norm() <= 1e-8 * std::max(rhs.norm(), 1e-300) &&
                             condition_estimate(fact) < kCondLimit;
        return std::pair<Eigen::VectorXd, bool>(std::move(z), healthy);
    };

    auto [z, healthy] = attempt(lu, f);
    if (!healthy && jitter > 0.0) {
        // leave the structural zero at (0,0) alone
        f.diagonal().tail(f.rows() - 1).array() += jitter;
        lu.compute(f);
        std::tie(z, healthy) = attempt(lu, f);
    }
    if (!healthy)
        throw std::runtime_error("system numerically singular, condition estimate " +
                                 std::to_string(condition_estimate(lu)));
    return z;
}

}  // namespace detail

namespace {

void check_residual(const Eigen::MatrixXd& f, const Eigen::VectorXd& z,
                    const Eigen::VectorXd& rhs) {
    const double rel = (f * z - rhs).norm() / std::max(rhs.norm(), 1e-300);
    if (rel > 1e-8)
        throw std::runtime_error("solve residual " + std::to_string(rel) + " exceeds 1e-8");
}

}  // namespace

SvmModel train(const Dataset& d, const std::vector<int>& labels, const KernelSpec& spec,
               const TrainConfig& cfg) {
    cfg.validate();
    d.validate();
    if (static_cast<Eigen::Index>(labels.size()) != d.size())
        throw std::invalid_argument("label count does not match dataset size");
    for (int y : labels)
        if (y != 1 && y != -1) throw std::invalid_argument("labels must be +1 or -1");

    const Eigen::MatrixXd k = kernel_matrix(spec, d);
    const Eigen::MatrixXd f = assemble_system(k, cfg.gamma);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d.size() + 1);
    for (Eigen::Index i = 0; i < d.size(); ++i)
        rhs(i + 1) = static_cast<double>(labels[static_cast<std::size_t>(i)]);

    const Eigen::VectorXd z = detail::solve_regularized(f, rhs, cfg.jitter);
    check_residual(f, z, rhs);

    SvmModel m;
    m.bias = z(0);
    m.alpha = z.tail(d.size());
    m.spec = spec;
    m.train_points = d;
    m.labels = labels;
    return m;
}

SvmModel train_one_class(const Dataset& d, const KernelSpec& spec, const TrainConfig& cfg) {
    return train(d, std::vector<int>(static_cast<std::size_t>(d.size()), 1), spec, cfg);
}

DecideResult decide(const SvmModel& m, const Eigen::VectorXd& x) {
    if (x.size() != m.train_points.dim())
        throw std::invalid_argument("decide: dimension mismatch");
    double margin = m.bias;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        if (std::abs(m.alpha(i)) > m.sv_threshold)
            margin += m.alpha(i) * kernel_eval(m.spec, m.train_points.point(i), x);
    }
    return DecideResult{margin >= 0.0 ? 1 : -1, margin};
}

std::vector<Eigen::Index> identify_bsv(const SvmModel& m, const Dataset& d) {
    std::vector<Eigen::Index> out;
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (decide(m, d.point(i)).margin < 0.0) out.push_back(i);
    return out;
}

Eigen::Index active_support_count(const SvmModel& m) {
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < m.size(); ++i)
        if (std::abs(m.alpha(i)) > m.sv_threshold) ++n;
    return n;
}

std::string model_to_json(const SvmModel& m) {
    nlohmann::ordered_json j;
    j["bias"] = m.bias;
    j["alpha"] = std::vector<double>(m.alpha.data(), m.alpha.data() + m.alpha.size());
    j["kernel"] = {{"kind", m.spec.name()}, {"degree", m.spec.degree}, {"sigma", m.spec.sigma}};
    j["sv_threshold"] = m.sv_threshold;
    j["ids"] = m.train_points.ids;
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(m.train_points.size()));
    for (Eigen::Index i = 0; i < m.train_points.size(); ++i) {
        const auto p = m.train_points.point(i);
        pts.emplace_back(p.data(), p.data() + p.size());
    }
    j["points"] = pts;
    j["labels"] = m.labels;
    return j.dump(2);
}

SvmModel model_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    SvmModel m;
    m.bias = j.at("bias").get<double>();
    const auto alpha = j.at("alpha").get<std::vector<double>>();
    m.alpha = Eigen::Map<const Eigen::VectorXd>(alpha.data(),
                                                static_cast<Eigen::Index>(alpha.size()));
    const auto& jk = j.at("kernel");
    const auto kind = jk.at("kind").get<std::string>();
    if (kind == "linear") m.spec = KernelSpec::linear();
    else if (kind == "polynomial") m.spec = KernelSpec::polynomial(jk.at("degree").get<int>());
    else if (kind == "gaussian") m.spec = KernelSpec::gaussian(jk.at("sigma").get<double>());
    else throw std::invalid_argument("unknown kernel kind: " + kind);
    m.sv_threshold = j.at("sv_threshold").get<double>();
    m.labels = j.at("labels").get<std::vector<int>>();
    m.train_points.ids = j.at("ids").get<std::vector<std::string>>();
    const auto pts = j.at("points").get<std::vector<std::vector<double>>>();
    if (!pts.empty()) {
        m.train_points.points.resize(static_cast<Eigen::Index>(pts.size()),
                                     static_cast<Eigen::Index>(pts.front().size()));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t c = 0; c < pts[i].size(); ++c)
                m.train_points.points(static_cast<Eigen::Index>(i),
                                      static_cast<Eigen::Index>(c)) = pts[i][c];
    }
    return m;
}

}  // namespace svcq
