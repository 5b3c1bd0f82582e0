#include "svcq/bench.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "svcq/errors.hpp"

namespace svcq {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

QTrainConfig quantum_config(const ExperimentConfig& cfg) {
    QTrainConfig q;
    q.zeta = cfg.gamma;
    q.seed = cfg.seed;
    q.shots = cfg.backend == Backend::quantum_shots ? ShotCount::of(cfg.shots.value_or(10000))
                                                    : ShotCount::exact();
    return q;
}

std::map<std::string, std::string> echo_config(const ExperimentConfig& cfg) {
    std::map<std::string, std::string> e;
    e["input"] = cfg.input_path;
    e["has_labels"] = cfg.has_labels ? "true" : "false";
    e["kernel"] = cfg.kernel.name();
    if (cfg.kernel.kind == KernelKind::polynomial) e["degree"] = std::to_string(cfg.kernel.degree);
    if (cfg.kernel.kind == KernelKind::gaussian) e["sigma"] = std::to_string(cfg.kernel.sigma);
    e["gamma"] = std::to_string(cfg.gamma);
    e["backend"] = backend_name(cfg.backend);
    e["line_samples"] = std::to_string(cfg.line_samples);
    if (cfg.shots) e["shots"] = std::to_string(*cfg.shots);
    return e;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open output file: " + path);
    out << text;
    if (!out) throw input_error("failed writing " + path);
}

const char* kAliasNote = "the soft-margin weight is exposed as --gamma; zeta is the same quantity";

}  // namespace

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::classical: return "classical";
        case Backend::quantum_exact: return "quantum-exact";
        case Backend::quantum_shots: return "quantum-shots";
    }
    return "unknown";
}

Backend backend_from_name(const std::string& name) {
    if (name == "classical") return Backend::classical;
    if (name == "quantum-exact") return Backend::quantum_exact;
    if (name == "quantum-shots") return Backend::quantum_shots;
    throw input_error("unknown backend: " + name);
}

void ExperimentConfig::validate() const {
    kernel.validate();
    if (!(gamma > 0.0)) throw input_error("gamma must be > 0");
    if (line_samples < 2) throw input_error("line samples must be >= 2");
    if (shots && backend != Backend::quantum_shots)
        throw input_error("--shots applies only to the quantum-shots backend");
    if (shots && *shots < 1) throw input_error("shot count must be >= 1");
}

ClusterRun run_cluster(const ExperimentConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const auto t0 = Clock::now();

    const Dataset d = load_csv(cfg.input_path, cfg.has_labels);
    const long m = d.size();

    RunRecord rec;
    rec.m = m;
    rec.n = d.dim();
    rec.backend = backend_name(cfg.backend);
    if (cfg.kernel.kind == KernelKind::gaussian) rec.sigma = cfg.kernel.sigma;

    ClusterResult partition;
    std::string model_json;
    std::vector<std::string> bsv_ids;

    if (cfg.backend == Backend::classical) {
        TrainConfig tc;
        tc.gamma = cfg.gamma;
        const SvmModel model = fit_contour(d, cfg.kernel, tc);
        const AdjacencyBuild built = build_adjacency(model, d, cfg.line_samples);
        long scans = 0;
        partition = cluster_finding(built.adjacency, &scans);
        rec.segment_tests = built.segment_tests;
        rec.dfs_scans = scans;
        rec.kernel_ops = m * m + built.decide_calls * active_support_count(model);
        for (Eigen::Index i : identify_bsv(model, d))
            bsv_ids.push_back(d.ids[static_cast<std::size_t>(i)]);
        model_json = model_to_json(model);
        rec.cluster_count = partition.cluster_count;
    } else {
        const QTrainConfig qc = quantum_config(cfg);
        const QSvmModel model = q_fit_contour(d, cfg.kernel, qc);
        const AdjacencyBuild built = q_build_adjacency(model, d, cfg.line_samples, qc);
        auto [part, stats] = quantum_cluster_finding(built.adjacency, qc);
        partition = std::move(part);
        rec.segment_tests = built.segment_tests;
        rec.query_stats = stats;
        rec.kernel_ops = m * (m + 1) / 2 + built.decide_calls * m;
        for (Eigen::Index i = 0; i < d.size(); ++i)
            if (q_decide(model, d.point(i), qc).label < 0)
                bsv_ids.push_back(d.ids[static_cast<std::size_t>(i)]);
        model_json = qmodel_to_json(model);
        rec.cluster_count = partition.cluster_count;
    }

    rec.wall_time_ms = ms_since(t0);

    BenchReport report;
    report.command = "cluster";
    report.seed = cfg.seed;
    report.records.push_back(rec);
    report.config = echo_config(cfg);
    report.notes = {kAliasNote};

    write_text(cfg.out_dir + "/model.json", model_json);
    write_text(cfg.out_dir + "/clusters.json", clusters_to_json(partition, d.ids, bsv_ids));
    save_report(report, cfg.out_dir + "/report.json");
    return ClusterRun{std::move(partition), std::move(report)};
}

BenchReport run_sweep_sigma(const ExperimentConfig& cfg, const std::vector<double>& sigmas) {
    if (sigmas.size() < 2) throw input_error("sigma sweep needs >= 2 values");
    std::filesystem::create_directories(cfg.out_dir);

    BenchReport report;
    report.command = "sweep-sigma";
    report.seed = cfg.seed;
    report.config = echo_config(cfg);
    report.notes = {kAliasNote,
                    "cluster counts per sigma are recorded, not asserted against a trend"};

    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        ExperimentConfig one = cfg;
        one.kernel = KernelSpec::gaussian(sigmas[i]);
        one.out_dir = cfg.out_dir + "/sigma_" + std::to_string(i);
        const auto run = run_cluster(one);
        report.records.push_back(run.report.records.front());
    }
    save_report(report, cfg.out_dir + "/report.json");
    return report;
}

double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("slope fit needs matching series with >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BenchReport run_scaling(const std::vector<long>& ms, const std::string& out_dir,
                        std::uint64_t seed) {
    if (ms.size() < 4) throw input_error("scaling run needs >= 4 values of M");
    for (std::size_t i = 1; i < ms.size(); ++i)
        if (ms[i] <= ms[i - 1]) throw input_error("scaling M values must be ascending");
    std::filesystem::create_directories(out_dir);

    BenchReport report;
    report.command = "scaling";
    report.seed = seed;
    report.notes = {"counters measure work; wall time is reported separately and is not a "
                    "speedup claim"};

    std::vector<long> classical_scans;
    std::vector<long> quantum_queries;
    for (long m : ms) {
        const AdjacencyMatrix a = AdjacencyMatrix::all_ones(m);

        RunRecord classical;
        classical.m = m;
        classical.backend = "classical";
        auto t0 = Clock::now();
        long scans = 0;
        classical.cluster_count = cluster_finding(a, &scans).cluster_count;
        classical.dfs_scans = scans;
        classical.wall_time_ms = ms_since(t0);
        classical_scans.push_back(scans);
        report.records.push_back(classical);

        RunRecord quantum;
        quantum.m = m;
        quantum.backend = "quantum-exact";
        QTrainConfig qc;
        qc.seed = seed;
        t0 = Clock::now();
        auto [part, stats] = quantum_cluster_finding(a, qc);
        quantum.cluster_count = part.cluster_count;
        quantum.query_stats = stats;
        quantum.wall_time_ms = ms_since(t0);
        quantum_queries.push_back(stats.oracle_queries);
        report.records.push_back(quantum);
    }

    std::vector<double> xs(ms.begin(), ms.end());
    ScalingFit fit;
    fit.classical_slope = fit_loglog_slope(
        xs, std::vector<double>(classical_scans.begin(), classical_scans.end()));
    fit.quantum_slope = fit_loglog_slope(
        xs, std::vector<double>(quantum_queries.begin(), quantum_queries.end()));
    report.scaling = fit;

    std::string csv = "m,classical_neighbor_scans,quantum_oracle_queries\n";
    for (std::size_t i = 0; i < ms.size(); ++i)
        csv += std::to_string(ms[i]) + "," + std::to_string(classical_scans[i]) + "," +
               std::to_string(quantum_queries[i]) + "\n";
    write_text(out_dir + "/scaling.csv", csv);
    write_scaling_svg(out_dir + "/scaling.svg", ms, classical_scans, quantum_queries, fit);
    save_report(report, out_dir + "/report.json");
    return report;
}

BenchReport run_table1(const std::string& input_path, long train_count, std::uint64_t seed,
                       const std::string& out_dir) {
    const Dataset raw = load_csv(input_path, /*has_labels=*/true);
    if (!raw.labels) throw input_error("table1 needs a labeled input");
    if (raw.size() < train_count + 10)
        throw input_error("table1 needs at least train_count + 10 rows");
    if (raw.dim() < 2) throw input_error("table1 needs at least two feature columns");
    std::filesystem::create_directories(out_dir);

    const Dataset projected = pca_project(raw, 2);

    // seeded split: shuffle once, first train_count rows train
    std::vector<long> order(static_cast<std::size_t>(raw.size()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<long>(i);
    SplitMix64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);

    Dataset train_d;
    train_d.points.resize(train_count, projected.dim());
    std::vector<int> train_labels;
    for (long i = 0; i < train_count; ++i) {
        const long src = order[static_cast<std::size_t>(i)];
        train_d.points.row(i) = projected.points.row(src);
        train_d.ids.push_back(projected.ids[static_cast<std::size_t>(src)]);
        train_labels.push_back((*projected.labels)[static_cast<std::size_t>(src)]);
    }
    train_d.labels = train_labels;

    // gaussian width scaled to the mean pairwise squared distance of the
    // training rows
    double mean_sq = 0.0;
    long pairs = 0;
    for (long i = 0; i < train_count; ++i)
        for (long j = i + 1; j < train_count; ++j) {
            mean_sq += (train_d.points.row(i) - train_d.points.row(j)).squaredNorm();
            ++pairs;
        }
    mean_sq = pairs ? mean_sq / static_cast<double>(pairs) : 1.0;
    const KernelSpec kernel = KernelSpec::gaussian(1.0 / std::max(mean_sq, 1e-12));

    Table1Result t1;
    t1.train_count = train_count;
    t1.test_count = raw.size() - train_count;

    auto t0 = Clock::now();
    TrainConfig tc;
    const SvmModel classical = train(train_d, train_labels, kernel, tc);
    t1.classical_train_ms = ms_since(t0);

    QTrainConfig qc;
    qc.seed = seed;
    t0 = Clock::now();
    const QSvmModel quantum = q_train(train_d, train_labels, kernel, qc);
    t1.quantum_train_ms = ms_since(t0);

    long classical_hits = 0;
    long quantum_hits = 0;
    t0 = Clock::now();
    for (long i = train_count; i < raw.size(); ++i) {
        const long src = order[static_cast<std::size_t>(i)];
        const int truth = (*projected.labels)[static_cast<std::size_t>(src)];
        if (decide(classical, projected.point(src)).sign == truth) ++classical_hits;
    }
    t1.classical_predict_ms = ms_since(t0);
    t0 = Clock::now();
    for (long i = train_count; i < raw.size(); ++i) {
        const long src = order[static_cast<std::size_t>(i)];
        const int truth = (*projected.labels)[static_cast<std::size_t>(src)];
        if (q_decide(quantum, projected.point(src), qc).label == truth) ++quantum_hits;
    }
    t1.quantum_predict_ms = ms_since(t0);

    t1.classical_accuracy =
        static_cast<double>(classical_hits) / static_cast<double>(t1.test_count);
    t1.quantum_accuracy = static_cast<double>(quantum_hits) / static_cast<double>(t1.test_count);

    BenchReport report;
    report.command = "table1";
    report.seed = seed;
    report.table1 = t1;
    report.config = {{"input", input_path},
                     {"train_count", std::to_string(train_count)},
                     {"kernel", kernel.name()},
                     {"sigma", std::to_string(kernel.sigma)},
                     {"gamma", "1.0"}};
    report.notes = {kAliasNote,
                    "features are centered to zero mean per feature before projection",
                    "baseline accuracies are the published reference for this benchmark "
                    "family, recorded but not asserted"};
    save_report(report, out_dir + "/report.json");
    return report;
}

namespace {

double log10d(double v) { return std::log10(std::max(v, 1.0)); }

}  // namespace

void write_scaling_svg(const std::string& path, const std::vector<long>& ms,
                       const std::vector<long>& classical_scans,
                       const std::vector<long>& quantum_queries, const ScalingFit& fit) {
    const double width = 720, height = 480;
    const double ml = 80, mr = 30, mt = 40, mb = 60;

    double xmin = log10d(static_cast<double>(ms.front()));
    double xmax = log10d(static_cast<double>(ms.back()));
    double ymin = 1e300, ymax = -1e300;
    for (long v : classical_scans) {
        ymin = std::min(ymin, log10d(static_cast<double>(v)));
        ymax = std::max(ymax, log10d(static_cast<double>(v)));
    }
    for (long v : quantum_queries) {
        ymin = std::min(ymin, log10d(static_cast<double>(v)));
        ymax = std::max(ymax, log10d(static_cast<double>(v)));
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;

    const auto px = [&](double lx) { return ml + (lx - xmin) / (xmax - xmin) * (width - ml - mr); };
    const auto py = [&](double ly) {
        return height - mb - (ly - ymin) / (ymax - ymin) * (height - mt - mb);
    };
    const auto polyline = [&](const std::vector<long>& ys, const char* color) {
        std::string p = "<polyline fill=\"none\" stroke=\"";
        p += color;
        p += "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < ms.size(); ++i) {
            p += std::to_string(px(log10d(static_cast<double>(ms[i])))) + "," +
                 std::to_string(py(log10d(static_cast<double>(ys[i])))) + " ";
        }
        p += "\"/>\n";
        for (std::size_t i = 0; i < ms.size(); ++i) {
            p += "<circle cx=\"" + std::to_string(px(log10d(static_cast<double>(ms[i])))) +
                 "\" cy=\"" + std::to_string(py(log10d(static_cast<double>(ys[i])))) +
                 "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
        return p;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string((int)width) +
           "\" height=\"" + std::to_string((int)height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(width / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">cluster identification cost vs "
           "M (log-log)</text>\n";
    // axes
    svg += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + std::to_string(height - mb) +
           "\" x2=\"" + std::to_string(width - mr) + "\" y2=\"" + std::to_string(height - mb) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + std::to_string(mt) + "\" x2=\"" +
           std::to_string(ml) + "\" y2=\"" + std::to_string(height - mb) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + std::to_string(width / 2) + "\" y=\"" + std::to_string(height - 16) +
           "\" text-anchor=\"middle\" font-size=\"13\">M (objects)</text>\n";
    svg += "<text x=\"20\" y=\"" + std::to_string(height / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 " +
           std::to_string(height / 2) + ")\">operation count</text>\n";
    // tick labels at the measured M values
    for (long m : ms) {
        svg += "<text x=\"" + std::to_string(px(log10d(static_cast<double>(m)))) + "\" y=\"" +
               std::to_string(height - mb + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + std::to_string(m) + "</text>\n";
    }
    svg += polyline(classical_scans, "#1f77b4");
    svg += polyline(quantum_queries, "#d62728");

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%f\" y=\"%f\" font-size=\"13\" fill=\"#1f77b4\">neighbor scans, "
                  "slope %.3f</text>\n",
                  ml + 12, mt + 18, fit.classical_slope);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%f\" y=\"%f\" font-size=\"13\" fill=\"#d62728\">oracle queries, "
                  "slope %.3f</text>\n",
                  ml + 12, mt + 38, fit.quantum_slope);
    svg += buf;
    svg += "</svg>\n";
    write_text(path, svg);
}

}  // namespace svcq
