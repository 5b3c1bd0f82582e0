#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "svcq/qsvc.hpp"
#include "svcq/svc.hpp"

namespace svcq {

enum class Backend { classical, quantum_exact, quantum_shots };

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& name);

struct ExperimentConfig {
    std::string input_path;
    bool has_labels = false;
    KernelSpec kernel;
    double gamma = 1.0;
    Backend backend = Backend::classical;
    int line_samples = 10;
    std::optional<long> shots;  // quantum-shots only
    std::uint64_t seed = 0;
    std::string out_dir = ".";

    void validate() const;
};

// One benchmark row. Counter fields that do not apply to the backend stay
// at zero; wall-clock fields are reported but never asserted against.
struct RunRecord {
    long m = 0;
    long n = 0;
    std::string backend;
    double sigma = 0.0;  // set by sweeps
    long kernel_ops = 0;
    long segment_tests = 0;
    long dfs_scans = 0;
    QueryStats query_stats;
    int cluster_count = 0;
    double wall_time_ms = 0.0;
};

struct ScalingFit {
    double classical_slope = 0.0;
    double quantum_slope = 0.0;
};

struct Table1Result {
    long train_count = 0;
    long test_count = 0;
    double classical_accuracy = 0.0;
    double quantum_accuracy = 0.0;
    double classical_train_ms = 0.0;
    double quantum_train_ms = 0.0;
    double classical_predict_ms = 0.0;
    double quantum_predict_ms = 0.0;
    // published reference figures this benchmark family is compared
    // against; recorded, never asserted
    double baseline_classical_accuracy = 0.99;
    double baseline_quantum_accuracy = 0.90;
};

struct BenchReport {
    int schema_version = 1;
    std::string command;
    std::uint64_t seed = 0;
    std::vector<RunRecord> records;
    std::map<std::string, std::string> config;
    std::vector<std::string> notes;
    std::optional<ScalingFit> scaling;
    std::optional<Table1Result> table1;
};

std::string report_to_json(const BenchReport& r);
BenchReport report_from_json(const std::string& text);
void save_report(const BenchReport& r, const std::string& path);
BenchReport load_report(const std::string& path);

struct ClusterRun {
    ClusterResult partition;
    BenchReport report;
};

// End-to-end clustering: contour fit, segment adjacency, component
// extraction under the configured backend. Writes model.json,
// clusters.json and report.json into out_dir.
ClusterRun run_cluster(const ExperimentConfig& cfg);

// Reruns the clustering once per sigma and tabulates sigma -> cluster
// count. Requires at least two values.
BenchReport run_sweep_sigma(const ExperimentConfig& cfg, const std::vector<double>& sigmas);

// Worst-case (all-ones adjacency) cluster identification at each M under
// both accounting models; emits scaling.csv, scaling.svg and report.json
// with the fitted log-log slopes.
BenchReport run_scaling(const std::vector<long>& ms, const std::string& out_dir,
                        std::uint64_t seed);

// Labeled-CSV accuracy comparison: center + project to 2 features, fixed
// seeded split with train_count training rows, classical and
// quantum-exact training, test accuracy of both plus timings.
BenchReport run_table1(const std::string& input_path, long train_count, std::uint64_t seed,
                       const std::string& out_dir);

// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Two-series log-log polyline plot; axes carry the counter names.
void write_scaling_svg(const std::string& path, const std::vector<long>& ms,
                       const std::vector<long>& classical_scans,
                       const std::vector<long>& quantum_queries, const ScalingFit& fit);

}  // namespace svcq
