#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "svcq/bench.hpp"
#include "svcq/errors.hpp"
#include "test_util.hpp"

using namespace svcq;
using svcq::test::two_blob_fixture;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("svcq_test_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

std::string write_two_blob_csv(const TempDir& dir) {
    const auto d = two_blob_fixture();
    const auto path = (dir.path / "blobs.csv").string();
    save_csv(d, path, /*with_labels=*/false);
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json strip_wall_time(nlohmann::json j) {
    if (j.contains("records"))
        for (auto& rec : j["records"]) rec.erase("wall_time_ms");
    if (j.contains("table1"))
        for (const char* key : {"classical_train_ms", "quantum_train_ms", "classical_predict_ms",
                                "quantum_predict_ms"})
            j["table1"].erase(key);
    return j;
}

}  // namespace

TEST_CASE("run_cluster classical writes artifacts and finds two blobs") {
    TempDir dir("cluster_classical");
    ExperimentConfig cfg;
    cfg.input_path = write_two_blob_csv(dir);
    cfg.kernel = KernelSpec::gaussian(2.0);
    cfg.gamma = 1.0;
    cfg.backend = Backend::classical;
    cfg.seed = 1;
    cfg.out_dir = (dir.path / "out").string();

    const auto run = run_cluster(cfg);
    CHECK(run.partition.cluster_count == 2);
    CHECK(fs::exists(dir.path / "out" / "model.json"));
    CHECK(fs::exists(dir.path / "out" / "clusters.json"));
    CHECK(fs::exists(dir.path / "out" / "report.json"));

    const auto report = load_report((dir.path / "out" / "report.json").string());
    REQUIRE(report.records.size() == 1);
    CHECK(report.records[0].m == 60);
    CHECK(report.records[0].cluster_count == 2);
    CHECK(report.records[0].segment_tests == 60 * 59 / 2);
    CHECK(report.records[0].kernel_ops > 0);
}

TEST_CASE("run_cluster quantum-exact matches the classical partition") {
    TempDir dir("cluster_quantum");
    ExperimentConfig cfg;
    cfg.input_path = write_two_blob_csv(dir);
    cfg.kernel = KernelSpec::gaussian(2.0);
    cfg.backend = Backend::classical;
    cfg.seed = 1;
    cfg.out_dir = (dir.path / "classical").string();
    const auto classical = run_cluster(cfg);

    cfg.backend = Backend::quantum_exact;
    cfg.out_dir = (dir.path / "quantum").string();
    const auto quantum = run_cluster(cfg);

    CHECK(quantum.partition.cluster_count == classical.partition.cluster_count);
    CHECK(quantum.partition.clusters == classical.partition.clusters);

    const auto cj = slurp((dir.path / "classical" / "clusters.json").string());
    const auto qj = slurp((dir.path / "quantum" / "clusters.json").string());
    CHECK(nlohmann::json::parse(cj)["clusters"] == nlohmann::json::parse(qj)["clusters"]);
}

TEST_CASE("run_cluster rejects inconsistent configs and missing files") {
    ExperimentConfig cfg;
    cfg.input_path = "/nonexistent/points.csv";
    cfg.kernel = KernelSpec::gaussian(1.0);
    CHECK_THROWS_AS(run_cluster(cfg), input_error);

    cfg.shots = 100;  // shots outside quantum-shots
    CHECK_THROWS_AS(cfg.validate(), input_error);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    TempDir dir("determinism");
    ExperimentConfig cfg;
    cfg.input_path = write_two_blob_csv(dir);
    cfg.kernel = KernelSpec::gaussian(2.0);
    cfg.backend = Backend::quantum_shots;
    cfg.shots = 5000;
    cfg.seed = 99;

    cfg.out_dir = (dir.path / "a").string();
    run_cluster(cfg);
    cfg.out_dir = (dir.path / "b").string();
    run_cluster(cfg);

    const auto ja = strip_wall_time(nlohmann::json::parse(slurp((dir.path / "a" / "report.json").string())));
    const auto jb = strip_wall_time(nlohmann::json::parse(slurp((dir.path / "b" / "report.json").string())));
    CHECK(ja.dump() == jb.dump());
    CHECK(slurp((dir.path / "a" / "clusters.json").string()) ==
          slurp((dir.path / "b" / "clusters.json").string()));
}

TEST_CASE("report json round trips through the loader") {
    TempDir dir("roundtrip");
    BenchReport r;
    r.command = "cluster";
    r.seed = 5;
    RunRecord rec;
    rec.m = 10;
    rec.n = 2;
    rec.backend = "quantum-shots";
    rec.kernel_ops = 55;
    rec.query_stats.oracle_queries = 17;
    rec.query_stats.grover_iterations = 12;
    rec.cluster_count = 3;
    rec.wall_time_ms = 1.5;
    r.records.push_back(rec);
    r.config = {{"gamma", "1.0"}};
    r.notes = {"n1"};
    r.scaling = ScalingFit{2.0, 1.5};

    const auto path = (dir.path / "report.json").string();
    save_report(r, path);
    const auto back = load_report(path);
    CHECK(back.command == r.command);
    CHECK(back.records.size() == 1);
    CHECK(back.records[0].query_stats.oracle_queries == 17);
    CHECK(back.scaling->quantum_slope == 1.5);

    // rewrite must be byte-identical
    const auto again = (dir.path / "again.json").string();
    save_report(back, again);
    CHECK(slurp(path) == slurp(again));

    SUBCASE("schema version is enforced") {
        auto j = nlohmann::json::parse(report_to_json(r));
        j["schema_version"] = 2;
        CHECK_THROWS_AS(report_from_json(j.dump()), input_error);
    }
}

TEST_CASE("run_sweep_sigma tabulates cluster counts") {
    TempDir dir("sweep");
    ExperimentConfig cfg;
    cfg.input_path = write_two_blob_csv(dir);
    cfg.kernel = KernelSpec::gaussian(1.0);
    cfg.backend = Backend::classical;
    cfg.out_dir = (dir.path / "out").string();

    const auto report = run_sweep_sigma(cfg, {0.01, 2.0});
    REQUIRE(report.records.size() == 2);
    CHECK(report.records[0].sigma == 0.01);
    CHECK(report.records[0].cluster_count == 1);
    CHECK(report.records[1].sigma == 2.0);
    CHECK(report.records[1].cluster_count == 2);

    SUBCASE("a single sigma is rejected") {
        CHECK_THROWS_AS(run_sweep_sigma(cfg, {1.0}), input_error);
    }

    SUBCASE("repeated sigma gives identical counts") {
        const auto rep = run_sweep_sigma(cfg, {2.0, 2.0});
        CHECK(rep.records[0].cluster_count == rep.records[1].cluster_count);
    }
}

TEST_CASE("run_scaling fits the expected slopes") {
    TempDir dir("scaling");
    const auto report = run_scaling({64, 128, 256, 512}, dir.str(), 3);
    REQUIRE(report.scaling.has_value());
    CHECK(report.scaling->classical_slope >= 1.9);
    CHECK(report.scaling->classical_slope <= 2.1);
    CHECK(report.scaling->quantum_slope >= 1.3);
    CHECK(report.scaling->quantum_slope <= 1.7);

    CHECK(fs::exists(dir.path / "scaling.csv"));
    CHECK(fs::exists(dir.path / "scaling.svg"));
    const auto svg = slurp((dir.path / "scaling.svg").string());
    CHECK(svg.find("neighbor scans") != std::string::npos);
    CHECK(svg.find("oracle queries") != std::string::npos);
    CHECK(svg.find("wall") == std::string::npos);

    const auto csv = slurp((dir.path / "scaling.csv").string());
    CHECK(csv.rfind("m,classical_neighbor_scans,quantum_oracle_queries", 0) == 0);

    SUBCASE("fewer than four points is rejected") {
        CHECK_THROWS_AS(run_scaling({64, 128, 256}, dir.str(), 3), input_error);
    }

    SUBCASE("non-ascending list is rejected") {
        CHECK_THROWS_AS(run_scaling({64, 64, 128, 256}, dir.str(), 3), input_error);
    }
}

TEST_CASE("run_table1 compares backends on a separable labeled set") {
    TempDir dir("table1");

    // 30-feature two-class synthetic, labels by blob
    Eigen::VectorXd c0 = Eigen::VectorXd::Zero(30);
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(30);
    for (int i = 0; i < 3; ++i) {
        c0(i) = 1.5;
        c1(i) = -1.5;
    }
    auto d = synth_blobs(12345, {{c0, 1.0, 150}, {c1, 1.0, 150}});
    std::vector<int> labels;
    for (const auto& id : d.ids) labels.push_back(blob_of_id(id) == 0 ? 1 : -1);
    d.labels = labels;
    const auto csv_path = (dir.path / "labeled.csv").string();
    save_csv(d, csv_path, /*with_labels=*/true);

    const auto report = run_table1(csv_path, 20, 7, dir.str());
    REQUIRE(report.table1.has_value());
    const auto& t1 = *report.table1;
    CHECK(t1.train_count == 20);
    CHECK(t1.test_count == 280);
    CHECK(t1.classical_accuracy >= 0.85);
    CHECK(std::abs(t1.classical_accuracy - t1.quantum_accuracy) <= 0.05);
    CHECK(t1.baseline_classical_accuracy == 0.99);
    CHECK(t1.baseline_quantum_accuracy == 0.90);

    SUBCASE("too few rows is rejected") {
        CHECK_THROWS_AS(run_table1(csv_path, 295, 7, dir.str()), input_error);
    }

    SUBCASE("unlabeled input is rejected") {
        const auto plain = (dir.path / "plain.csv").string();
        save_csv(d, plain, /*with_labels=*/false);
        CHECK_THROWS_AS(run_table1(plain, 20, 7, dir.str()), input_error);
    }
}

TEST_CASE("fit_loglog_slope recovers exponents") {
    std::vector<double> xs{10, 100, 1000, 10000};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3.0 * std::pow(x, 1.5));
    CHECK(fit_loglog_slope(xs, ys) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("cli exit codes") {
    const char* bin = std::getenv("SVCQ_BIN");
    if (!bin) {
        MESSAGE("SVCQ_BIN not set; skipping CLI integration checks");
        return;
    }
    TempDir dir("cli");
    const std::string quiet = " > " + (dir.path / "stdout.txt").string() + " 2>&1";

    // missing input file -> 2
    int rc = std::system((std::string(bin) + " cluster --input /nope.csv --kernel gaussian" +
                          " --sigma 2 --gamma 1 --backend classical --seed 1 --out " +
                          dir.str() + quiet)
                             .c_str());
    CHECK(WEXITSTATUS(rc) == 2);

    // bad usage -> 2
    rc = std::system((std::string(bin) + " cluster --no-such-flag" + quiet).c_str());
    CHECK(WEXITSTATUS(rc) == 2);

    // end-to-end success -> 0
    const auto csv = write_two_blob_csv(dir);
    rc = std::system((std::string(bin) + " cluster --input " + csv +
                      " --kernel gaussian --sigma 2 --gamma 1 --backend classical --seed 1" +
                      " --out " + (dir.path / "out").string() + quiet)
                         .c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(fs::exists(dir.path / "out" / "clusters.json"));

    // synth + table1 through the CLI
    rc = std::system((std::string(bin) + " synth-blobs --out " + (dir.path / "t1.csv").string() +
                      " --dim 30 --count 60 --separation 5 --spread 1 --binary-labels --seed 9" +
                      quiet)
                         .c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    rc = std::system((std::string(bin) + " bench table1 --input " +
                      (dir.path / "t1.csv").string() + " --train-count 20 --seed 3 --out " +
                      (dir.path / "t1out").string() + quiet)
                         .c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(fs::exists(dir.path / "t1out" / "report.json"));
}
