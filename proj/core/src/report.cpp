#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "svcq/bench.hpp"
#include "svcq/errors.hpp"

namespace svcq {

namespace {

nlohmann::ordered_json stats_json(const QueryStats& s) {
    return {{"grover_iterations", s.grover_iterations},
            {"oracle_queries", s.oracle_queries},
            {"grover_invocations", s.grover_invocations},
            {"classical_fallback_scans", s.classical_fallback_scans},
            {"counting_only", s.counting_only}};
}

QueryStats stats_from(const nlohmann::json& j) {
    QueryStats s;
    s.grover_iterations = j.at("grover_iterations").get<long>();
    s.oracle_queries = j.at("oracle_queries").get<long>();
    s.grover_invocations = j.at("grover_invocations").get<long>();
    s.classical_fallback_scans = j.at("classical_fallback_scans").get<long>();
    s.counting_only = j.at("counting_only").get<bool>();
    return s;
}

}  // namespace

std::string report_to_json(const BenchReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = r.schema_version;
    j["command"] = r.command;
    j["seed"] = r.seed;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& rec : r.records) {
        nlohmann::ordered_json jr;
        jr["m"] = rec.m;
        jr["n"] = rec.n;
        jr["backend"] = rec.backend;
        jr["sigma"] = rec.sigma;
        jr["kernel_ops"] = rec.kernel_ops;
        jr["segment_tests"] = rec.segment_tests;
        jr["dfs_scans"] = rec.dfs_scans;
        jr["query_stats"] = stats_json(rec.query_stats);
        jr["cluster_count"] = rec.cluster_count;
        jr["wall_time_ms"] = rec.wall_time_ms;
        j["records"].push_back(jr);
    }
    j["config"] = r.config;
    j["notes"] = r.notes;
    if (r.scaling) {
        j["scaling"] = {{"classical_slope", r.scaling->classical_slope},
                        {"quantum_slope", r.scaling->quantum_slope}};
    }
    if (r.table1) {
        const auto& t = *r.table1;
        j["table1"] = {{"train_count", t.train_count},
                       {"test_count", t.test_count},
                       {"classical_accuracy", t.classical_accuracy},
                       {"quantum_accuracy", t.quantum_accuracy},
                       {"classical_train_ms", t.classical_train_ms},
                       {"quantum_train_ms", t.quantum_train_ms},
                       {"classical_predict_ms", t.classical_predict_ms},
                       {"quantum_predict_ms", t.quantum_predict_ms},
                       {"baseline_classical_accuracy", t.baseline_classical_accuracy},
                       {"baseline_quantum_accuracy", t.baseline_quantum_accuracy}};
    }
    return j.dump(2);
}

BenchReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("malformed report json: ") + e.what());
    }
    BenchReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != 1)
        throw input_error("unsupported report schema version " +
                          std::to_string(r.schema_version));
    r.command = j.at("command").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& jr : j.at("records")) {
        RunRecord rec;
        rec.m = jr.at("m").get<long>();
        rec.n = jr.at("n").get<long>();
        rec.backend = jr.at("backend").get<std::string>();
        rec.sigma = jr.at("sigma").get<double>();
        rec.kernel_ops = jr.at("kernel_ops").get<long>();
        rec.segment_tests = jr.at("segment_tests").get<long>();
        rec.dfs_scans = jr.at("dfs_scans").get<long>();
        rec.query_stats = stats_from(jr.at("query_stats"));
        rec.cluster_count = jr.at("cluster_count").get<int>();
        rec.wall_time_ms = jr.at("wall_time_ms").get<double>();
        r.records.push_back(rec);
    }
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("scaling")) {
        ScalingFit f;
        f.classical_slope = j["scaling"].at("classical_slope").get<double>();
        f.quantum_slope = j["scaling"].at("quantum_slope").get<double>();
        r.scaling = f;
    }
    if (j.contains("table1")) {
        const auto& t = j["table1"];
        Table1Result t1;
        t1.train_count = t.at("train_count").get<long>();
        t1.test_count = t.at("test_count").get<long>();
        t1.classical_accuracy = t.at("classical_accuracy").get<double>();
        t1.quantum_accuracy = t.at("quantum_accuracy").get<double>();
        t1.classical_train_ms = t.at("classical_train_ms").get<double>();
        t1.quantum_train_ms = t.at("quantum_train_ms").get<double>();
        t1.classical_predict_ms = t.at("classical_predict_ms").get<double>();
        t1.quantum_predict_ms = t.at("quantum_predict_ms").get<double>();
        t1.baseline_classical_accuracy = t.at("baseline_classical_accuracy").get<double>();
        t1.baseline_quantum_accuracy = t.at("baseline_quantum_accuracy").get<double>();
        r.table1 = t1;
    }
    return r;
}

void save_report(const BenchReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open output file: " + path);
    out << report_to_json(r) << '\n';
    if (!out) throw input_error("failed writing " + path);
}

BenchReport load_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open report: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return report_from_json(ss.str());
}

}  // namespace svcq
