// svcq: support-vector clustering with classical and quantum-emulated
// backends, plus the operation-count benchmark harness.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svcq/bench.hpp"
#include "svcq/dataset.hpp"
#include "svcq/errors.hpp"

namespace {

struct CommonArgs {
    std::string input;
    bool has_labels = false;
    std::string kernel = "gaussian";
    int degree = 2;
    double sigma = 1.0;
    double gamma = 1.0;
    std::string backend = "classical";
    long shots = -1;
    int line_samples = 10;
    std::uint64_t seed = 0;
    std::string out = ".";
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_backend) {
    cmd->add_option("--input", a.input, "input CSV file")->required();
    cmd->add_flag("--has-labels", a.has_labels, "last CSV column holds +/-1 labels");
    cmd->add_option("--kernel", a.kernel, "kernel family")
        ->check(CLI::IsMember({"linear", "poly", "gaussian"}));
    cmd->add_option("--degree", a.degree, "polynomial degree");
    cmd->add_option("--sigma", a.sigma, "gaussian width parameter");
    cmd->add_option("--gamma", a.gamma, "soft-margin weight (alias: zeta)");
    if (needs_backend) {
        cmd->add_option("--backend", a.backend, "execution backend")
            ->check(CLI::IsMember({"classical", "quantum-exact", "quantum-shots"}));
        cmd->add_option("--shots", a.shots, "shot count for quantum-shots");
        cmd->add_option("--line-samples", a.line_samples, "samples per connectivity segment");
    }
    cmd->add_option("--seed", a.seed, "random seed");
    cmd->add_option("--out", a.out, "output directory");
}

svcq::ExperimentConfig to_config(const CommonArgs& a) {
    svcq::ExperimentConfig cfg;
    cfg.input_path = a.input;
    cfg.has_labels = a.has_labels;
    if (a.kernel == "linear") cfg.kernel = svcq::KernelSpec::linear();
    else if (a.kernel == "poly") cfg.kernel = svcq::KernelSpec::polynomial(a.degree);
    else cfg.kernel = svcq::KernelSpec::gaussian(a.sigma);
    cfg.gamma = a.gamma;
    cfg.backend = svcq::backend_from_name(a.backend);
    if (a.shots >= 0) cfg.shots = a.shots;
    cfg.line_samples = a.line_samples;
    cfg.seed = a.seed;
    cfg.out_dir = a.out;
    return cfg;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const auto comma = csv.find(',', pos);
        const auto tok = csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                                    : comma - pos);
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw svcq::input_error("bad numeric list entry: " + tok);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<long> parse_long_list(const std::string& csv) {
    std::vector<long> out;
    for (double v : parse_double_list(csv)) out.push_back(static_cast<long>(v));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"support vector clustering: classical and quantum-emulated backends"};
    app.require_subcommand(1);

    CommonArgs cluster_args;
    auto* cluster = app.add_subcommand("cluster", "cluster one dataset end to end");
    add_common(cluster, cluster_args, /*needs_backend=*/true);

    CommonArgs sweep_args;
    std::string sweep_sigmas;
    auto* sweep = app.add_subcommand("sweep-sigma", "rerun clustering across sigma values");
    add_common(sweep, sweep_args, /*needs_backend=*/true);
    sweep->add_option("--sigmas", sweep_sigmas, "comma-separated sigma list")->required();

    auto* bench = app.add_subcommand("bench", "operation-count benchmark harness");
    bench->require_subcommand(1);

    std::string scaling_ms = "64,128,256,512,1024";
    std::string scaling_out = ".";
    std::uint64_t scaling_seed = 0;
    auto* scaling = bench->add_subcommand("scaling", "worst-case identification cost vs M");
    scaling->add_option("--m", scaling_ms, "comma-separated M values");
    scaling->add_option("--seed", scaling_seed, "random seed");
    scaling->add_option("--out", scaling_out, "output directory")->required();

    std::string t1_input, t1_out = ".";
    long t1_train = 20;
    std::uint64_t t1_seed = 0;
    auto* table1 = bench->add_subcommand("table1", "labeled-accuracy comparison of backends");
    table1->add_option("--input", t1_input, "labeled CSV")->required();
    table1->add_option("--train-count", t1_train, "training rows");
    table1->add_option("--seed", t1_seed, "split seed");
    table1->add_option("--out", t1_out, "output directory");

    std::string synth_out;
    std::uint64_t synth_seed = 0;
    int synth_dim = 2, synth_count = 30;
    double synth_spread = 0.5, synth_separation = 10.0;
    bool synth_labels = false;
    auto* synth = app.add_subcommand("synth-blobs", "write a two-blob CSV fixture");
    synth->add_option("--out", synth_out, "output CSV path")->required();
    synth->add_option("--seed", synth_seed, "random seed");
    synth->add_option("--dim", synth_dim, "feature dimension");
    synth->add_option("--count", synth_count, "points per blob");
    synth->add_option("--spread", synth_spread, "blob standard deviation");
    synth->add_option("--separation", synth_separation, "distance between blob centers");
    synth->add_flag("--binary-labels", synth_labels, "label blobs +1 / -1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cluster->parsed()) {
            const auto result = svcq::run_cluster(to_config(cluster_args));
            std::cout << "clusters: " << result.partition.cluster_count << "\n"
                      << "outputs written to " << cluster_args.out << "\n";
        } else if (sweep->parsed()) {
            const auto report = svcq::run_sweep_sigma(to_config(sweep_args),
                                                      parse_double_list(sweep_sigmas));
            std::cout << "sigma -> clusterCount\n";
            for (const auto& rec : report.records)
                std::printf("%10.4f -> %d\n", rec.sigma, rec.cluster_count);
        } else if (scaling->parsed()) {
            const auto report =
                svcq::run_scaling(parse_long_list(scaling_ms), scaling_out, scaling_seed);
            std::printf("classical neighbor-scan slope: %.3f\n",
                        report.scaling->classical_slope);
            std::printf("quantum oracle-query slope:    %.3f\n", report.scaling->quantum_slope);
        } else if (table1->parsed()) {
            const auto report = svcq::run_table1(t1_input, t1_train, t1_seed, t1_out);
            std::printf("classical accuracy:     %.4f\n", report.table1->classical_accuracy);
            std::printf("quantum-exact accuracy: %.4f\n", report.table1->quantum_accuracy);
        } else if (synth->parsed()) {
            Eigen::VectorXd c0 = Eigen::VectorXd::Zero(synth_dim);
            Eigen::VectorXd c1 = Eigen::VectorXd::Zero(synth_dim);
            const int spread_dims = std::min(synth_dim, 3);
            for (int i = 0; i < spread_dims; ++i)
                c1(i) = synth_separation / std::sqrt(static_cast<double>(spread_dims));
            auto d = svcq::synth_blobs(synth_seed, {{c0, synth_spread, synth_count},
                                                    {c1, synth_spread, synth_count}});
            if (synth_labels) {
                std::vector<int> labels;
                for (const auto& id : d.ids) labels.push_back(svcq::blob_of_id(id) == 0 ? 1 : -1);
                d.labels = labels;
            }
            svcq::save_csv(d, synth_out, synth_labels);
            std::cout << "wrote " << d.size() << " points to " << synth_out << "\n";
        }
    } catch (const svcq::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
