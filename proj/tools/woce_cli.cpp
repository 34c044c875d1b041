// Command-line front end: cluster, gen-constraints, eval, benchmark, synth.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/spdlog.h>

#include "woce/benchmark.hpp"
#include "woce/consensus.hpp"
#include "woce/dataset.hpp"
#include "woce/evaluation.hpp"
#include "woce/sampling.hpp"

namespace fs = std::filesystem;

namespace {

void write_diagnostics(const fs::path& dir, const woce::WoceResult& result) {
    fs::create_directories(dir);
    woce::write_matrix_csv(dir / "coassociation.csv", result.coassociation.entries);
    std::ofstream out(dir / "uniformity.csv");
    if (!out) {
        throw woce::ParseError(fmt::format("cannot write {}", (dir / "uniformity.csv").string()));
    }
    out << "slot,generator,k,clusters,eta,xi,theta,raw,weight\n";
    for (std::size_t t = 0; t < result.reference.size(); ++t) {
        const auto& spec = result.schedule.specs[t];
        const auto& s = result.scores[t];
        out << fmt::format("{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", t, woce::generator_name(spec), spec.k,
                           result.reference.partitions[t].num_clusters(), s.eta, s.xi, s.theta, s.raw,
                           result.weights.weights[t]);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cluster ensembles with uniformity-weighted evidence accumulation"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Suppress warnings");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Cluster a CSV dataset");
    std::string data_path;
    std::string constraints_path;
    std::string out_path;
    std::string diagnostics_dir;
    std::string label_col = "none";
    std::string weight_mode = "minmax";
    std::string uniformity_mode = "batch";
    int k = 0;
    int d = 0;
    int ensemble_size = 20;
    std::uint64_t seed = 0;
    bool no_normalize = false;
    cluster->add_option("--data", data_path, "Input CSV")->required()->check(CLI::ExistingFile);
    cluster->add_option("--k", k, "Number of final clusters")->required()->check(CLI::Range(2, 1 << 30));
    cluster->add_option("--constraints", constraints_path, "Constraint CSV (i,j,must|cannot)")->check(CLI::ExistingFile);
    cluster->add_option("--d", d, "Leading mapped features to keep (0 = all)")->check(CLI::NonNegativeNumber);
    cluster->add_option("--ensemble-size", ensemble_size, "Number of base partitions")->check(CLI::PositiveNumber);
    cluster->add_option("--seed", seed, "Random seed");
    cluster->add_option("--weight-mode", weight_mode, "minmax|raw|clamped|uniform")
        ->check(CLI::IsMember({"minmax", "raw", "clamped", "uniform"}));
    cluster->add_option("--uniformity-mode", uniformity_mode, "batch|incremental")
        ->check(CLI::IsMember({"batch", "incremental"}));
    cluster->add_option("--label-col", label_col, "none|last|<index>; label column is dropped before clustering");
    cluster->add_option("--out", out_path, "Output label file")->required();
    cluster->add_option("--diagnostics", diagnostics_dir, "Directory for co-association and uniformity tables");
    cluster->add_flag("--no-normalize", no_normalize, "Skip per-feature z-scoring");

    // gen-constraints
    auto* gen = app.add_subcommand("gen-constraints", "Sample pairwise constraints from labels");
    std::string gen_data;
    std::string gen_label_col = "last";
    std::string gen_out;
    double percent = 0.0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--data", gen_data, "Labelled CSV")->required()->check(CLI::ExistingFile);
    gen->add_option("--label-col", gen_label_col, "last|<index>");
    gen->add_option("--percent", percent, "Percentage of instances to constrain")->required()->check(CLI::Range(0.0, 100.0));
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--out", gen_out, "Output constraint CSV")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "Score predicted labels against ground truth");
    std::string pred_path;
    std::string truth_path;
    eval->add_option("--pred", pred_path, "Predicted labels, one per line")->required()->check(CLI::ExistingFile);
    eval->add_option("--truth", truth_path, "True labels, one per line")->required()->check(CLI::ExistingFile);

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "Run a benchmark described by a key=value config");
    std::string config_path;
    std::string bench_out;
    bench->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    bench->add_option("--out", bench_out, "CSV report (overrides the config's output key)");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate synthetic datasets");
    synth->require_subcommand(1);
    auto* halfring = synth->add_subcommand("halfring", "Two interleaved half rings");
    std::size_t synth_n = 400;
    double noise = 0.1;
    std::uint64_t synth_seed = 0;
    std::string synth_out;
    halfring->add_option("--n", synth_n, "Number of points (even)");
    halfring->add_option("--noise", noise, "Radial noise standard deviation");
    halfring->add_option("--seed", synth_seed, "Random seed");
    halfring->add_option("--out", synth_out, "Output CSV")->required();

    CLI11_PARSE(app, argc, argv);
    if (quiet) {
        spdlog::set_level(spdlog::level::err);
    }

    try {
        if (*cluster) {
            auto ds = woce::load_csv(data_path, woce::LabelColumn::parse(label_col));
            if (!no_normalize) {
                ds = woce::zscore_normalize(ds);
            }
            woce::ConstraintSet cs;
            if (!constraints_path.empty()) {
                cs = woce::read_constraints(constraints_path);
            }
            woce::WoceOptions opts;
            opts.k = k;
            opts.d = d;
            opts.ensemble_size = ensemble_size;
            opts.seed = seed;
            opts.weight_mode = woce::parse_weight_mode(weight_mode);
            opts.uniformity_mode = woce::parse_uniformity_mode(uniformity_mode);
            const auto result = woce::run_woce(ds.data, cs, opts);
            woce::write_labels(out_path, result.partition.labels());
            if (!diagnostics_dir.empty()) {
                write_diagnostics(diagnostics_dir, result);
            }
        } else if (*gen) {
            const auto ds = woce::load_csv(gen_data, woce::LabelColumn::parse(gen_label_col));
            woce::write_constraints(gen_out, woce::sample_constraints(ds, percent, gen_seed));
        } else if (*eval) {
            const auto pred_labels = woce::read_labels(pred_path);
            const auto truth = woce::read_labels(truth_path);
            const auto pred = woce::validate_partition(std::span<const int>(pred_labels), pred_labels.size());
            const auto truth_partition = woce::validate_partition(std::span<const int>(truth), truth.size());
            fmt::print("accuracy={:.6f} nmi={:.6f}\n", woce::accuracy_hungarian(pred, truth),
                       woce::nmi(pred, truth_partition));
        } else if (*bench) {
            const auto cfg = woce::load_config(config_path);
            const auto report = woce::run_benchmark(cfg);
            woce::print_report(std::cout, report);
            fs::path out = !bench_out.empty() ? fs::path(bench_out) : cfg.output;
            if (out.empty()) {
                out = fs::path(config_path).replace_extension(".report.csv");
            }
            woce::write_report_csv(out, report);
        } else if (*halfring) {
            woce::write_dataset_csv(synth_out, woce::gen_halfring(synth_n, noise, synth_seed));
        }
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
