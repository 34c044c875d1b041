#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "woce/dataset.hpp"
#include "woce/diversity.hpp"

namespace woce {

enum class Method { woce, eac };

struct ExperimentConfig {
    std::filesystem::path dataset;
    std::string name;  ///< defaults to the dataset file stem
    LabelColumn label_col{LabelColumn::Kind::last, 0};
    int k = 2;
    int ensemble_size = 20;
    int d = 0;
    double percent = 0.0;  ///< share of instances used for constraints, [0, 5] in practice
    int runs = 10;
    std::uint64_t seed = 0;
    WeightMode weight_mode = WeightMode::minmax;
    UniformityMode uniformity_mode = UniformityMode::batch;
    std::vector<Method> methods{Method::woce, Method::eac};
    bool normalize = true;
    std::filesystem::path output;  ///< CSV report destination (CLI only)
};

struct MethodSummary {
    std::string dataset;
    Method method = Method::woce;
    std::vector<double> accuracies;  ///< per successful run
    std::vector<double> nmis;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  ///< population standard deviation over runs
    double mean_nmi = 0.0;
    double wall_seconds = 0.0;
    int failures = 0;
    std::vector<std::string> errors;
};

struct BenchmarkReport {
    std::vector<MethodSummary> rows;
};

std::string_view to_string(Method m);
std::string_view to_string(WeightMode m);
std::string_view to_string(UniformityMode m);
Method parse_method(std::string_view s);
WeightMode parse_weight_mode(std::string_view s);
UniformityMode parse_uniformity_mode(std::string_view s);

/// Parse `key = value` lines; `#` starts a comment. Unknown keys are an error.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/**
 * Run every configured method `runs` times on a labelled dataset. Run r uses
 * seed + r; constraints (when percent > 0) are sampled once per run and
 * shared by all methods. Methods share the reference set of a run and differ
 * only in the consensus weights. A failed run is recorded and skipped.
 */
BenchmarkReport run_benchmark(const LabeledDataset& ds, const ExperimentConfig& cfg);

/// Load cfg.dataset and run it.
BenchmarkReport run_benchmark(const ExperimentConfig& cfg);

void print_report(std::ostream& out, const BenchmarkReport& report);
void write_report_csv(const std::filesystem::path& path, const BenchmarkReport& report);

}  // namespace woce
