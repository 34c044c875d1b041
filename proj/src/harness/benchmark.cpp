#include "woce/benchmark.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/spdlog.h>

#include "woce/consensus.hpp"
#include "woce/evaluation.hpp"
#include "woce/sampling.hpp"

namespace woce {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    std::istringstream in{std::string(value)};
    if (!(in >> out) || !(in >> std::ws).eof()) {
        throw InvalidInput(fmt::format("config key '{}': cannot parse '{}'", key, value));
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw InvalidInput(fmt::format("config key '{}': expected a boolean, got '{}'", key, value));
}

void summarize(MethodSummary& s) {
    const auto runs = static_cast<double>(s.accuracies.size());
    if (s.accuracies.empty()) {
        return;
    }
    s.mean_accuracy = std::accumulate(s.accuracies.begin(), s.accuracies.end(), 0.0) / runs;
    s.mean_nmi = std::accumulate(s.nmis.begin(), s.nmis.end(), 0.0) / runs;
    double var = 0.0;
    for (double a : s.accuracies) {
        var += (a - s.mean_accuracy) * (a - s.mean_accuracy);
    }
    s.std_accuracy = std::sqrt(var / runs);
}

}  // namespace

std::string_view to_string(Method m) {
    return m == Method::woce ? "woce" : "eac";
}

std::string_view to_string(WeightMode m) {
    switch (m) {
    case WeightMode::minmax: return "minmax";
    case WeightMode::clamped: return "clamped";
    case WeightMode::raw: return "raw";
    case WeightMode::uniform: return "uniform";
    }
    return "?";
}

std::string_view to_string(UniformityMode m) {
    switch (m) {
    case UniformityMode::batch: return "batch";
    case UniformityMode::incremental: return "incremental";
    case UniformityMode::exclude_self: return "exclude-self";
    }
    return "?";
}

Method parse_method(std::string_view s) {
    if (s == "woce") {
        return Method::woce;
    }
    if (s == "eac") {
        return Method::eac;
    }
    throw InvalidInput(fmt::format("unknown method '{}'", s));
}

WeightMode parse_weight_mode(std::string_view s) {
    for (WeightMode m : {WeightMode::minmax, WeightMode::clamped, WeightMode::raw, WeightMode::uniform}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw InvalidInput(fmt::format("unknown weight mode '{}'", s));
}

UniformityMode parse_uniformity_mode(std::string_view s) {
    for (UniformityMode m : {UniformityMode::batch, UniformityMode::incremental, UniformityMode::exclude_self}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw InvalidInput(fmt::format("unknown uniformity mode '{}'", s));
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidInput(fmt::format("config line {}: expected key=value", line_no));
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "dataset") {
            cfg.dataset = std::string(value);
        } else if (key == "name") {
            cfg.name = std::string(value);
        } else if (key == "label_col") {
            cfg.label_col = LabelColumn::parse(value);
        } else if (key == "k") {
            cfg.k = parse_number<int>(key, value);
        } else if (key == "ensemble_size" || key == "T") {
            cfg.ensemble_size = parse_number<int>(key, value);
        } else if (key == "d") {
            cfg.d = parse_number<int>(key, value);
        } else if (key == "percent") {
            cfg.percent = parse_number<double>(key, value);
        } else if (key == "runs") {
            cfg.runs = parse_number<int>(key, value);
        } else if (key == "seed") {
            cfg.seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "weight_mode") {
            cfg.weight_mode = parse_weight_mode(value);
        } else if (key == "uniformity_mode") {
            cfg.uniformity_mode = parse_uniformity_mode(value);
        } else if (key == "methods") {
            cfg.methods.clear();
            std::string_view rest = value;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                cfg.methods.push_back(parse_method(trim(rest.substr(0, comma))));
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
        } else if (key == "normalize") {
            cfg.normalize = parse_bool(key, value);
        } else if (key == "output") {
            cfg.output = std::string(value);
        } else {
            throw InvalidInput(fmt::format("config line {}: unknown key '{}'", line_no, key));
        }
    }
    if (cfg.runs < 1) {
        throw InvalidInput("runs must be at least 1");
    }
    if (cfg.percent < 0.0) {
        throw InvalidInput("percent must be non-negative");
    }
    if (cfg.methods.empty()) {
        throw InvalidInput("no methods configured");
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(fmt::format("cannot open {}", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    ExperimentConfig cfg = parse_config(buf.str());
    // Relative dataset paths are resolved against the config's directory.
    if (!cfg.dataset.empty() && cfg.dataset.is_relative()) {
        cfg.dataset = path.parent_path() / cfg.dataset;
    }
    return cfg;
}

BenchmarkReport run_benchmark(const LabeledDataset& input, const ExperimentConfig& cfg) {
    if (!input.labels) {
        throw InvalidInput("benchmark dataset has no ground-truth labels");
    }
    if (cfg.runs < 1) {
        throw InvalidInput("runs must be at least 1");
    }
    const LabeledDataset ds = cfg.normalize ? zscore_normalize(input) : input;
    const std::string name = cfg.name.empty() ? ds.name : cfg.name;
    const Partition truth = validate_partition(std::span<const int>(*ds.labels), ds.data.rows());

    BenchmarkReport report;
    for (Method m : cfg.methods) {
        MethodSummary s;
        s.dataset = name;
        s.method = m;
        report.rows.push_back(std::move(s));
    }

    using Clock = std::chrono::steady_clock;
    auto seconds = [](Clock::duration d) { return std::chrono::duration<double>(d).count(); };

    for (int r = 0; r < cfg.runs; ++r) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
        try {
            const auto start = Clock::now();
            const ConstraintSet cs = cfg.percent > 0.0 ? sample_constraints(ds, cfg.percent, seed) : ConstraintSet{};
            WoceOptions opts;
            opts.k = cfg.k;
            opts.d = cfg.d;
            opts.ensemble_size = cfg.ensemble_size;
            opts.seed = seed;
            opts.weight_mode = cfg.weight_mode;
            opts.uniformity_mode = cfg.uniformity_mode;
            const WoceResult result = run_woce(ds.data, cs, opts);
            const double pipeline = seconds(Clock::now() - start);

            for (auto& row : report.rows) {
                const auto t0 = Clock::now();
                const Partition pred = row.method == Method::woce
                                           ? result.partition
                                           : consensus_partition(result.reference,
                                                                 weight_vector(result.reference, WeightMode::uniform), cfg.k);
                row.wall_seconds += pipeline + (row.method == Method::woce ? 0.0 : seconds(Clock::now() - t0));
                row.accuracies.push_back(accuracy_hungarian(pred, *ds.labels));
                row.nmis.push_back(nmi(pred, truth));
            }
        } catch (const std::exception& e) {
            spdlog::warn("{} run {} failed: {}", name, r, e.what());
            for (auto& row : report.rows) {
                ++row.failures;
                row.errors.emplace_back(e.what());
            }
        }
    }
    for (auto& row : report.rows) {
        summarize(row);
    }
    return report;
}

BenchmarkReport run_benchmark(const ExperimentConfig& cfg) {
    LabeledDataset ds = load_csv(cfg.dataset, cfg.label_col);
    return run_benchmark(ds, cfg);
}

void print_report(std::ostream& out, const BenchmarkReport& report) {
    fmt::print(out, "{:<16} {:<6} {:>5} {:>9} {:>8} {:>8} {:>10} {:>6}\n", "dataset", "method", "runs", "accuracy", "std",
               "nmi", "seconds", "failed");
    for (const auto& row : report.rows) {
        fmt::print(out, "{:<16} {:<6} {:>5} {:>9.4f} {:>8.4f} {:>8.4f} {:>10.3f} {:>6}\n", row.dataset, to_string(row.method),
                   row.accuracies.size(), row.mean_accuracy, row.std_accuracy, row.mean_nmi, row.wall_seconds,
                   row.failures);
    }
}

void write_report_csv(const std::filesystem::path& path, const BenchmarkReport& report) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError(fmt::format("cannot write {}", path.string()));
    }
    out << "dataset,method,runs,mean_accuracy,std_accuracy,mean_nmi,wall_seconds,failures\n";
    for (const auto& row : report.rows) {
        out << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{:.3f},{}\n", row.dataset, to_string(row.method),
                           row.accuracies.size(), row.mean_accuracy, row.std_accuracy, row.mean_nmi, row.wall_seconds,
                           row.failures);
    }
}

}  // namespace woce
