#include <array>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "detail.hpp"
#include "woce/generators.hpp"

namespace woce {

namespace {

constexpr std::array<Linkage, 4> kLinkages{Linkage::single, Linkage::average, Linkage::complete, Linkage::ward};
constexpr std::array<Metric, 3> kMetrics{Metric::euclidean, Metric::hamming, Metric::cosine};

std::vector<GeneratorSpec> bank() {
    std::vector<GeneratorSpec> kinds;
    kinds.push_back({GeneratorKind::kmeans});
    kinds.push_back({GeneratorKind::fuzzy_cmeans});
    kinds.push_back({GeneratorKind::gmm});
    kinds.push_back({GeneratorKind::subtractive});
    for (Linkage l : kLinkages) {
        for (Metric m : kMetrics) {
            kinds.push_back({GeneratorKind::agglomerative, l, m});
        }
    }
    kinds.push_back({GeneratorKind::spectral_sparse});
    return kinds;
}

const char* linkage_name(Linkage l) {
    switch (l) {
    case Linkage::single: return "single";
    case Linkage::average: return "average";
    case Linkage::complete: return "complete";
    case Linkage::ward: return "ward";
    }
    return "?";
}

const char* metric_name(Metric m) {
    switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::hamming: return "hamming";
    case Metric::cosine: return "cosine";
    }
    return "?";
}

}  // namespace

std::string generator_name(const GeneratorSpec& spec) {
    switch (spec.kind) {
    case GeneratorKind::kmeans: return "kmeans";
    case GeneratorKind::fuzzy_cmeans: return "fuzzy-cmeans";
    case GeneratorKind::gmm: return "gmm";
    case GeneratorKind::subtractive: return "subtractive";
    case GeneratorKind::spectral_sparse: return "spectral-sparse";
    case GeneratorKind::agglomerative:
        return fmt::format("agglomerative-{}-{}", linkage_name(spec.linkage), metric_name(spec.metric));
    }
    return "?";
}

EnsembleSchedule build_schedule(int k_final, int T, std::uint64_t seed) {
    if (k_final < 2) {
        throw InvalidInput(fmt::format("final cluster count must be at least 2, got {}", k_final));
    }
    if (T < 1) {
        throw InvalidInput(fmt::format("ensemble size must be at least 1, got {}", T));
    }
    static const std::vector<GeneratorSpec> kinds = bank();
    static const std::array<GeneratorKind, 3> repeats{GeneratorKind::kmeans, GeneratorKind::fuzzy_cmeans,
                                                       GeneratorKind::spectral_sparse};
    EnsembleSchedule schedule;
    schedule.k_final = k_final;
    schedule.specs.reserve(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        const auto slot = static_cast<std::size_t>(t);
        GeneratorSpec spec = slot < kinds.size() ? kinds[slot] : GeneratorSpec{repeats[(slot - kinds.size()) % repeats.size()]};
        spec.k = 2 + t % (k_final + 1);
        spec.seed = detail::mix_seed(seed, slot);
        schedule.specs.push_back(spec);
    }
    return schedule;
}

Partition run_generator(const DataMatrix& z, const GeneratorSpec& spec, const GeneratorConfig& cfg) {
    switch (spec.kind) {
    case GeneratorKind::kmeans: return run_kmeans(z, spec.k, spec.seed, cfg);
    case GeneratorKind::fuzzy_cmeans: return run_fuzzy_cmeans(z, spec.k, spec.seed, cfg);
    case GeneratorKind::gmm: return run_gmm(z, spec.k, spec.seed, cfg);
    case GeneratorKind::subtractive: return run_subtractive(z, spec.k, cfg);
    case GeneratorKind::agglomerative: return run_agglomerative(z, spec.k, spec.linkage, spec.metric);
    case GeneratorKind::spectral_sparse: return run_spectral_sparse(z, spec.k, spec.seed, cfg);
    }
    throw InvalidInput("unknown generator kind");
}

ReferenceSet generate_reference_set(const DataMatrix& z, const EnsembleSchedule& schedule, const GeneratorConfig& cfg) {
    ReferenceSet out;
    out.partitions.reserve(schedule.specs.size());
    for (std::size_t t = 0; t < schedule.specs.size(); ++t) {
        const GeneratorSpec& spec = schedule.specs[t];
        try {
            out.partitions.push_back(run_generator(z, spec, cfg));
        } catch (const std::exception& e) {
            const int k = std::min(spec.k, static_cast<int>(z.rows()));
            spdlog::warn("slot {} ({}, k={}) failed: {}; substituting k-means with k={}", t, generator_name(spec), spec.k,
                         e.what(), k);
            out.partitions.push_back(run_kmeans(z, k, spec.seed, cfg));
        }
    }
    return out;
}

}  // namespace woce
