#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "woce/core.hpp"
#include "woce/linkage.hpp"

namespace woce {

enum class GeneratorKind { kmeans, fuzzy_cmeans, gmm, subtractive, agglomerative, spectral_sparse };

enum class Metric { euclidean, hamming, cosine };

/// One slot of the ensemble: which base clusterer runs, with what cluster
/// count and seed. `linkage`/`metric` are only read for agglomerative kinds.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::kmeans;
    Linkage linkage = Linkage::average;
    Metric metric = Metric::euclidean;
    int k = 2;
    std::uint64_t seed = 0;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct EnsembleSchedule {
    std::vector<GeneratorSpec> specs;
    int k_final = 2;
};

/// Number of distinct base-clusterer kinds in the bank.
inline constexpr std::size_t kNumGeneratorKinds = 17;

/// Human-readable name such as "kmeans" or "agglomerative-ward-cosine".
std::string generator_name(const GeneratorSpec& spec);

/// Iteration caps and tolerances of the base clusterers.
struct GeneratorConfig {
    int kmeans_max_iter = 300;
    double kmeans_tol = 1e-6;

    double fcm_fuzzifier = 2.0;
    int fcm_max_iter = 200;
    double fcm_tol = 1e-5;

    int gmm_max_iter = 100;
    double gmm_tol = 1e-6;
    double gmm_var_floor = 1e-6;

    double subtractive_radius = 0.5;
    double subtractive_squash = 1.5;

    int spectral_neighbors = 15;
};

/**
 * Lays out T slots: the 17 bank kinds once each in a fixed order, then
 * k-means / fuzzy c-means / spectral repeats in rotation. Cluster counts
 * cycle through [2, k_final + 2]. Seeds are derived from `seed` and the slot.
 */
EnsembleSchedule build_schedule(int k_final, int T, std::uint64_t seed);

Partition run_kmeans(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg = {});

Partition run_fuzzy_cmeans(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg = {});

struct GmmFit {
    Partition partition;
    std::vector<double> log_likelihoods;  ///< one entry per EM iteration
    bool reseeded = false;                ///< a component collapsed and was re-seeded
};

GmmFit fit_gmm(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg = {});

/// Diagonal Gaussian mixture fitted by EM; hard labels by responsibility.
Partition run_gmm(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg = {});

/// Mountain-potential clustering; deterministic, no seed.
Partition run_subtractive(const DataMatrix& z, int k, const GeneratorConfig& cfg = {});

/// Full pairwise distance matrix under the given metric.
Matrix pairwise_distances(const DataMatrix& z, Metric metric);

Partition run_agglomerative(const DataMatrix& z, int k, Linkage linkage, Metric metric);

Partition run_spectral_sparse(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg = {});

/// Dispatch one schedule slot.
Partition run_generator(const DataMatrix& z, const GeneratorSpec& spec, const GeneratorConfig& cfg = {});

/// Runs every slot in order. A slot that throws is replaced by a seeded
/// k-means run with the same cluster count, and a warning is logged.
ReferenceSet generate_reference_set(const DataMatrix& z, const EnsembleSchedule& schedule,
                                    const GeneratorConfig& cfg = {});

}  // namespace woce
