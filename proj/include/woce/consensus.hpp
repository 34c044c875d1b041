#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "woce/core.hpp"
#include "woce/diversity.hpp"
#include "woce/generators.hpp"
#include "woce/linkage.hpp"
#include "woce/preprocess.hpp"

namespace woce {

/// Weighted co-association: c(i, j) is the summed weight of the partitions
/// that co-cluster i and j, divided by the number of partitions.
CoAssociationMatrix weac_matrix(const ReferenceSet& e, const WeightVector& w);

/// Unweighted co-association (fraction of partitions co-clustering i and j).
CoAssociationMatrix eac_matrix(const ReferenceSet& e);

/// UPGMA over distances max_weight - c(i, j). Throws on a non-symmetric matrix.
Dendrogram average_linkage(const CoAssociationMatrix& pi);

struct WoceOptions {
    int k = 2;
    int d = 0;                 ///< leading mapped features to keep, 0 = all
    int ensemble_size = 20;
    std::uint64_t seed = 0;
    WeightMode weight_mode = WeightMode::minmax;
    UniformityMode uniformity_mode = UniformityMode::batch;
    GeneratorConfig generators;
};

struct WoceResult {
    Partition partition;
    ReferenceSet reference;
    CoAssociationMatrix coassociation;
    WeightVector weights;
    EnsembleSchedule schedule;
    std::vector<UniformityBreakdown> scores;
    std::optional<ProjectionResult> projection;
};

/// Consensus step alone: weights -> co-association -> average linkage -> cut at k.
Partition consensus_partition(const ReferenceSet& e, const WeightVector& w, int k);

/// The full pipeline: constraint projection, ensemble generation, uniformity
/// scoring, weighted co-association and the final dendrogram cut.
WoceResult run_woce(const DataMatrix& xhat, const ConstraintSet& cs, const WoceOptions& opts);

}  // namespace woce
