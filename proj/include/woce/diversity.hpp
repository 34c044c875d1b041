#pragma once

#include <vector>

#include "woce/core.hpp"

namespace woce {

/// Terms of the Uniformity score for one partition.
struct UniformityBreakdown {
    double eta = 0.0;    ///< max_i n_i log(n / n_i), >= 0
    double xi = 0.0;     ///< max_i n_i log(n_i / n), <= 0
    double theta = 0.0;  ///< xi-style maximum over every cluster of the reference set, <= 0
    double raw = 0.0;    ///< 1 - (-2 eta) / (xi + theta); may leave [0, 1]
    double final = 0.0;  ///< raw clipped to [0, 1]
};

enum class WeightMode { minmax, clamped, raw, uniform };

/// How each partition is scored against the ensemble.
enum class UniformityMode {
    batch,        ///< against the full reference set, itself included
    incremental,  ///< against the partitions that precede it; the first scores 1
    exclude_self  ///< against the full reference set minus itself
};

struct WeightVector {
    std::vector<double> weights;
    WeightMode mode = WeightMode::minmax;
};

double eta(const Partition& p);
double xi(const Partition& p);

/// Throws InvalidInput on an empty reference set or mismatched instance counts.
double theta(const Partition& p, const ReferenceSet& e);

/// Score P against E. When xi + theta == 0 the ratio is undefined and raw is
/// 1 if eta == 0, else 0.
UniformityBreakdown uniformity(const Partition& p, const ReferenceSet& e);

/// Raw uniformity of every partition of E under the chosen mode.
std::vector<UniformityBreakdown> score_reference_set(const ReferenceSet& e, UniformityMode mode = UniformityMode::batch);

/// Fill e.uniformities with raw scores.
void assign_uniformities(ReferenceSet& e, UniformityMode mode = UniformityMode::batch);

/// Turn the raw uniformities stored in E into consensus weights.
/// minmax rescales to [0, 1] (all-equal maps to 1), clamped clips, raw passes
/// through and uniform gives all ones.
WeightVector weight_vector(const ReferenceSet& e, WeightMode mode = WeightMode::minmax);

}  // namespace woce
