#pragma once

#include <span>
#include <vector>

#include "woce/core.hpp"

namespace woce {

/// Maximum-weight perfect matching on a square matrix (Hungarian method).
/// Returns, for each row, the column it is assigned to.
std::vector<std::size_t> max_weight_assignment(const Matrix& weights);

/// Fraction of instances correctly classified after optimally matching
/// predicted clusters to true classes.
double accuracy_hungarian(const Partition& pred, std::span<const int> truth);

/// Normalized mutual information of two partitions; 1 when both are a single cluster.
double nmi(const Partition& a, const Partition& b);

}  // namespace woce
