#pragma once

#include <cstdint>

#include "woce/dataset.hpp"

namespace woce {

/**
 * Draw pairwise constraints from ground-truth labels.
 *
 * round(percent * n / 100) instances, rounded down to an even count, are
 * drawn without replacement and split into disjoint pairs: half must-link
 * (same class), half cannot-link (different classes); with an odd pair count
 * the extra pair is a must-link. Each drawn instance is used exactly once.
 * percent == 0 gives an empty set. Throws InvalidInput when fewer than four
 * instances would be drawn or the labels lack a class, and NumericalError
 * when 100 draws fail to meet the quota.
 */
ConstraintSet sample_constraints(const LabeledDataset& ds, double percent, std::uint64_t seed);

/// Two interleaved half circles with Gaussian noise on the radius, n/2 points
/// each, labelled 0 and 1. Requires n even and n >= 4.
LabeledDataset gen_halfring(std::size_t n, double noise, std::uint64_t seed);

}  // namespace woce
