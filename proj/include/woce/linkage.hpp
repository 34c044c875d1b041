#pragma once

#include <cstddef>
#include <vector>

#include "woce/core.hpp"

namespace woce {

enum class Linkage { single, average, complete, ward };

/// One agglomeration step. Clusters are named by their smallest member
/// index; after the merge the union is named `a` and `b` is retired.
struct Merge {
    std::size_t a = 0;
    std::size_t b = 0;
    double height = 0.0;
};

/// Merge history of an agglomerative run over n instances.
struct Dendrogram {
    std::size_t n = 0;
    std::vector<Merge> merges;
};

/**
 * Lance–Williams agglomeration over a full symmetric distance matrix.
 *
 * Ward expects (and updates) squared distances; the others use the matrix
 * as given. At each step the pair with the smallest distance is merged,
 * ties going to the lexicographically smallest (a, b). Stops after
 * `max_merges` merges (default: all n-1).
 */
Dendrogram agglomerate(const Matrix& distances, Linkage linkage, std::size_t max_merges = static_cast<std::size_t>(-1));

/// Apply the first n-k merges and return the resulting k clusters.
Partition cut_dendrogram(const Dendrogram& d, std::size_t k);

}  // namespace woce
