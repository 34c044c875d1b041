#pragma once

// Shared helpers for the centroid-based generators.

#include <cstdint>
#include <random>
#include <vector>

#include "woce/core.hpp"

namespace woce::detail {

using Rng = std::mt19937_64;

/// Throws unless 1 <= k <= n.
void check_cluster_count(int k, std::size_t n);

/// k-means++ seeding: first center uniform, the rest by squared-distance
/// sampling. When every remaining point coincides with a center, an unused
/// index is drawn uniformly instead.
Matrix kmeanspp_centers(const Matrix& x, int k, Rng& rng);

/// Squared Euclidean distances, n x k.
Matrix squared_distances(const Matrix& x, const Matrix& centers);

/// Index of the smallest entry per row; ties go to the lowest column.
std::vector<int> argmin_rows(const Matrix& d);

/// Index of the largest entry per row; ties go to the lowest column.
std::vector<int> argmax_rows(const Matrix& s);

/**
 * Give every empty cluster one point. The donor is chosen from clusters with
 * at least two members by maximal `score(i, c)` (ties: lowest index), where
 * c is the receiving cluster. Returns true if anything moved.
 */
template <typename Score>
bool fill_empty_clusters(std::vector<int>& labels, int k, Score&& score) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (int l : labels) {
        ++counts[static_cast<std::size_t>(l)];
    }
    bool moved = false;
    for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] != 0) {
            continue;
        }
        std::size_t donor = labels.size();
        double best = 0.0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (counts[static_cast<std::size_t>(labels[i])] < 2) {
                continue;
            }
            const double s = score(i, c);
            if (donor == labels.size() || s > best) {
                donor = i;
                best = s;
            }
        }
        if (donor == labels.size()) {
            break;  // fewer points than clusters; caller validated k <= n so unreachable
        }
        --counts[static_cast<std::size_t>(labels[donor])];
        labels[donor] = c;
        ++counts[static_cast<std::size_t>(c)];
        moved = true;
    }
    return moved;
}

/// Per-cluster means of x under labels; clusters without members keep `fallback` rows.
Matrix cluster_means(const Matrix& x, const std::vector<int>& labels, int k, const Matrix& fallback);

/// SplitMix64 step; used to derive independent seeds from one base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace woce::detail
