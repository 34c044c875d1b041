#pragma once

#include <random>
#include <vector>

#include "woce/core.hpp"

namespace testutil {

inline woce::Partition part(std::vector<int> labels) {
    return woce::validate_partition(std::span<const int>(labels), labels.size());
}

inline woce::Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> g;
    woce::Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = g(rng);
        }
    }
    return m;
}

// Two tight Gaussian clouds far apart; the first half of the rows is blob 0.
inline woce::DataMatrix two_blobs(int n, std::uint64_t seed, double gap = 20.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 0.5);
    woce::Matrix m(n, 2);
    for (int i = 0; i < n; ++i) {
        const double c = i < n / 2 ? 0.0 : gap;
        m(i, 0) = c + g(rng);
        m(i, 1) = c + g(rng);
    }
    return woce::DataMatrix(m);
}

inline std::vector<int> two_blob_truth(int n) {
    std::vector<int> t(n, 0);
    for (int i = n / 2; i < n; ++i) {
        t[i] = 1;
    }
    return t;
}

}  // namespace testutil
