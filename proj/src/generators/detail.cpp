#include "detail.hpp"

#include <fmt/format.h>

namespace woce::detail {

void check_cluster_count(int k, std::size_t n) {
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw InvalidInput(fmt::format("cluster count {} outside [1, {}]", k, n));
    }
}

Matrix kmeanspp_centers(const Matrix& x, int k, Rng& rng) {
    const Eigen::Index n = x.rows();
    Matrix centers(k, x.cols());
    std::vector<char> used(static_cast<std::size_t>(n), 0);

    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    Eigen::Index first = pick(rng);
    centers.row(0) = x.row(first);
    used[static_cast<std::size_t>(first)] = 1;

    Vector nearest = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 1; c < k; ++c) {
        const double total = nearest.sum();
        Eigen::Index chosen = -1;
        if (total > 0.0) {
            double target = unit(rng) * total;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (nearest(i) <= 0.0) {
                    continue;
                }
                chosen = i;
                target -= nearest(i);
                if (target <= 0.0) {
                    break;
                }
            }
        } else {
            std::vector<Eigen::Index> free;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!used[static_cast<std::size_t>(i)]) {
                    free.push_back(i);
                }
            }
            std::uniform_int_distribution<std::size_t> pick_free(0, free.size() - 1);
            chosen = free[pick_free(rng)];
        }
        used[static_cast<std::size_t>(chosen)] = 1;
        centers.row(c) = x.row(chosen);
        nearest = nearest.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }
    return centers;
}

Matrix squared_distances(const Matrix& x, const Matrix& centers) {
    Matrix d(x.rows(), centers.rows());
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
        d.col(c) = (x.rowwise() - centers.row(c)).rowwise().squaredNorm();
    }
    return d;
}

std::vector<int> argmin_rows(const Matrix& d) {
    std::vector<int> out(static_cast<std::size_t>(d.rows()));
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index c = 1; c < d.cols(); ++c) {
            if (d(i, c) < d(i, best)) {
                best = c;
            }
        }
        out[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return out;
}

std::vector<int> argmax_rows(const Matrix& s) {
    std::vector<int> out(static_cast<std::size_t>(s.rows()));
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index c = 1; c < s.cols(); ++c) {
            if (s(i, c) > s(i, best)) {
                best = c;
            }
        }
        out[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return out;
}

Matrix cluster_means(const Matrix& x, const std::vector<int>& labels, int k, const Matrix& fallback) {
    Matrix sums = Matrix::Zero(k, x.cols());
    std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        sums.row(labels[i]) += x.row(static_cast<Eigen::Index>(i));
        counts[static_cast<std::size_t>(labels[i])] += 1.0;
    }
    for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0.0) {
            sums.row(c) /= counts[static_cast<std::size_t>(c)];
        } else {
            sums.row(c) = fallback.row(c);
        }
    }
    return sums;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace woce::detail
