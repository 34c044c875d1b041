// Agglomerative and spectral generators.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "detail.hpp"
#include "woce/generators.hpp"
#include "woce/preprocess.hpp"

namespace woce {

Matrix pairwise_distances(const DataMatrix& z, Metric metric) {
    const Matrix& x = z.values();
    const Eigen::Index n = x.rows();
    Matrix d = Matrix::Zero(n, n);
    switch (metric) {
    case Metric::euclidean:
        for (Eigen::Index i = 0; i < n; ++i) {
            d.col(i) = (x.rowwise() - x.row(i)).rowwise().norm();
        }
        break;
    case Metric::hamming: {
        // Sign bits of the z-scored features; zero-variance features give all ones.
        const Eigen::RowVectorXd mean = x.colwise().mean();
        const Matrix centered = x.rowwise() - mean;
        const Eigen::RowVectorXd sd = (centered.array().square().colwise().sum() / static_cast<double>(n)).sqrt().matrix();
        Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> bits(n, x.cols());
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const double v = sd(j) > 0.0 ? centered(i, j) / sd(j) : 0.0;
                bits(i, j) = v >= 0.0;
            }
        }
        const auto m = static_cast<double>(x.cols());
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index k = i + 1; k < n; ++k) {
                const double diff = static_cast<double>((bits.row(i) != bits.row(k)).count()) / m;
                d(i, k) = diff;
                d(k, i) = diff;
            }
        }
        break;
    }
    case Metric::cosine: {
        const Vector norms = x.rowwise().norm();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index k = i + 1; k < n; ++k) {
                double dist = 1.0;
                if (norms(i) > 0.0 && norms(k) > 0.0) {
                    dist = std::clamp(1.0 - x.row(i).dot(x.row(k)) / (norms(i) * norms(k)), 0.0, 2.0);
                }
                d(i, k) = dist;
                d(k, i) = dist;
            }
        }
        break;
    }
    }
    return d;
}

Partition run_agglomerative(const DataMatrix& z, int k, Linkage linkage, Metric metric) {
    detail::check_cluster_count(k, z.rows());
    Matrix d = pairwise_distances(z, metric);
    if (linkage == Linkage::ward) {
        d = d.array().square().matrix();
    }
    const std::size_t n = z.rows();
    const Dendrogram tree = agglomerate(d, linkage, n - static_cast<std::size_t>(k));
    return cut_dendrogram(tree, static_cast<std::size_t>(k));
}

Partition run_spectral_sparse(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg) {
    detail::check_cluster_count(k, z.rows());
    const Eigen::Index n = z.values().rows();
    const Matrix dist = pairwise_distances(z, Metric::euclidean);
    const Eigen::Index neighbors = std::min<Eigen::Index>(cfg.spectral_neighbors, n - 1);

    // Symmetric k-NN adjacency; ties in distance go to the lower index.
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> adjacent = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
    std::vector<double> knn_distances;
    knn_distances.reserve(static_cast<std::size_t>(n * neighbors));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        order.erase(order.begin() + i);
        std::partial_sort(order.begin(), order.begin() + neighbors, order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return dist(i, a) < dist(i, b) || (dist(i, a) == dist(i, b) && a < b);
        });
        for (Eigen::Index r = 0; r < neighbors; ++r) {
            const Eigen::Index j = order[static_cast<std::size_t>(r)];
            adjacent(i, j) = true;
            adjacent(j, i) = true;
            knn_distances.push_back(dist(i, j));
        }
        order.resize(static_cast<std::size_t>(n));
    }

    // Connected components by BFS.
    std::vector<int> component(static_cast<std::size_t>(n), -1);
    int components = 0;
    for (Eigen::Index s = 0; s < n; ++s) {
        if (component[static_cast<std::size_t>(s)] >= 0) {
            continue;
        }
        std::queue<Eigen::Index> frontier;
        frontier.push(s);
        component[static_cast<std::size_t>(s)] = components;
        while (!frontier.empty()) {
            const Eigen::Index u = frontier.front();
            frontier.pop();
            for (Eigen::Index v = 0; v < n; ++v) {
                if (adjacent(u, v) && component[static_cast<std::size_t>(v)] < 0) {
                    component[static_cast<std::size_t>(v)] = components;
                    frontier.push(v);
                }
            }
        }
        ++components;
    }
    if (components >= k) {
        return validate_partition(std::span<const int>(component), z.rows());
    }

    const auto mid = knn_distances.begin() + static_cast<std::ptrdiff_t>(knn_distances.size() / 2);
    std::nth_element(knn_distances.begin(), mid, knn_distances.end());
    double sigma = *mid;
    if (!(sigma > 0.0)) {
        sigma = 1.0;
    }

    Matrix affinity = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (adjacent(i, j)) {
                affinity(i, j) = std::exp(-dist(i, j) * dist(i, j) / (2.0 * sigma * sigma));
            }
        }
    }
    const Vector degree = affinity.rowwise().sum();
    Vector inv_sqrt(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        inv_sqrt(i) = degree(i) > 0.0 ? 1.0 / std::sqrt(degree(i)) : 0.0;
    }
    // Largest eigenvectors of D^-1/2 W D^-1/2 are the smallest of the normalized Laplacian.
    const Matrix normalized = inv_sqrt.asDiagonal() * affinity * inv_sqrt.asDiagonal();
    const EigenDecomposition eig = eigendecompose_sym(normalized);
    Matrix embedding = eig.vectors.leftCols(k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double norm = embedding.row(i).norm();
        if (norm > 0.0) {
            embedding.row(i) /= norm;
        }
    }
    return run_kmeans(DataMatrix(std::move(embedding)), k, seed, cfg);
}

}  // namespace woce
