#include <cmath>
#include <set>

#include <fmt/format.h>

#include "detail.hpp"
#include "woce/generators.hpp"

namespace woce {

Partition run_subtractive(const DataMatrix& z, int k, const GeneratorConfig& cfg) {
    detail::check_cluster_count(k, z.rows());

    // Rescale every feature to [0, 1]; constant features collapse to 0.
    Matrix x = z.values();
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double lo = x.col(j).minCoeff();
        const double span = x.col(j).maxCoeff() - lo;
        x.col(j) = span > 0.0 ? Vector((x.col(j).array() - lo) / span) : Vector::Zero(x.rows());
    }
    const Eigen::Index n = x.rows();

    std::set<std::vector<double>> distinct;
    for (Eigen::Index i = 0; i < n; ++i) {
        std::vector<double> row(static_cast<std::size_t>(x.cols()));
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            row[static_cast<std::size_t>(j)] = x(i, j);
        }
        distinct.insert(std::move(row));
    }
    if (distinct.size() < static_cast<std::size_t>(k)) {
        throw InvalidInput(fmt::format("subtractive clustering needs {} distinct points, data has {}", k, distinct.size()));
    }

    const double radius = cfg.subtractive_radius;
    const double alpha = 4.0 / (radius * radius);
    const double squash = cfg.subtractive_squash * radius;
    const double beta = 4.0 / (squash * squash);

    Matrix sq(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        sq.col(i) = (x.rowwise() - x.row(i)).rowwise().squaredNorm();
    }
    Vector potential = (-alpha * sq.array()).exp().rowwise().sum().matrix();

    std::vector<Eigen::Index> centers;
    std::vector<char> blocked(static_cast<std::size_t>(n), 0);
    while (centers.size() < static_cast<std::size_t>(k)) {
        Eigen::Index best = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!blocked[static_cast<std::size_t>(i)] && (best < 0 || potential(i) > potential(best))) {
                best = i;
            }
        }
        centers.push_back(best);
        const double peak = potential(best);
        potential -= (peak * (-beta * sq.col(best).array()).exp()).matrix();
        // Points coinciding with a chosen center cannot become another center.
        for (Eigen::Index i = 0; i < n; ++i) {
            if (sq(i, best) == 0.0) {
                blocked[static_cast<std::size_t>(i)] = 1;
            }
        }
    }

    Matrix d(n, k);
    for (int c = 0; c < k; ++c) {
        d.col(c) = sq.col(centers[static_cast<std::size_t>(c)]);
    }
    const std::vector<int> labels = detail::argmin_rows(d);
    return validate_partition(std::span<const int>(labels), z.rows());
}

}  // namespace woce
