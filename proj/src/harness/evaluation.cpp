#include "woce/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace woce {

std::vector<std::size_t> max_weight_assignment(const Matrix& weights) {
    if (weights.rows() != weights.cols()) {
        throw InvalidInput(fmt::format("assignment needs a square matrix, got {}x{}", weights.rows(), weights.cols()));
    }
    const auto n = static_cast<std::size_t>(weights.rows());
    if (n == 0) {
        return {};
    }
    // Shortest augmenting path formulation on costs = -weights, 1-based with a
    // virtual column 0.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0);
    std::vector<double> v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0);  // match[col] = row
    std::vector<std::size_t> way(n + 1, 0);
    auto cost = [&](std::size_t r, std::size_t c) {
        return -weights(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c - 1));
    };
    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[col0] = 1;
            const std::size_t r0 = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t c = 1; c <= n; ++c) {
                if (used[c]) {
                    continue;
                }
                const double reduced = cost(r0, c) - u[r0] - v[c];
                if (reduced < minv[c]) {
                    minv[c] = reduced;
                    way[c] = col0;
                }
                if (minv[c] < delta) {
                    delta = minv[c];
                    col1 = c;
                }
            }
            for (std::size_t c = 0; c <= n; ++c) {
                if (used[c]) {
                    u[match[c]] += delta;
                    v[c] -= delta;
                } else {
                    minv[c] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }
    std::vector<std::size_t> assignment(n);
    for (std::size_t c = 1; c <= n; ++c) {
        assignment[match[c] - 1] = c - 1;
    }
    return assignment;
}

double accuracy_hungarian(const Partition& pred, std::span<const int> truth) {
    if (truth.size() != pred.size()) {
        throw InvalidInput(fmt::format("prediction has {} labels, truth has {}", pred.size(), truth.size()));
    }
    const Partition classes = validate_partition(truth, truth.size());
    const auto side = static_cast<Eigen::Index>(std::max(pred.num_clusters(), classes.num_clusters()));
    Matrix contingency = Matrix::Zero(side, side);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        contingency(pred[i], classes[i]) += 1.0;
    }
    const auto assignment = max_weight_assignment(contingency);
    double matched = 0.0;
    for (std::size_t r = 0; r < assignment.size(); ++r) {
        matched += contingency(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(assignment[r]));
    }
    return matched / static_cast<double>(pred.size());
}

double nmi(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) {
        throw InvalidInput(fmt::format("partitions cover {} and {} instances", a.size(), b.size()));
    }
    const auto n = static_cast<double>(a.size());
    Matrix joint = Matrix::Zero(a.num_clusters(), b.num_clusters());
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint(a[i], b[i]) += 1.0;
    }
    const Vector na = joint.rowwise().sum();
    const Vector nb = joint.colwise().sum().transpose();

    double numerator = 0.0;
    for (Eigen::Index r = 0; r < joint.rows(); ++r) {
        for (Eigen::Index c = 0; c < joint.cols(); ++c) {
            const double nab = joint(r, c);
            if (nab > 0.0) {
                numerator += nab * std::log(nab * n / (na(r) * nb(c)));
            }
        }
    }
    numerator *= -2.0;
    double denominator = 0.0;
    for (Eigen::Index r = 0; r < na.size(); ++r) {
        denominator += na(r) * std::log(na(r) / n);
    }
    for (Eigen::Index c = 0; c < nb.size(); ++c) {
        denominator += nb(c) * std::log(nb(c) / n);
    }
    if (denominator == 0.0) {
        // Only possible when both partitions are a single cluster.
        return 1.0;
    }
    return std::clamp(numerator / denominator, 0.0, 1.0);
}

}  // namespace woce
