// k-means, fuzzy c-means and diagonal Gaussian mixtures.

#include <cmath>
#include <limits>

#include "detail.hpp"
#include "woce/generators.hpp"

namespace woce {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

}  // namespace

Partition run_kmeans(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg) {
    const Matrix& x = z.values();
    detail::check_cluster_count(k, z.rows());
    detail::Rng rng(seed);
    Matrix centers = detail::kmeanspp_centers(x, k, rng);

    auto assign = [&](std::vector<int>& labels) {
        const Matrix d = detail::squared_distances(x, centers);
        labels = detail::argmin_rows(d);
        // Empty cluster claims the point farthest from its current center.
        detail::fill_empty_clusters(labels, k, [&](std::size_t i, int) {
            return d(static_cast<Eigen::Index>(i), labels[i]);
        });
    };

    std::vector<int> labels;
    for (int iter = 0; iter < cfg.kmeans_max_iter; ++iter) {
        assign(labels);
        Matrix updated = detail::cluster_means(x, labels, k, centers);
        const double shift = (updated - centers).rowwise().norm().maxCoeff();
        centers = std::move(updated);
        if (shift < cfg.kmeans_tol) {
            break;
        }
    }
    assign(labels);
    return validate_partition(std::span<const int>(labels), z.rows());
}

Partition run_fuzzy_cmeans(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg) {
    const Matrix& x = z.values();
    const Eigen::Index n = x.rows();
    detail::check_cluster_count(k, z.rows());
    detail::Rng rng(seed);
    Matrix centers = detail::kmeanspp_centers(x, k, rng);
    const double exponent = 1.0 / (cfg.fcm_fuzzifier - 1.0);

    auto memberships = [&]() {
        const Matrix d = detail::squared_distances(x, centers);
        Matrix u = Matrix::Zero(n, k);
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::Index zero_at = -1;
            for (Eigen::Index c = 0; c < k; ++c) {
                if (d(i, c) == 0.0) {
                    zero_at = c;
                    break;
                }
            }
            if (zero_at >= 0) {
                u(i, zero_at) = 1.0;
                continue;
            }
            for (Eigen::Index c = 0; c < k; ++c) {
                double denom = 0.0;
                for (Eigen::Index l = 0; l < k; ++l) {
                    denom += std::pow(d(i, c) / d(i, l), exponent);
                }
                u(i, c) = 1.0 / denom;
            }
        }
        return u;
    };

    Matrix u = memberships();
    for (int iter = 0; iter < cfg.fcm_max_iter; ++iter) {
        const Matrix weights = u.array().pow(cfg.fcm_fuzzifier).matrix();
        for (Eigen::Index c = 0; c < k; ++c) {
            const double mass = weights.col(c).sum();
            if (mass > 0.0) {
                centers.row(c) = (weights.col(c).transpose() * x) / mass;
            }
        }
        Matrix next = memberships();
        const double change = (next - u).cwiseAbs().maxCoeff();
        u = std::move(next);
        if (change < cfg.fcm_tol) {
            break;
        }
    }

    std::vector<int> labels = detail::argmax_rows(u);
    detail::fill_empty_clusters(labels, k, [&](std::size_t i, int c) {
        return u(static_cast<Eigen::Index>(i), c);
    });
    return validate_partition(std::span<const int>(labels), z.rows());
}

GmmFit fit_gmm(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg) {
    const Matrix& x = z.values();
    const Eigen::Index n = x.rows();
    const Eigen::Index m = x.cols();
    detail::check_cluster_count(k, z.rows());
    detail::Rng rng(seed);

    Matrix means = detail::kmeanspp_centers(x, k, rng);
    const Eigen::RowVectorXd global_mean = x.colwise().mean();
    const Eigen::RowVectorXd global_var =
        ((x.rowwise() - global_mean).array().square().colwise().sum() / static_cast<double>(n))
            .max(cfg.gmm_var_floor)
            .matrix();
    Matrix vars = global_var.replicate(k, 1);
    Vector weights = Vector::Constant(k, 1.0 / static_cast<double>(k));

    Matrix resp(n, k);
    // E-step: fills resp and returns the total log-likelihood.
    auto expectation = [&]() {
        Matrix logp(n, k);
        for (Eigen::Index c = 0; c < k; ++c) {
            const double log_norm = std::log(weights(c)) -
                                    0.5 * (static_cast<double>(m) * kLogTwoPi + vars.row(c).array().log().sum());
            const Eigen::ArrayXXd diff = (x.rowwise() - means.row(c)).array();
            const Eigen::ArrayXXd scaled = diff.square().rowwise() / vars.row(c).array();
            logp.col(c) = (log_norm - 0.5 * scaled.rowwise().sum()).matrix();
        }
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double top = logp.row(i).maxCoeff();
            const double lse = top + std::log((logp.row(i).array() - top).exp().sum());
            resp.row(i) = (logp.row(i).array() - lse).exp().matrix();
            total += lse;
        }
        return total;
    };

    GmmFit fit{validate_partition(std::span<const int>(std::vector<int>(static_cast<std::size_t>(n), 0)), z.rows()), {}, false};
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    double previous = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < cfg.gmm_max_iter; ++iter) {
        const double ll = expectation();
        fit.log_likelihoods.push_back(ll);
        if (iter > 0 && std::abs(ll - previous) < cfg.gmm_tol * std::max(1.0, std::abs(ll))) {
            break;
        }
        previous = ll;

        // M-step
        const Vector mass = resp.colwise().sum().transpose();
        for (Eigen::Index c = 0; c < k; ++c) {
            if (mass(c) < 1e-10) {
                means.row(c) = x.row(pick(rng));
                vars.row(c) = global_var;
                weights(c) = 1.0 / static_cast<double>(n);
                fit.reseeded = true;
                continue;
            }
            means.row(c) = (resp.col(c).transpose() * x) / mass(c);
            const Eigen::ArrayXXd diff = (x.rowwise() - means.row(c)).array().square();
            vars.row(c) = ((diff.colwise() * resp.col(c).array()).colwise().sum() / mass(c)).max(cfg.gmm_var_floor).matrix();
            weights(c) = mass(c) / static_cast<double>(n);
        }
        weights /= weights.sum();
    }
    expectation();

    std::vector<int> labels = detail::argmax_rows(resp);
    detail::fill_empty_clusters(labels, k, [&](std::size_t i, int c) {
        return resp(static_cast<Eigen::Index>(i), c);
    });
    fit.partition = validate_partition(std::span<const int>(labels), z.rows());
    return fit;
}

Partition run_gmm(const DataMatrix& z, int k, std::uint64_t seed, const GeneratorConfig& cfg) {
    return fit_gmm(z, k, seed, cfg).partition;
}

}  // namespace woce
