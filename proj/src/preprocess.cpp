#include "woce/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace woce {

namespace {

constexpr double kSymmetryTolerance = 1e-10;
constexpr double kPositiveEigenvalue = 1e-10;
constexpr double kObjectiveTolerance = 1e-8;

// Scatter of pair differences scaled by 1/(2|pairs|); zero when pairs is empty.
Matrix pair_scatter(const Matrix& y, const std::vector<IndexPair>& pairs) {
    const Eigen::Index m = y.cols();
    Matrix s = Matrix::Zero(m, m);
    if (pairs.empty()) {
        return s;
    }
    for (const auto& p : pairs) {
        const Vector diff = (y.row(static_cast<Eigen::Index>(p.first)) - y.row(static_cast<Eigen::Index>(p.second))).transpose();
        s.noalias() += diff * diff.transpose();
    }
    return s / (2.0 * static_cast<double>(pairs.size()));
}

double mean_squared_distance(const Matrix& y, const std::vector<IndexPair>& pairs) {
    double total = 0.0;
    for (const auto& p : pairs) {
        total += (y.row(static_cast<Eigen::Index>(p.first)) - y.row(static_cast<Eigen::Index>(p.second))).squaredNorm();
    }
    return total / static_cast<double>(pairs.size());
}

void require_both_lists(const ConstraintSet& cs) {
    if (cs.must.empty() || cs.cannot.empty()) {
        throw InvalidInput(fmt::format("constraint projection needs both must-links and cannot-links (got {} and {})",
                                       cs.num_must(), cs.num_cannot()));
    }
}

}  // namespace

DataMatrix center_data(const DataMatrix& xhat) {
    const Eigen::RowVectorXd mean = xhat.values().colwise().mean();
    return DataMatrix(xhat.values().rowwise() - mean, xhat.feature_names());
}

Matrix covariance(const DataMatrix& x) {
    const Matrix& v = x.values();
    Matrix r = (v.transpose() * v) / static_cast<double>(v.rows());
    // Make the result exactly symmetric regardless of product blocking.
    return 0.5 * (r + r.transpose());
}

EigenDecomposition eigendecompose_sym(const Matrix& r) {
    if (r.rows() != r.cols() || r.rows() == 0) {
        throw InvalidInput(fmt::format("eigendecomposition needs a non-empty square matrix, got {}x{}", r.rows(), r.cols()));
    }
    if (!r.allFinite()) {
        throw InvalidInput("eigendecomposition input contains NaN or Inf");
    }
    const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
    const double asym = (r - r.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTolerance * scale) {
        throw InvalidInput(fmt::format("matrix is not symmetric (max |r - r^T| = {:g})", asym));
    }
    const Matrix sym = 0.5 * (r + r.transpose());

    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symmetric eigensolver did not converge");
    }

    const Eigen::Index m = sym.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const Vector& ascending = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return ascending(a) > ascending(b); });

    EigenDecomposition out;
    out.vectors.resize(m, m);
    out.values.resize(m);
    out.source = sym;
    for (Eigen::Index c = 0; c < m; ++c) {
        const Eigen::Index src = order[static_cast<std::size_t>(c)];
        Vector q = solver.eigenvectors().col(src);
        // Sign convention: first entry of (near-)maximal magnitude is non-negative.
        const double biggest = q.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < m; ++i) {
            if (std::abs(q(i)) >= biggest * (1.0 - 1e-12)) {
                if (q(i) < 0.0) {
                    q = -q;
                }
                break;
            }
        }
        out.vectors.col(c) = q;
        out.values(c) = ascending(src);
    }
    return out;
}

DataMatrix map_independent(const DataMatrix& xhat, int d) {
    const auto m = static_cast<int>(xhat.cols());
    if (d < 0 || d > m) {
        throw InvalidInput(fmt::format("feature count d={} outside [0, {}]", d, m));
    }
    const DataMatrix x = center_data(xhat);
    const EigenDecomposition eig = eigendecompose_sym(covariance(x));
    const int keep = d == 0 ? m : d;
    return DataMatrix(x.values() * eig.vectors.leftCols(keep));
}

std::pair<Matrix, Matrix> scatter_matrices(const DataMatrix& y, const ConstraintSet& cs) {
    require_both_lists(cs);
    validate_constraints(cs, y.rows());
    return {pair_scatter(y.values(), cs.cannot), pair_scatter(y.values(), cs.must)};
}

double estimate_gamma(const DataMatrix& y, const ConstraintSet& cs) {
    require_both_lists(cs);
    validate_constraints(cs, y.rows());
    const double must = mean_squared_distance(y.values(), cs.must);
    if (must <= 0.0) {
        throw NumericalError("every must-link pair has zero distance; gamma is undefined");
    }
    return mean_squared_distance(y.values(), cs.cannot) / must;
}

double objective_pairwise(const Matrix& w, const DataMatrix& y, const ConstraintSet& cs, double gamma) {
    const Matrix z = y.values() * w;
    auto term = [&z](const std::vector<IndexPair>& pairs) {
        if (pairs.empty()) {
            return 0.0;
        }
        double total = 0.0;
        for (const auto& p : pairs) {
            total += (z.row(static_cast<Eigen::Index>(p.first)) - z.row(static_cast<Eigen::Index>(p.second))).squaredNorm();
        }
        return total / (2.0 * static_cast<double>(pairs.size()));
    };
    return term(cs.cannot) - gamma * term(cs.must);
}

double objective_value(const Matrix& w, const DataMatrix& y, const ConstraintSet& cs, double gamma) {
    if (w.cols() < 1 || w.rows() != static_cast<Eigen::Index>(y.cols())) {
        throw InvalidInput(fmt::format("projection matrix is {}x{}, data has {} features", w.rows(), w.cols(), y.cols()));
    }
    validate_constraints(cs, y.rows());
    const Matrix a = pair_scatter(y.values(), cs.cannot) - gamma * pair_scatter(y.values(), cs.must);
    const double trace_form = (w.transpose() * a * w).trace();
    const double pairwise = objective_pairwise(w, y, cs, gamma);
    const double scale = std::max({1.0, std::abs(trace_form), std::abs(pairwise)});
    if (std::abs(trace_form - pairwise) > kObjectiveTolerance * scale) {
        throw std::logic_error(fmt::format("objective forms disagree: trace {} vs pairwise {}", trace_form, pairwise));
    }
    return trace_form;
}

ProjectedData project_with_constraints(const DataMatrix& xhat, const ConstraintSet& cs, int d) {
    DataMatrix y = map_independent(xhat, d);
    if (cs.empty()) {
        return {std::move(y), std::nullopt};
    }
    validate_constraints(cs, y.rows());
    require_both_lists(cs);

    ProjectionResult proj;
    std::tie(proj.cannot_scatter, proj.must_scatter) = scatter_matrices(y, cs);
    proj.gamma = estimate_gamma(y, cs);
    const EigenDecomposition eig = eigendecompose_sym(proj.cannot_scatter - proj.gamma * proj.must_scatter);
    proj.eigenvalues = eig.values;

    Eigen::Index keep = 0;
    while (keep < eig.values.size() && eig.values(keep) > kPositiveEigenvalue) {
        ++keep;
    }
    if (keep == 0) {
        spdlog::warn("constraint projection: no positive eigenvalue (largest {:g}); keeping the leading direction",
                     eig.values(0));
        proj.fallback = true;
        keep = 1;
    }
    proj.basis = eig.vectors.leftCols(keep);
    proj.objective = objective_value(proj.basis, y, cs, proj.gamma);

    DataMatrix z(y.values() * proj.basis);
    return {std::move(z), std::move(proj)};
}

DataMatrix constraint_projection(const DataMatrix& xhat, const ConstraintSet& cs, int d) {
    return project_with_constraints(xhat, cs, d).z;
}

}  // namespace woce
