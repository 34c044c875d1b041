#pragma once

#include <optional>
#include <utility>

#include "woce/core.hpp"

namespace woce {

/// Eigenpairs of a symmetric matrix, columns of `vectors` ordered by
/// descending eigenvalue. Each eigenvector's largest-magnitude entry is
/// non-negative; equal eigenvalues keep the solver's column order.
struct EigenDecomposition {
    Matrix vectors;
    Vector values;
    Matrix source;
};

/// Result of the pairwise-constraint projection stage.
struct ProjectionResult {
    Matrix basis;          ///< m x p, columns are the retained eigenvectors
    Vector eigenvalues;    ///< all eigenvalues of S_C - gamma*S_M, descending
    double gamma = 0.0;
    Matrix cannot_scatter;
    Matrix must_scatter;
    double objective = 0.0;
    bool fallback = false;  ///< no positive eigenvalue; kept the largest direction
};

/// Subtract per-feature means.
DataMatrix center_data(const DataMatrix& xhat);

/// (1/n) X^T X for already-centered X.
Matrix covariance(const DataMatrix& x);

/// Symmetric eigendecomposition. Throws InvalidInput for non-finite or
/// non-symmetric input and NumericalError if the solver does not converge.
EigenDecomposition eigendecompose_sym(const Matrix& r);

/**
 * Decorrelating map: center, diagonalize the covariance and project onto its
 * eigenvectors sorted by variance. `d` keeps only the leading d directions;
 * d == 0 keeps all of them.
 */
DataMatrix map_independent(const DataMatrix& xhat, int d = 0);

/// Cannot-link and must-link scatter matrices, in that order.
/// Both constraint lists must be non-empty.
std::pair<Matrix, Matrix> scatter_matrices(const DataMatrix& y, const ConstraintSet& cs);

/// Ratio of mean squared cannot-link distance to mean squared must-link distance.
double estimate_gamma(const DataMatrix& y, const ConstraintSet& cs);

/// Constraint objective evaluated directly from pairwise distances.
double objective_pairwise(const Matrix& w, const DataMatrix& y, const ConstraintSet& cs, double gamma);

/// Constraint objective in trace form; cross-checked against
/// objective_pairwise and throws std::logic_error if they disagree.
double objective_value(const Matrix& w, const DataMatrix& y, const ConstraintSet& cs, double gamma);

struct ProjectedData {
    DataMatrix z;
    std::optional<ProjectionResult> projection;  ///< empty on the unsupervised path
};

/// Decorrelating map followed by projection onto directions that spread
/// cannot-linked pairs and contract must-linked pairs.
ProjectedData project_with_constraints(const DataMatrix& xhat, const ConstraintSet& cs, int d = 0);

/// Convenience wrapper returning only the transformed data.
DataMatrix constraint_projection(const DataMatrix& xhat, const ConstraintSet& cs, int d = 0);

}  // namespace woce
