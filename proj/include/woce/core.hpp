#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace woce {

/// Raised when an input violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine fails (non-convergence, degenerate data).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/**
 * Dense real data, one row per instance and one column per feature.
 *
 * Requires at least two instances and one feature, and every entry finite.
 * Immutable after construction.
 */
class DataMatrix {
public:
    explicit DataMatrix(Matrix values, std::vector<std::string> feature_names = {});

    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    [[nodiscard]] const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

private:
    Matrix values_;
    std::vector<std::string> feature_names_;
};

/**
 * Hard assignment of n instances to k non-empty clusters.
 *
 * Labels are canonical: consecutive integers 0..k-1 numbered by first
 * appearance. Construct through validate_partition().
 */
class Partition {
public:
    [[nodiscard]] const std::vector<int>& labels() const noexcept { return labels_; }
    [[nodiscard]] int num_clusters() const noexcept { return num_clusters_; }
    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] int operator[](std::size_t i) const { return labels_[i]; }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    friend Partition validate_partition(std::span<const int> labels, std::size_t n);
    Partition(std::vector<int> labels, int k) : labels_(std::move(labels)), num_clusters_(k) {}

    std::vector<int> labels_;
    int num_clusters_ = 0;
};

/// Canonicalize arbitrary integer labels by first appearance.
/// Throws InvalidInput when labels.size() != n.
Partition validate_partition(std::span<const int> labels, std::size_t n);

/// Overload for labels arriving as reals (CSV, numpy). Rejects non-finite or
/// non-integral values.
Partition validate_partition(std::span<const double> labels, std::size_t n);

/// Cluster cardinalities; element i counts label i.
std::vector<std::size_t> cluster_sizes(const Partition& p);

struct IndexPair {
    std::size_t first = 0;
    std::size_t second = 0;

    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Pairwise supervision: must-link and cannot-link instance pairs.
struct ConstraintSet {
    std::vector<IndexPair> must;
    std::vector<IndexPair> cannot;

    [[nodiscard]] bool empty() const noexcept { return must.empty() && cannot.empty(); }
    [[nodiscard]] std::size_t num_must() const noexcept { return must.size(); }
    [[nodiscard]] std::size_t num_cannot() const noexcept { return cannot.size(); }
};

/// Checks index range, i != j and that no unordered pair is in both lists.
void validate_constraints(const ConstraintSet& cs, std::size_t n);

/// Ordered ensemble of base partitions plus their (raw) uniformity scores.
struct ReferenceSet {
    std::vector<Partition> partitions;
    std::vector<double> uniformities;

    [[nodiscard]] std::size_t size() const noexcept { return partitions.size(); }
    /// Instance count shared by every partition; throws on an empty or ragged set.
    [[nodiscard]] std::size_t num_instances() const;
};

/// Consensus matrix; beta is the number of partitions each pair is seen in.
struct CoAssociationMatrix {
    Matrix entries;
    std::size_t beta = 0;
    /// Upper end of the entry range; linkage distances are max_weight - c(i,j).
    double max_weight = 1.0;
};

}  // namespace woce
