#include "woce/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

namespace woce {

DataMatrix::DataMatrix(Matrix values, std::vector<std::string> feature_names)
    : values_(std::move(values)), feature_names_(std::move(feature_names)) {
    if (values_.rows() < 2) {
        throw InvalidInput(fmt::format("data matrix needs at least 2 instances, got {}", values_.rows()));
    }
    if (values_.cols() < 1) {
        throw InvalidInput("data matrix needs at least 1 feature");
    }
    if (!values_.allFinite()) {
        throw InvalidInput("data matrix contains NaN or Inf");
    }
    if (!feature_names_.empty() && feature_names_.size() != cols()) {
        throw InvalidInput(fmt::format("{} feature names for {} columns", feature_names_.size(), cols()));
    }
}

Partition validate_partition(std::span<const int> labels, std::size_t n) {
    if (labels.size() != n) {
        throw InvalidInput(fmt::format("label vector has length {}, expected {}", labels.size(), n));
    }
    std::unordered_map<int, int> renumber;
    std::vector<int> out;
    out.reserve(n);
    for (int label : labels) {
        auto [it, inserted] = renumber.try_emplace(label, static_cast<int>(renumber.size()));
        out.push_back(it->second);
    }
    const int k = static_cast<int>(renumber.size());
    return Partition(std::move(out), k);
}

Partition validate_partition(std::span<const double> labels, std::size_t n) {
    std::vector<int> ints;
    ints.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double v = labels[i];
        if (!std::isfinite(v)) {
            throw InvalidInput(fmt::format("label at index {} is not finite", i));
        }
        if (v != std::floor(v) || std::abs(v) > 2e9) {
            throw InvalidInput(fmt::format("label at index {} is not an integer: {}", i, v));
        }
        ints.push_back(static_cast<int>(v));
    }
    return validate_partition(std::span<const int>(ints), n);
}

std::vector<std::size_t> cluster_sizes(const Partition& p) {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(p.num_clusters()), 0);
    for (int label : p.labels()) {
        ++sizes[static_cast<std::size_t>(label)];
    }
    return sizes;
}

void validate_constraints(const ConstraintSet& cs, std::size_t n) {
    std::set<std::pair<std::size_t, std::size_t>> must_keys;
    auto check = [n](const IndexPair& p, const char* kind) {
        if (p.first >= n || p.second >= n) {
            throw InvalidInput(fmt::format("{} pair ({}, {}) out of range for {} instances", kind, p.first, p.second, n));
        }
        if (p.first == p.second) {
            throw InvalidInput(fmt::format("{} pair ({}, {}) links an instance to itself", kind, p.first, p.second));
        }
    };
    for (const auto& p : cs.must) {
        check(p, "must-link");
        must_keys.emplace(std::min(p.first, p.second), std::max(p.first, p.second));
    }
    for (const auto& p : cs.cannot) {
        check(p, "cannot-link");
        if (must_keys.contains({std::min(p.first, p.second), std::max(p.first, p.second)})) {
            throw InvalidInput(fmt::format("pair ({}, {}) is both must-link and cannot-link", p.first, p.second));
        }
    }
}

std::size_t ReferenceSet::num_instances() const {
    if (partitions.empty()) {
        throw InvalidInput("reference set is empty");
    }
    const std::size_t n = partitions.front().size();
    for (const auto& p : partitions) {
        if (p.size() != n) {
            throw InvalidInput(fmt::format("reference set mixes partitions over {} and {} instances", n, p.size()));
        }
    }
    return n;
}

}  // namespace woce
