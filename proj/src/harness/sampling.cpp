#include "woce/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include <fmt/format.h>

namespace woce {

namespace {

constexpr int kMaxAttempts = 100;

using ClassQueues = std::map<int, std::deque<std::size_t>>;

// Class with the most remaining instances, skipping `exclude`; ties go to the
// smaller class id.
ClassQueues::iterator fullest(ClassQueues& classes, ClassQueues::iterator exclude) {
    auto best = classes.end();
    for (auto it = classes.begin(); it != classes.end(); ++it) {
        if (it == exclude || it->second.empty()) {
            continue;
        }
        if (best == classes.end() || it->second.size() > best->second.size()) {
            best = it;
        }
    }
    return best;
}

std::size_t take(ClassQueues::iterator it) {
    const std::size_t i = it->second.front();
    it->second.pop_front();
    return i;
}

std::optional<ConstraintSet> try_pairing(std::span<const std::size_t> drawn, const std::vector<int>& labels,
                                         std::size_t num_must, std::size_t num_cannot) {
    ClassQueues classes;
    for (std::size_t i : drawn) {
        classes[labels[i]].push_back(i);
    }
    ConstraintSet cs;
    for (std::size_t p = 0; p < num_must; ++p) {
        auto it = fullest(classes, classes.end());
        if (it == classes.end() || it->second.size() < 2) {
            return std::nullopt;
        }
        const std::size_t a = take(it);
        cs.must.push_back({a, take(it)});
    }
    for (std::size_t p = 0; p < num_cannot; ++p) {
        auto first = fullest(classes, classes.end());
        if (first == classes.end()) {
            return std::nullopt;
        }
        auto second = fullest(classes, first);
        if (second == classes.end()) {
            return std::nullopt;
        }
        const std::size_t a = take(first);
        cs.cannot.push_back({a, take(second)});
    }
    return cs;
}

}  // namespace

ConstraintSet sample_constraints(const LabeledDataset& ds, double percent, std::uint64_t seed) {
    if (!ds.labels) {
        throw InvalidInput("constraint sampling needs ground-truth labels");
    }
    if (!(percent >= 0.0) || percent > 100.0) {
        throw InvalidInput(fmt::format("constraint percentage {} outside [0, 100]", percent));
    }
    const std::vector<int>& labels = *ds.labels;
    const std::size_t n = labels.size();
    auto count = static_cast<std::size_t>(std::llround(percent * static_cast<double>(n) / 100.0));
    count -= count % 2;
    if (percent == 0.0) {
        return {};
    }
    if (count < 4) {
        throw InvalidInput(fmt::format("{}% of {} instances gives {} constrained instances; need at least 4", percent, n,
                                       count));
    }
    const std::size_t pairs = count / 2;
    const std::size_t num_cannot = pairs / 2;
    const std::size_t num_must = pairs - num_cannot;

    const std::size_t num_classes = std::set<int>(labels.begin(), labels.end()).size();
    if (num_classes < 2) {
        throw InvalidInput("cannot-link constraints need at least two classes");
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        if (auto cs = try_pairing(std::span<const std::size_t>(order.data(), count), labels, num_must, num_cannot)) {
            return *cs;
        }
    }
    throw NumericalError(fmt::format("could not draw {} must-link and {} cannot-link pairs in {} attempts", num_must,
                                     num_cannot, kMaxAttempts));
}

LabeledDataset gen_halfring(std::size_t n, double noise, std::uint64_t seed) {
    if (n < 4 || n % 2 != 0) {
        throw InvalidInput(fmt::format("half-ring size must be even and at least 4, got {}", n));
    }
    if (!(noise >= 0.0)) {
        throw InvalidInput(fmt::format("noise must be non-negative, got {}", noise));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t half = n / 2;
    Matrix x(static_cast<Eigen::Index>(n), 2);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool lower = i >= half;
        const std::size_t j = lower ? i - half : i;
        const double t = std::numbers::pi * static_cast<double>(j) / static_cast<double>(half - 1);
        const double radius = 1.0 + (noise > 0.0 ? noise * gauss(rng) : 0.0);
        const auto row = static_cast<Eigen::Index>(i);
        if (!lower) {
            x(row, 0) = radius * std::cos(t);
            x(row, 1) = radius * std::sin(t);
        } else {
            x(row, 0) = 1.0 - radius * std::cos(t);
            x(row, 1) = 0.5 - radius * std::sin(t);
        }
        labels[i] = lower ? 1 : 0;
    }
    return {DataMatrix(std::move(x), {"x", "y"}), std::move(labels), "halfring"};
}

}  // namespace woce
