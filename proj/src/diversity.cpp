#include "woce/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace woce {

namespace {

// max over clusters of n_i log(n_i / n); zero only for a single cluster.
double max_cluster_term(const Partition& p) {
    const auto n = static_cast<double>(p.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t size : cluster_sizes(p)) {
        const auto ni = static_cast<double>(size);
        best = std::max(best, ni * std::log(ni / n));
    }
    return best;
}

double theta_over(const Partition& p, const std::vector<const Partition*>& members) {
    if (members.empty()) {
        throw InvalidInput("uniformity needs a non-empty reference set");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const Partition* q : members) {
        if (q->size() != p.size()) {
            throw InvalidInput(fmt::format("reference partition covers {} instances, expected {}", q->size(), p.size()));
        }
        best = std::max(best, max_cluster_term(*q));
    }
    return best;
}

UniformityBreakdown breakdown(const Partition& p, double theta_value) {
    UniformityBreakdown u;
    u.eta = eta(p);
    u.xi = xi(p);
    u.theta = theta_value;
    const double denom = u.xi + u.theta;
    if (denom == 0.0) {
        u.raw = u.eta == 0.0 ? 1.0 : 0.0;
    } else {
        u.raw = 1.0 - (-2.0 * u.eta) / denom;
    }
    u.final = std::clamp(u.raw, 0.0, 1.0);
    return u;
}

}  // namespace

double eta(const Partition& p) {
    const auto n = static_cast<double>(p.size());
    double best = 0.0;
    for (std::size_t size : cluster_sizes(p)) {
        const auto ni = static_cast<double>(size);
        best = std::max(best, ni * std::log(n / ni));
    }
    return best;
}

double xi(const Partition& p) { return max_cluster_term(p); }

double theta(const Partition& p, const ReferenceSet& e) {
    std::vector<const Partition*> members;
    for (const auto& q : e.partitions) {
        members.push_back(&q);
    }
    return theta_over(p, members);
}

UniformityBreakdown uniformity(const Partition& p, const ReferenceSet& e) {
    return breakdown(p, theta(p, e));
}

std::vector<UniformityBreakdown> score_reference_set(const ReferenceSet& e, UniformityMode mode) {
    (void)e.num_instances();  // rejects empty or ragged sets
    std::vector<UniformityBreakdown> out;
    out.reserve(e.size());
    for (std::size_t t = 0; t < e.size(); ++t) {
        const Partition& p = e.partitions[t];
        std::vector<const Partition*> members;
        for (std::size_t s = 0; s < e.size(); ++s) {
            const bool include = mode == UniformityMode::batch || (mode == UniformityMode::incremental && s < t) ||
                                 (mode == UniformityMode::exclude_self && s != t);
            if (include) {
                members.push_back(&e.partitions[s]);
            }
        }
        if (members.empty()) {
            // Nothing to compare against yet.
            UniformityBreakdown first;
            first.eta = eta(p);
            first.xi = xi(p);
            first.raw = 1.0;
            first.final = 1.0;
            out.push_back(first);
            continue;
        }
        out.push_back(breakdown(p, theta_over(p, members)));
    }
    return out;
}

void assign_uniformities(ReferenceSet& e, UniformityMode mode) {
    const auto scores = score_reference_set(e, mode);
    e.uniformities.clear();
    for (const auto& s : scores) {
        e.uniformities.push_back(s.raw);
    }
}

WeightVector weight_vector(const ReferenceSet& e, WeightMode mode) {
    WeightVector w;
    w.mode = mode;
    const std::size_t T = e.size();
    if (mode == WeightMode::uniform) {
        w.weights.assign(T, 1.0);
        return w;
    }
    if (e.uniformities.size() != T) {
        throw InvalidInput(fmt::format("{} uniformities for {} partitions", e.uniformities.size(), T));
    }
    w.weights = e.uniformities;
    switch (mode) {
    case WeightMode::raw:
    case WeightMode::uniform:
        break;
    case WeightMode::clamped:
        for (double& v : w.weights) {
            v = std::clamp(v, 0.0, 1.0);
        }
        break;
    case WeightMode::minmax: {
        const auto [lo, hi] = std::minmax_element(w.weights.begin(), w.weights.end());
        const double low = *lo;
        const double range = *hi - low;
        for (double& v : w.weights) {
            v = range > 0.0 ? (v - low) / range : 1.0;
        }
        break;
    }
    }
    return w;
}

}  // namespace woce
