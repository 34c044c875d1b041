#include "woce/consensus.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace woce {

namespace {

template <typename Add>
void accumulate_comembership(const Partition& p, Add&& add) {
    std::vector<std::vector<Eigen::Index>> members(static_cast<std::size_t>(p.num_clusters()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        members[static_cast<std::size_t>(p[i])].push_back(static_cast<Eigen::Index>(i));
    }
    for (const auto& cluster : members) {
        for (Eigen::Index a : cluster) {
            for (Eigen::Index b : cluster) {
                add(a, b);
            }
        }
    }
}

}  // namespace

CoAssociationMatrix weac_matrix(const ReferenceSet& e, const WeightVector& w) {
    const std::size_t n = e.num_instances();
    if (w.weights.size() != e.size()) {
        throw InvalidInput(fmt::format("{} weights for {} partitions", w.weights.size(), e.size()));
    }
    const auto ni = static_cast<Eigen::Index>(n);
    Matrix sums = Matrix::Zero(ni, ni);
    for (std::size_t t = 0; t < e.size(); ++t) {
        const double rho = w.weights[t];
        accumulate_comembership(e.partitions[t], [&](Eigen::Index a, Eigen::Index b) { sums(a, b) += rho; });
    }
    CoAssociationMatrix out;
    out.beta = e.size();
    out.entries = sums / static_cast<double>(out.beta);
    const auto [lo, hi] = std::minmax_element(w.weights.begin(), w.weights.end());
    out.max_weight = (*lo >= 0.0 && *hi <= 1.0) ? 1.0 : *hi;
    return out;
}

CoAssociationMatrix eac_matrix(const ReferenceSet& e) {
    const std::size_t n = e.num_instances();
    const auto ni = static_cast<Eigen::Index>(n);
    Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(ni, ni);
    for (const auto& p : e.partitions) {
        accumulate_comembership(p, [&](Eigen::Index a, Eigen::Index b) { ++counts(a, b); });
    }
    CoAssociationMatrix out;
    out.beta = e.size();
    out.entries = counts.cast<double>() / static_cast<double>(out.beta);
    out.max_weight = 1.0;
    return out;
}

Dendrogram average_linkage(const CoAssociationMatrix& pi) {
    const Matrix& c = pi.entries;
    if (c.rows() != c.cols()) {
        throw InvalidInput(fmt::format("co-association matrix is {}x{}", c.rows(), c.cols()));
    }
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidInput("co-association matrix is not symmetric");
    }
    const Matrix distances = (pi.max_weight - c.array()).matrix();
    return agglomerate(distances, Linkage::average);
}

Partition consensus_partition(const ReferenceSet& e, const WeightVector& w, int k) {
    const CoAssociationMatrix pi = weac_matrix(e, w);
    return cut_dendrogram(average_linkage(pi), static_cast<std::size_t>(k));
}

WoceResult run_woce(const DataMatrix& xhat, const ConstraintSet& cs, const WoceOptions& opts) {
    if (opts.k < 2) {
        throw InvalidInput(fmt::format("final cluster count must be at least 2, got {}", opts.k));
    }
    if (static_cast<std::size_t>(opts.k) > xhat.rows()) {
        throw InvalidInput(fmt::format("cannot form {} clusters from {} instances", opts.k, xhat.rows()));
    }
    ProjectedData projected = project_with_constraints(xhat, cs, opts.d);
    EnsembleSchedule schedule = build_schedule(opts.k, opts.ensemble_size, opts.seed);
    ReferenceSet reference = generate_reference_set(projected.z, schedule, opts.generators);

    std::vector<UniformityBreakdown> scores = score_reference_set(reference, opts.uniformity_mode);
    reference.uniformities.clear();
    for (const auto& s : scores) {
        reference.uniformities.push_back(s.raw);
    }
    WeightVector weights = weight_vector(reference, opts.weight_mode);
    CoAssociationMatrix pi = weac_matrix(reference, weights);
    Partition final_partition = cut_dendrogram(average_linkage(pi), static_cast<std::size_t>(opts.k));

    return WoceResult{std::move(final_partition), std::move(reference),  std::move(pi),
                      std::move(weights),         std::move(schedule),   std::move(scores),
                      std::move(projected.projection)};
}

}  // namespace woce
