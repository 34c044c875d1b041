#include "woce/linkage.hpp"

#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace woce {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Nearest-neighbor cache restricted to j > i; exact because every row whose
// cached neighbor may have become stale is rescanned after each merge.
class NeighborCache {
public:
    NeighborCache(const Matrix& dist, const std::vector<char>& active)
        : dist_(dist), active_(active), nn_(static_cast<std::size_t>(dist.rows()), kNone),
          nn_dist_(static_cast<std::size_t>(dist.rows()), std::numeric_limits<double>::infinity()) {
        for (std::size_t i = 0; i < nn_.size(); ++i) {
            rescan(i);
        }
    }

    void rescan(std::size_t i) {
        nn_[i] = kNone;
        nn_dist_[i] = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < nn_.size(); ++j) {
            if (!active_[j]) {
                continue;
            }
            const double d = at(i, j);
            if (nn_[i] == kNone || d < nn_dist_[i]) {
                nn_[i] = j;
                nn_dist_[i] = d;
            }
        }
    }

    // Candidate j for row i after d(i, j) changed (j > i).
    void offer(std::size_t i, std::size_t j) {
        const double d = at(i, j);
        if (nn_[i] == kNone || d < nn_dist_[i] || (d == nn_dist_[i] && j < nn_[i])) {
            nn_[i] = j;
            nn_dist_[i] = d;
        }
    }

    [[nodiscard]] std::size_t neighbor(std::size_t i) const { return nn_[i]; }

    // Globally closest active pair; ties resolved to the smallest (i, j).
    [[nodiscard]] std::pair<std::size_t, std::size_t> closest() const {
        std::size_t best = kNone;
        for (std::size_t i = 0; i < nn_.size(); ++i) {
            if (!active_[i] || nn_[i] == kNone) {
                continue;
            }
            if (best == kNone || nn_dist_[i] < nn_dist_[best]) {
                best = i;
            }
        }
        return {best, best == kNone ? kNone : nn_[best]};
    }

private:
    [[nodiscard]] double at(std::size_t i, std::size_t j) const {
        return dist_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    const Matrix& dist_;
    const std::vector<char>& active_;
    std::vector<std::size_t> nn_;
    std::vector<double> nn_dist_;
};

double lance_williams(Linkage linkage, double d_ka, double d_kb, double d_ab, double n_a, double n_b, double n_k) {
    switch (linkage) {
    case Linkage::single:
        return std::min(d_ka, d_kb);
    case Linkage::complete:
        return std::max(d_ka, d_kb);
    case Linkage::average:
        return (n_a * d_ka + n_b * d_kb) / (n_a + n_b);
    case Linkage::ward:
        return ((n_a + n_k) * d_ka + (n_b + n_k) * d_kb - n_k * d_ab) / (n_a + n_b + n_k);
    }
    return 0.0;
}

}  // namespace

Dendrogram agglomerate(const Matrix& distances, Linkage linkage, std::size_t max_merges) {
    if (distances.rows() != distances.cols()) {
        throw InvalidInput(fmt::format("distance matrix is {}x{}", distances.rows(), distances.cols()));
    }
    const auto n = static_cast<std::size_t>(distances.rows());
    Dendrogram out;
    out.n = n;
    if (n == 0) {
        return out;
    }

    Matrix dist = distances;
    std::vector<char> active(n, 1);
    std::vector<double> sizes(n, 1.0);
    NeighborCache cache(dist, active);

    const std::size_t total = std::min(max_merges, n - 1);
    out.merges.reserve(total);
    for (std::size_t step = 0; step < total; ++step) {
        const auto [a, b] = cache.closest();
        const auto ia = static_cast<Eigen::Index>(a);
        const auto ib = static_cast<Eigen::Index>(b);
        const double d_ab = dist(ia, ib);
        out.merges.push_back({a, b, d_ab});

        active[b] = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == a) {
                continue;
            }
            const auto ik = static_cast<Eigen::Index>(k);
            const double updated = lance_williams(linkage, dist(ik, ia), dist(ik, ib), d_ab, sizes[a], sizes[b], sizes[k]);
            dist(ik, ia) = updated;
            dist(ia, ik) = updated;
        }
        sizes[a] += sizes[b];

        cache.rescan(a);
        for (std::size_t i = 0; i < a; ++i) {
            if (!active[i]) {
                continue;
            }
            if (cache.neighbor(i) == a || cache.neighbor(i) == b) {
                cache.rescan(i);
            } else {
                cache.offer(i, a);
            }
        }
        for (std::size_t i = a + 1; i < b; ++i) {
            if (active[i] && cache.neighbor(i) == b) {
                cache.rescan(i);
            }
        }
    }
    return out;
}

Partition cut_dendrogram(const Dendrogram& d, std::size_t k) {
    const std::size_t n = d.n;
    if (k < 1 || k > n) {
        throw InvalidInput(fmt::format("cannot cut {} instances into {} clusters", n, k));
    }
    if (d.merges.size() < n - k) {
        throw InvalidInput(fmt::format("dendrogram has {} merges, {} needed for k={}", d.merges.size(), n - k, k));
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t s = 0; s < n - k; ++s) {
        parent[find(d.merges[s].b)] = find(d.merges[s].a);
    }
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = static_cast<int>(find(i));
    }
    return validate_partition(std::span<const int>(labels), n);
}

}  // namespace woce
