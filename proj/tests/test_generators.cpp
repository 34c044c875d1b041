#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "oracle.hpp"
#include "woce/evaluation.hpp"
#include "woce/generators.hpp"
#include "woce/sampling.hpp"

using namespace woce;
using doctest::Approx;

namespace {

std::vector<GeneratorSpec> every_kind(int k, std::uint64_t seed) {
    auto specs = build_schedule(2, static_cast<int>(kNumGeneratorKinds), seed).specs;
    for (auto& s : specs) {
        s.k = k;
    }
    return specs;
}

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("schedule enumerates the bank then cycles the repeats") {
    const auto s = build_schedule(3, 20, 7);
    REQUIRE(s.specs.size() == 20);
    CHECK(s.k_final == 3);
    std::set<std::string> names;
    for (std::size_t t = 0; t < kNumGeneratorKinds; ++t) {
        names.insert(generator_name(s.specs[t]));
    }
    CHECK(names.size() == kNumGeneratorKinds);
    CHECK(generator_name(s.specs[0]) == "kmeans");
    CHECK(generator_name(s.specs[16]) == "spectral-sparse");
    CHECK(s.specs[17].kind == GeneratorKind::kmeans);
    CHECK(s.specs[18].kind == GeneratorKind::fuzzy_cmeans);
    CHECK(s.specs[19].kind == GeneratorKind::spectral_sparse);
    const int expected[] = {2, 3, 4, 5, 2, 3, 4, 5};
    for (int t = 0; t < 8; ++t) {
        CHECK(s.specs[static_cast<std::size_t>(t)].k == expected[t]);
    }
    std::set<std::uint64_t> seeds;
    for (const auto& spec : s.specs) {
        seeds.insert(spec.seed);
        CHECK(spec.k >= 2);
        CHECK(spec.k <= 5);
    }
    CHECK(seeds.size() == 20);
    CHECK(build_schedule(3, 20, 7).specs == s.specs);
    CHECK(build_schedule(3, 20, 8).specs != s.specs);
}

TEST_CASE("schedule edge cases") {
    const auto one = build_schedule(4, 1, 0);
    REQUIRE(one.specs.size() == 1);
    CHECK(one.specs[0].kind == GeneratorKind::kmeans);
    CHECK(one.specs[0].k == 2);
    CHECK_THROWS_AS(build_schedule(1, 5, 0), InvalidInput);
    CHECK_THROWS_AS(build_schedule(3, 0, 0), InvalidInput);
}

TEST_CASE("every generator recovers two separated blobs") {
    const auto z = testutil::two_blobs(40, 3);
    const auto truth = testutil::two_blob_truth(40);
    for (const auto& spec : every_kind(2, 5)) {
        if (spec.metric == Metric::hamming || spec.metric == Metric::cosine) {
            continue;  // angle and sign metrics depend on the origin, not the gap
        }
        CAPTURE(generator_name(spec));
        const auto p = run_generator(z, spec);
        CHECK(p.num_clusters() == 2);
        CHECK(accuracy_hungarian(p, truth) == Approx(1.0));
    }
}

TEST_CASE("every generator produces exactly k clusters and is deterministic") {
    std::mt19937_64 rng(12);
    const DataMatrix z(testutil::random_matrix(rng, 35, 3));
    for (int k : {2, 3, 5}) {
        for (const auto& spec : every_kind(k, 9)) {
            CAPTURE(generator_name(spec));
            CAPTURE(k);
            const auto a = run_generator(z, spec);
            const auto b = run_generator(z, spec);
            CHECK(a == b);
            if (spec.kind != GeneratorKind::spectral_sparse) {
                CHECK(a.num_clusters() == k);
            }
        }
    }
}

TEST_CASE("k = n gives singletons for every generator") {
    std::mt19937_64 rng(13);
    const DataMatrix z(testutil::random_matrix(rng, 9, 2));
    for (const auto& spec : every_kind(9, 1)) {
        CAPTURE(generator_name(spec));
        const auto p = run_generator(z, spec);
        CHECK(p.num_clusters() == 9);
    }
}

TEST_CASE("generators reject k > n") {
    std::mt19937_64 rng(14);
    const DataMatrix z(testutil::random_matrix(rng, 5, 2));
    for (const auto& spec : every_kind(6, 1)) {
        CAPTURE(generator_name(spec));
        CHECK_THROWS_AS(run_generator(z, spec), InvalidInput);
    }
}

TEST_CASE("deterministic generators are invariant to instance order") {
    std::mt19937_64 rng(16);
    const Matrix x = testutil::random_matrix(rng, 24, 2);
    std::vector<Eigen::Index> order(24);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Matrix shuffled(24, 2);
    for (Eigen::Index i = 0; i < 24; ++i) {
        shuffled.row(i) = x.row(order[static_cast<std::size_t>(i)]);
    }
    auto unshuffle = [&](const Partition& p) {
        std::vector<int> out(24);
        for (std::size_t i = 0; i < 24; ++i) {
            out[static_cast<std::size_t>(order[i])] = p[i];
        }
        return out;
    };
    for (Linkage l : {Linkage::single, Linkage::average, Linkage::complete, Linkage::ward}) {
        for (Metric m : {Metric::euclidean, Metric::cosine}) {
            const auto a = run_agglomerative(DataMatrix(x), 4, l, m);
            const auto b = run_agglomerative(DataMatrix(shuffled), 4, l, m);
            CHECK(oracle::same_comembership(a.labels(), unshuffle(b)));
        }
    }
    CHECK(oracle::same_comembership(run_subtractive(DataMatrix(x), 3).labels(),
                                    unshuffle(run_subtractive(DataMatrix(shuffled), 3))));
    for (const auto& spec : every_kind(24, 3)) {
        CHECK(run_generator(DataMatrix(shuffled), spec).num_clusters() == 24);
    }
}

TEST_CASE("kmeans is seed dependent but reproducible") {
    std::mt19937_64 rng(15);
    const DataMatrix z(testutil::random_matrix(rng, 60, 2));
    CHECK(run_kmeans(z, 4, 1) == run_kmeans(z, 4, 1));
    bool differs = false;
    for (std::uint64_t s = 2; s < 10 && !differs; ++s) {
        differs = !(run_kmeans(z, 6, 1) == run_kmeans(z, 6, s));
    }
    CHECK(differs);
}

TEST_CASE("gmm log-likelihood does not decrease") {
    const auto z = testutil::two_blobs(60, 4, 6.0);
    const auto fit = fit_gmm(z, 3, 2);
    REQUIRE(fit.log_likelihoods.size() >= 2);
    if (!fit.reseeded) {
        for (std::size_t i = 1; i < fit.log_likelihoods.size(); ++i) {
            CHECK(fit.log_likelihoods[i] >= fit.log_likelihoods[i - 1] - 1e-8 * std::abs(fit.log_likelihoods[i - 1]));
        }
    }
    CHECK(fit.partition.num_clusters() == 3);
}

TEST_CASE("subtractive clustering") {
    const auto z = testutil::two_blobs(30, 6);
    const auto p = run_subtractive(z, 2);
    CHECK(accuracy_hungarian(p, testutil::two_blob_truth(30)) == Approx(1.0));
    CHECK(run_subtractive(z, 1).num_clusters() == 1);
    Matrix dup(4, 1);
    dup << 1, 1, 2, 2;
    CHECK_THROWS_AS(run_subtractive(DataMatrix(dup), 3), InvalidInput);
    CHECK(run_subtractive(DataMatrix(dup), 2).labels() == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("spectral clustering separates half moons") {
    const auto ds = gen_halfring(200, 0.05, 3);
    const auto p = run_spectral_sparse(ds.data, 2, 1);
    CHECK(accuracy_hungarian(p, *ds.labels) > 0.97);
}

TEST_CASE("spectral clustering returns graph components") {
    Matrix m(40, 2);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 0.1);
    for (int i = 0; i < 40; ++i) {
        const double c = (i / 10) * 100.0;
        m(i, 0) = c + g(rng);
        m(i, 1) = g(rng);
    }
    // Four far-apart groups of ten; kNN with 9 neighbours stays inside each group.
    GeneratorConfig cfg;
    cfg.spectral_neighbors = 9;
    const auto p = run_spectral_sparse(DataMatrix(m), 2, 0, cfg);
    CHECK(p.num_clusters() == 4);
    std::vector<int> truth(40);
    for (int i = 0; i < 40; ++i) {
        truth[i] = i / 10;
    }
    CHECK(oracle::same_comembership(p.labels(), truth));
}

TEST_CASE("pairwise distances") {
    Matrix x(3, 2);
    x << 1, 0, 0, 2, -3, 0;
    const DataMatrix z(x);
    const Matrix e = pairwise_distances(z, Metric::euclidean);
    CHECK(e(0, 1) == Approx(std::sqrt(5.0)));
    CHECK(e(0, 2) == Approx(4.0));
    const Matrix c = pairwise_distances(z, Metric::cosine);
    CHECK(c(0, 1) == Approx(1.0));
    CHECK(c(0, 2) == Approx(2.0));
    CHECK(c(1, 1) == Approx(0.0));
    const Matrix h = pairwise_distances(z, Metric::hamming);
    // Column means (-2/3, 2/3): sign bits (1,0), (1,1), (0,0).
    CHECK(h(0, 1) == Approx(0.5));
    CHECK(h(0, 2) == Approx(0.5));
    CHECK(h(1, 2) == Approx(1.0));
    for (Metric m : {Metric::euclidean, Metric::hamming, Metric::cosine}) {
        const Matrix d = pairwise_distances(z, m);
        CHECK(d.isApprox(d.transpose()));
        CHECK(d.diagonal().isZero());
    }
    Matrix zero(2, 2);
    zero << 0, 0, 1, 1;
    CHECK(pairwise_distances(DataMatrix(zero), Metric::cosine)(0, 1) == Approx(1.0));
}

TEST_CASE("generate_reference_set") {
    const auto z = testutil::two_blobs(30, 8);
    const auto schedule = build_schedule(2, 20, 3);
    const auto e = generate_reference_set(z, schedule);
    CHECK(e.size() == 20);
    CHECK(e.num_instances() == 30);
    for (std::size_t t = 0; t < e.size(); ++t) {
        if (schedule.specs[t].kind != GeneratorKind::spectral_sparse) {
            CHECK(e.partitions[t].num_clusters() == schedule.specs[t].k);
        }
    }
}

}
