#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "woce/core.hpp"

using namespace woce;
using testutil::part;

TEST_SUITE("core") {

TEST_CASE("validate_partition renumbers by first appearance") {
    CHECK(part({5, 5, 9, 9}).labels() == std::vector<int>{0, 0, 1, 1});
    CHECK(part({5, 5, 9, 9}).num_clusters() == 2);
    CHECK(part({0, 1, 2}).labels() == std::vector<int>{0, 1, 2});
    CHECK(part({0, 1, 2}).num_clusters() == 3);
    CHECK(part({2, 0, 2, 1}).labels() == std::vector<int>{0, 1, 0, 2});
    CHECK(part({2, 0, 2, 1}).num_clusters() == 3);
    CHECK(part({-7, 3, -7}).labels() == std::vector<int>{0, 1, 0});
}

TEST_CASE("validate_partition is idempotent and keeps co-membership") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(-3, 6);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<int> raw(15);
        for (int& v : raw) {
            v = pick(rng);
        }
        const Partition once = part(raw);
        const Partition twice = validate_partition(std::span<const int>(once.labels()), raw.size());
        CHECK(once == twice);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            for (std::size_t j = 0; j < raw.size(); ++j) {
                CHECK((raw[i] == raw[j]) == (once[i] == once[j]));
            }
        }
    }
}

TEST_CASE("validate_partition errors") {
    std::vector<int> labels{0, 1};
    CHECK_THROWS_AS(validate_partition(std::span<const int>(labels), 3), InvalidInput);
    std::vector<double> nan{0.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(validate_partition(std::span<const double>(nan), 2), InvalidInput);
    std::vector<double> frac{0.0, 0.5};
    CHECK_THROWS_AS(validate_partition(std::span<const double>(frac), 2), InvalidInput);
    std::vector<double> reals{3.0, 3.0, 1.0};
    CHECK(validate_partition(std::span<const double>(reals), 3).labels() == std::vector<int>{0, 0, 1});
}

TEST_CASE("cluster_sizes") {
    CHECK(cluster_sizes(part({0, 0, 1, 1})) == std::vector<std::size_t>{2, 2});
    CHECK(cluster_sizes(part({0, 1, 1, 1})) == std::vector<std::size_t>{1, 3});
    CHECK(cluster_sizes(part({0, 1, 0, 2, 2})) == std::vector<std::size_t>{2, 1, 2});
}

TEST_CASE("DataMatrix validation") {
    CHECK_THROWS_AS(DataMatrix(Matrix::Zero(1, 3)), InvalidInput);
    CHECK_THROWS_AS(DataMatrix(Matrix::Zero(3, 0)), InvalidInput);
    Matrix bad = Matrix::Zero(3, 2);
    bad(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(DataMatrix{bad}, InvalidInput);
    CHECK_THROWS_AS(DataMatrix(Matrix::Zero(3, 2), {"a"}), InvalidInput);
    const DataMatrix ok(Matrix::Ones(3, 2), {"a", "b"});
    CHECK(ok.rows() == 3);
    CHECK(ok.cols() == 2);
    CHECK(ok.feature_names()[1] == "b");
}

TEST_CASE("validate_constraints") {
    ConstraintSet cs;
    cs.must = {{0, 1}};
    cs.cannot = {{2, 3}};
    CHECK_NOTHROW(validate_constraints(cs, 4));
    CHECK_THROWS_AS(validate_constraints(cs, 3), InvalidInput);
    cs.cannot = {{1, 0}};
    CHECK_THROWS_AS(validate_constraints(cs, 4), InvalidInput);
    cs.cannot = {{2, 2}};
    CHECK_THROWS_AS(validate_constraints(cs, 4), InvalidInput);
}

TEST_CASE("ReferenceSet instance count") {
    ReferenceSet e;
    CHECK_THROWS_AS((void)e.num_instances(), InvalidInput);
    e.partitions = {part({0, 1, 0}), part({0, 0, 0})};
    CHECK(e.num_instances() == 3);
    e.partitions.push_back(part({0, 1}));
    CHECK_THROWS_AS((void)e.num_instances(), InvalidInput);
}

}
