#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "subchar/errors.hpp"
#include "subchar/ranking.hpp"

using namespace subchar;

namespace {

BundleSet two_class_toy() {
    // class 0: (1,0) and (3,0); class 1: (0,2)
    return make_bundles({0, 0, 1}, {{1, 0}, {3, 0}, {0, 2}});
}

AttributePartition trivial_partition(int dim, const std::vector<int>& assignment) {
    AttributePartition part;
    part.assignment = assignment;
    part.algorithm = PartitionAlgorithm::simplified;
    part.k = 0;
    (void)dim;
    return part;
}

} // namespace

TEST_CASE("relative contribution examples") {
    auto set = two_class_toy();
    // own average 2 for attribute 0 in class 0, other class average 0
    CHECK(relative_contribution(set, 0, 0) == doctest::Approx(2.0));
    CHECK(relative_contribution(set, 1, 0) == doctest::Approx(-2.0));
    CHECK(relative_contribution(set, 1, 1) == doctest::Approx(2.0));

    // equal averages give rc 0
    auto even = make_bundles({0, 1}, {{0.5}, {0.5}});
    CHECK(relative_contribution(even, 0, 0) == doctest::Approx(0.0));
}

TEST_CASE("rc is antisymmetric for two classes") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        int d = 2 + static_cast<int>(rng() % 6);
        std::vector<int> ids;
        std::vector<std::vector<double>> xs;
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < 3; ++i) {
                std::vector<double> x(d);
                for (auto& v : x) v = unif(rng);
                ids.push_back(c);
                xs.push_back(std::move(x));
            }
        auto set = make_bundles(ids, xs);
        for (int a = 0; a < d; ++a)
            CHECK(relative_contribution(set, a, 0) ==
                  doctest::Approx(-relative_contribution(set, a, 1)));
    }
}

TEST_CASE("rc scales linearly; ranking order is scale invariant") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int d = 6;
    std::vector<int> ids;
    std::vector<std::vector<double>> xs, scaled_xs;
    const double lambda = 7.5;
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 4; ++i) {
            std::vector<double> x(d), sx(d);
            for (int a = 0; a < d; ++a) {
                x[a] = unif(rng);
                sx[a] = lambda * x[a];
            }
            ids.push_back(c);
            xs.push_back(std::move(x));
            scaled_xs.push_back(std::move(sx));
        }
    auto set = make_bundles(ids, xs);
    auto scaled = make_bundles(ids, scaled_xs);
    for (int a = 0; a < d; ++a)
        CHECK(relative_contribution(scaled, a, 0) ==
              doctest::Approx(lambda * relative_contribution(set, a, 0)));

    std::vector<std::string> names = {"a0", "a1", "a2", "a3", "a4", "a5"};
    auto part = trivial_partition(d, {0, 0, 0, 1, 1, 1});
    auto r1 = bootstrap_rank(set, names, part, 0.75, 40, 123);
    auto r2 = bootstrap_rank(scaled, names, part, 0.75, 40, 123);
    for (int c = 0; c < 2; ++c) {
        REQUIRE(r1.per_class[c].size() == r2.per_class[c].size());
        for (std::size_t i = 0; i < r1.per_class[c].size(); ++i) {
            CHECK(r1.per_class[c][i].attribute == r2.per_class[c][i].attribute);
            CHECK(r1.per_class[c][i].rank == r2.per_class[c][i].rank);
            CHECK(r2.per_class[c][i].rc_mean ==
                  doctest::Approx(lambda * r1.per_class[c][i].rc_mean));
        }
    }
}

TEST_CASE("bootstrap with fraction 1 is exact and has zero std") {
    auto set = two_class_toy();
    auto part = trivial_partition(2, {0, 1});
    auto report = bootstrap_rank(set, {"x", "y"}, part, 1.0, 25, 7);
    REQUIRE(report.per_class[0].size() == 1);
    REQUIRE(report.per_class[1].size() == 1);
    CHECK(report.per_class[0][0].rc_mean == doctest::Approx(2.0));
    CHECK(report.per_class[0][0].rc_std == doctest::Approx(0.0));
    CHECK(report.per_class[1][0].rc_mean == doctest::Approx(2.0));
    CHECK(report.per_class[1][0].rc_std == doctest::Approx(0.0));
    CHECK(report.per_class[0][0].rank == 1);
}

TEST_CASE("single repetition reports zero std") {
    auto set = two_class_toy();
    auto part = trivial_partition(2, {0, 1});
    auto report = bootstrap_rank(set, {"x", "y"}, part, 0.5, 1, 99);
    CHECK(report.per_class[0][0].rc_std == 0.0);
}

TEST_CASE("bootstrap mean tracks the exact rc") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int d = 4;
    std::vector<int> ids;
    std::vector<std::vector<double>> xs;
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 40; ++i) {
            std::vector<double> x(d);
            for (auto& v : x) v = unif(rng) + (c == 0 ? 0.3 : 0.0);
            ids.push_back(c);
            xs.push_back(std::move(x));
        }
    auto set = make_bundles(ids, xs);
    auto part = trivial_partition(d, {0, 0, 1, 1});
    auto report = bootstrap_rank(set, {"a", "b", "c", "d"}, part, 0.5, 400, 5);
    for (int c = 0; c < 2; ++c)
        for (const auto& ra : report.per_class[c]) {
            double exact = relative_contribution(set, ra.attribute, c);
            double tol = 3.0 * std::max(ra.rc_std, 1e-3) / std::sqrt(400.0) + 0.02;
            CHECK(std::abs(ra.rc_mean - exact) < tol);
        }
}

TEST_CASE("bootstrap is deterministic and ranks sort by mean") {
    auto set = make_bundles({0, 0, 1}, {{3, 1, 2}, {1, 1, 2}, {0.5, 0.1, 0.2}});
    auto part = trivial_partition(3, {0, 0, 0});
    auto a = bootstrap_rank(set, {"p", "q", "r"}, part, 0.9, 50, 77);
    auto b = bootstrap_rank(set, {"p", "q", "r"}, part, 0.9, 50, 77);
    REQUIRE(a.per_class[0].size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.per_class[0][i].rc_mean == b.per_class[0][i].rc_mean);
        CHECK(a.per_class[0][i].rc_std == b.per_class[0][i].rc_std);
        CHECK(a.per_class[0][i].rank == static_cast<int>(i + 1));
        if (i > 0) CHECK(a.per_class[0][i - 1].rc_mean >= a.per_class[0][i].rc_mean);
    }
}

TEST_CASE("bootstrap input validation") {
    auto set = two_class_toy();
    auto part = trivial_partition(2, {0, 1});
    CHECK_THROWS_AS(bootstrap_rank(set, {"x", "y"}, part, 0.0, 5, 1), InputError);
    CHECK_THROWS_AS(bootstrap_rank(set, {"x", "y"}, part, 1.5, 5, 1), InputError);
    CHECK_THROWS_AS(bootstrap_rank(set, {"x", "y"}, part, 0.5, 0, 1), InputError);
    CHECK_THROWS_AS(bootstrap_rank(set, {"x"}, part, 0.5, 5, 1), InputError);
    auto short_part = trivial_partition(1, {0});
    CHECK_THROWS_AS(bootstrap_rank(set, {"x", "y"}, short_part, 0.5, 5, 1), InputError);
}

TEST_CASE("contribution series examples") {
    Snapshot s1;
    s1.label = "t1";
    s1.attribute_names = {"a", "b"};
    s1.xhat_by_class = {{{0.2, -0.4}, {0.6, 0.0}}, {{0.1, 0.1}}};
    Snapshot s2 = s1;
    s2.label = "t2";
    s2.xhat_by_class = {{{-0.5, 0.3}}, {{0.9, -0.2}}};

    auto series = contribution_series({s1, s2}, "a", 0);
    REQUIRE(series.size() == 2);
    CHECK(series[0] == doctest::Approx(0.4));  // (0.2 + 0.6) / 2
    CHECK(series[1] == doctest::Approx(-0.5)); // signed values are kept

    auto other = contribution_series({s1, s2}, "b", 1);
    CHECK(other[0] == doctest::Approx(0.1));
    CHECK(other[1] == doctest::Approx(-0.2));

    // constant snapshots give a constant series
    auto flat = contribution_series({s1, s1, s1}, "b", 0);
    for (double v : flat) CHECK(v == doctest::Approx(-0.2));
}

TEST_CASE("series errors name the offending snapshot") {
    Snapshot s;
    s.label = "week3";
    s.attribute_names = {"a"};
    s.xhat_by_class = {{{0.5}}, {{0.5}}};
    try {
        contribution_series({s}, "missing", 0);
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("week3") != std::string::npos);
    }
    CHECK_THROWS_AS(contribution_series({s}, "a", 5), InputError);
}
