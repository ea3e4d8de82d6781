#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "subchar/errors.hpp"
#include "subchar/welfare.hpp"

using namespace subchar;

namespace {

BundleSet toy_345() {
    // class 0: one x = (3,4,0); class 1: one x = (0,0,5)
    return make_bundles({0, 1}, {{3, 4, 0}, {0, 0, 5}});
}

// All c^d assignments.
std::vector<std::vector<int>> all_assignments(int d, int c) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(d, 0);
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < d && ++cur[i] == c) cur[i++] = 0;
        if (i == d) break;
    }
    return out;
}

BundleSet random_bundles(std::mt19937_64& rng, int d, int c, int per_class) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<int> ids;
    std::vector<std::vector<double>> xs;
    for (int cls = 0; cls < c; ++cls)
        for (int i = 0; i < per_class; ++i) {
            std::vector<double> x(d);
            for (auto& v : x) v = rng() % 4 == 0 ? 0.0 : unif(rng);
            if (*std::max_element(x.begin(), x.end()) == 0.0) x[rng() % d] = unif(rng) + 0.01;
            ids.push_back(cls);
            xs.push_back(std::move(x));
        }
    return make_bundles(ids, xs);
}

// Modular (per-attribute additive) objective of an assignment, from scratch.
double modular_objective(const BundleSet& set, const std::vector<int>& assignment) {
    double total = 0.0;
    for (const auto& bundle : set.bundles) {
        double sum = 0.0;
        for (const auto& x : bundle.xs) {
            double norm = 0.0;
            for (double v : x) norm += v * v;
            norm = std::sqrt(norm);
            for (int a = 0; a < set.dim; ++a)
                if (assignment[a] == bundle.class_id) sum += x[a] * x[a] / norm;
        }
        total += sum / bundle.size();
    }
    return total;
}

} // namespace

TEST_CASE("welfare of the separable toy instance") {
    auto set = toy_345();
    CHECK(welfare(set, {0, 0, 1}) == doctest::Approx(10.0));
    CHECK(welfare(set, {1, 1, 1}) == doctest::Approx(5.0)); // class 0 term is 0
    // enumeration confirms 10 is the maximum over all 8 partitions
    double best = 0.0;
    for (const auto& assignment : all_assignments(3, 2))
        best = std::max(best, welfare(set, assignment));
    CHECK(best == doctest::Approx(10.0));
}

TEST_CASE("single class owning everything averages full norms") {
    auto set = make_bundles({0, 0, 1}, {{3, 4}, {6, 8}, {1, 1}});
    CHECK(welfare(set, {0, 0}) == doctest::Approx((5.0 + 10.0) / 2.0));
}

TEST_CASE("brute force examples") {
    auto part = brute_force(toy_345());
    CHECK(part.assignment == std::vector<int>{0, 0, 1});
    CHECK(part.objective_value == doctest::Approx(10.0));

    auto single = brute_force(make_bundles({0, 1}, {{2}, {1}}));
    CHECK(single.assignment == std::vector<int>{0});
    CHECK(single.objective_value == doctest::Approx(2.0));

    // identical bundles: mirrored assignments tie; lexicographic winner
    auto sym = brute_force(make_bundles({0, 1}, {{1, 1}, {1, 1}}));
    CHECK(sym.assignment == std::vector<int>{0, 1});
}

TEST_CASE("brute force cap refuses large instances") {
    auto set = toy_345();
    CHECK_THROWS_AS(brute_force(set, 4), InfeasibleError);
}

TEST_CASE("greedy examples") {
    auto part = greedy_half(toy_345());
    CHECK(part.objective_value == doctest::Approx(10.0));

    // tie-break sends attributes of all-equal instances to class 0
    auto sym = greedy_half(make_bundles({0, 1}, {{1, 1}, {1, 1}}));
    CHECK(sym.assignment[0] == 0);

    auto single = greedy_half(make_bundles({0, 1}, {{2}, {1}}));
    CHECK(single.assignment == brute_force(make_bundles({0, 1}, {{2}, {1}})).assignment);
}

TEST_CASE("swa solves the separable instance") {
    SwaOptions opts;
    opts.steps = 50;
    opts.samples = 16;
    opts.seed = 1;
    auto part = swa_continuous_greedy(toy_345(), opts);
    CHECK(part.objective_value == doctest::Approx(10.0));

    // mass flows entirely to class 0 when class 1 has nothing to gain
    auto lopsided = make_bundles({0, 1}, {{2, 3}, {1e-12, 1e-12}});
    auto p2 = swa_continuous_greedy(lopsided, opts);
    CHECK(p2.assignment == std::vector<int>{0, 0});
}

TEST_CASE("swa is deterministic given the seed") {
    std::mt19937_64 rng(5);
    auto set = random_bundles(rng, 8, 2, 5);
    SwaOptions opts;
    opts.steps = 30;
    opts.samples = 8;
    opts.seed = 99;
    auto a = swa_continuous_greedy(set, opts);
    auto b = swa_continuous_greedy(set, opts);
    CHECK(a.assignment == b.assignment);
    CHECK(a.objective_value == b.objective_value);
}

TEST_CASE("simplified optimizes the modular objective exactly") {
    // class 0: x=(3,4); class 1: x=(1,1); per-attribute gains (1.8, 3.2) vs
    // (0.7071, 0.7071): both attributes go to class 0.
    auto set = make_bundles({0, 1}, {{3, 4}, {1, 1}});
    auto part = simplified(set);
    CHECK(part.assignment == std::vector<int>{0, 0});

    double best = -1.0;
    for (const auto& assignment : all_assignments(2, 2))
        best = std::max(best, modular_objective(set, assignment));
    CHECK(modular_objective(set, part.assignment) == doctest::Approx(best));

    // exhaustive check on random instances, d <= 10
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + static_cast<int>(rng() % 9);
        int c = 2 + static_cast<int>(rng() % 2);
        auto inst = random_bundles(rng, d, c, 3);
        auto p = simplified(inst);
        double opt = -1.0;
        for (const auto& assignment : all_assignments(d, c))
            opt = std::max(opt, modular_objective(inst, assignment));
        CHECK(modular_objective(inst, p.assignment) == doctest::Approx(opt).epsilon(1e-12));
    }
}

TEST_CASE("simplified tie-breaks toward class 0") {
    auto sym = simplified(make_bundles({0, 1}, {{1, 1}, {1, 1}}));
    CHECK(sym.assignment == std::vector<int>{0, 0});
    auto one = simplified(make_bundles({0, 1}, {{2}, {2}}));
    CHECK(one.assignment == std::vector<int>{0});
}

TEST_CASE("topk contest resolution hand trace") {
    // class 0: x=(4,3); class 1: x=(5,0); k=1. Both greedies want attribute 0;
    // average contributions 4 vs 5 give it to class 1; class 0 refills with 1.
    auto set = make_bundles({0, 1}, {{4, 3}, {5, 0}});
    auto part = topk(set, 1);
    CHECK(part.assignment == std::vector<int>{1, 0});

    // enumeration: {1},{0} maximizes welfare among disjoint k=1 choices
    double best = -1.0;
    std::vector<int> best_assignment;
    for (int a0 = 0; a0 < 2; ++a0)
        for (int a1 = 0; a1 < 2; ++a1) {
            if (a0 == a1) continue;
            std::vector<int> assignment(2, -1);
            assignment[a0] = 0;
            assignment[a1] = 1;
            double v = welfare(set, assignment);
            if (v > best) {
                best = v;
                best_assignment = assignment;
            }
        }
    CHECK(part.assignment == best_assignment);
    CHECK(part.objective_value == doctest::Approx(best));
}

TEST_CASE("topk with disjoint supports and k=d/c has no contests") {
    auto set = make_bundles({0, 0, 1, 1},
                            {{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 3, 1}, {0, 0, 1, 3}});
    auto part = topk(set, 2);
    CHECK(part.assignment == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("topk k=1 single-step greedy picks the max entry") {
    auto set = make_bundles({0, 1}, {{1, 5, 2}, {0.1, 0.2, 0.1}});
    auto part = topk(set, 1);
    CHECK(part.assignment[1] == 0);
}

TEST_CASE("topk rejects infeasible budgets") {
    CHECK_THROWS_AS(topk(toy_345(), 2), InfeasibleError); // 2*2 > 3
    CHECK_THROWS_AS(topk(toy_345(), 0), InputError);
}

TEST_CASE("three-class brute force with d=4") {
    std::mt19937_64 rng(29);
    auto set = random_bundles(rng, 4, 3, 2);
    auto part = brute_force(set); // 81 enumerations
    double opt = -1.0;
    for (const auto& assignment : all_assignments(4, 3))
        opt = std::max(opt, welfare(set, assignment));
    CHECK(part.objective_value == doctest::Approx(opt));
    CHECK(greedy_half(set).objective_value >= 0.5 * opt - 1e-12);
}

TEST_CASE("approximation bounds on random instances") {
    std::mt19937_64 rng(41);
    SwaOptions opts;
    opts.steps = 60;
    opts.samples = 16;
    for (int trial = 0; trial < 12; ++trial) {
        int d = 3 + static_cast<int>(rng() % 8);
        int c = 2 + static_cast<int>(rng() % 2);
        auto set = random_bundles(rng, d, c, 4);
        double opt = brute_force(set).objective_value;
        CHECK(greedy_half(set).objective_value >= 0.5 * opt - 1e-9);
        opts.seed = rng();
        CHECK(swa_continuous_greedy(set, opts).objective_value >=
              (1.0 - std::exp(-1.0)) * opt - 1e-9);
    }
}

TEST_CASE("partition outputs are disjoint and cover when required") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 15; ++trial) {
        int d = 4 + static_cast<int>(rng() % 6);
        auto set = random_bundles(rng, d, 2, 3);
        for (auto part : {greedy_half(set), simplified(set), brute_force(set)}) {
            REQUIRE(static_cast<int>(part.assignment.size()) == d);
            for (int a : part.assignment) CHECK((a == 0 || a == 1));
        }
        int k = std::max(1, d / 3);
        auto tk = topk(set, k);
        std::vector<int> count(2, 0);
        for (int a : tk.assignment)
            if (a >= 0) ++count[a];
        CHECK(count[0] == k);
        CHECK(count[1] == k);
    }
}

TEST_CASE("welfare invariant under subgraph and attribute permutations") {
    std::mt19937_64 rng(61);
    auto set = random_bundles(rng, 6, 2, 4);
    std::vector<int> assignment = {0, 1, 0, 1, 1, 0};
    double base = welfare(set, assignment);

    // permute subgraphs within a class
    BundleSet shuffled = set;
    std::shuffle(shuffled.bundles[0].xs.begin(), shuffled.bundles[0].xs.end(), rng);
    CHECK(welfare(shuffled, assignment) == doctest::Approx(base));

    // permute attribute indices along with the assignment
    std::vector<int> perm = {3, 0, 5, 1, 4, 2};
    BundleSet permuted = set;
    std::vector<int> perm_assignment(6);
    for (auto& bundle : permuted.bundles)
        for (auto& x : bundle.xs) {
            auto old = x;
            for (int a = 0; a < 6; ++a) x[perm[a]] = old[a];
        }
    for (int a = 0; a < 6; ++a) perm_assignment[perm[a]] = assignment[a];
    CHECK(welfare(permuted, perm_assignment) == doctest::Approx(base));
}

TEST_CASE("bundle construction drops low-quality vectors and reports them") {
    ContributionVector good, bad;
    good.x_hat = {0.5, -0.1};
    good.x = {0.5, 0.0};
    good.class_id = 0;
    bad.x_hat = {-0.5, -0.1};
    bad.x = {0.0, 0.0};
    bad.low_quality = true;
    bad.class_id = 1;
    ContributionVector other = good;
    other.class_id = 1;
    auto set = make_bundles({good, bad, other});
    CHECK(set.dropped_low_quality == 1);
    CHECK(set.bundles[0].size() == 1);
    CHECK(set.bundles[1].size() == 1);

    CHECK_THROWS_AS(make_bundles({bad, bad}), InputError);
}
