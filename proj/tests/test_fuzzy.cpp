#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dfs/errors.hpp"
#include "dfs/fuzzy.hpp"

using dfs::FuzzyPartition;
using dfs::RuleIndex;
using dfs::TriangularMembership;

namespace {

FuzzyPartition unit_partition(int dims, int count) {
    std::vector<std::pair<double, double>> intervals(static_cast<std::size_t>(dims), {0.0, 1.0});
    std::vector<int> counts(static_cast<std::size_t>(dims), count);
    return dfs::make_uniform_partition(intervals, counts);
}

}  // namespace

TEST_CASE("membership: unit at center, zero outside, linear between") {
    TriangularMembership mf{0.0, 1.0, 2.0, false, false};
    CHECK(mf.eval(1.0) == 1.0);
    CHECK(mf.eval(2.5) == 0.0);
    CHECK(mf.eval(-0.1) == 0.0);
    CHECK(mf.eval(0.5) == doctest::Approx(0.5));
    CHECK(mf.eval(1.5) == doctest::Approx(0.5));
}

TEST_CASE("membership: shoulders hold at 1 beyond the edge") {
    TriangularMembership lo{0.0, 0.0, 0.5, true, false};
    TriangularMembership hi{0.5, 1.0, 1.0, false, true};
    CHECK(lo.eval(-0.3) == 1.0);
    CHECK(lo.eval(0.0) == 1.0);
    CHECK(lo.eval(0.25) == doctest::Approx(0.5));
    CHECK(hi.eval(1.4) == 1.0);
    CHECK(hi.eval(0.75) == doctest::Approx(0.5));
}

TEST_CASE("uniform partition on [0,1] with 3 sets") {
    const auto mfs = dfs::build_uniform_partition(0.0, 1.0, 3);
    REQUIRE(mfs.size() == 3);
    CHECK(mfs[0].center == doctest::Approx(0.0));
    CHECK(mfs[1].center == doctest::Approx(0.5));
    CHECK(mfs[2].center == doctest::Approx(1.0));
    CHECK(mfs[1].left == doctest::Approx(0.0));
    CHECK(mfs[1].right == doctest::Approx(1.0));
    CHECK(mfs[0].shoulder_left);
    CHECK(mfs[2].shoulder_right);
}

TEST_CASE("uniform partition on [0.40, 1.32] with 3 sets") {
    const auto mfs = dfs::build_uniform_partition(0.40, 1.32, 3);
    REQUIRE(mfs.size() == 3);
    CHECK(mfs[0].center == doctest::Approx(0.40));
    CHECK(mfs[1].center == doctest::Approx(0.86));
    CHECK(mfs[2].center == doctest::Approx(1.32));
}

TEST_CASE("uniform partition rejects fewer than two sets") {
    CHECK_THROWS_AS(dfs::build_uniform_partition(0.0, 1.0, 1), dfs::ContractViolation);
    CHECK_THROWS_AS(dfs::build_uniform_partition(1.0, 0.0, 3), dfs::ContractViolation);
}

TEST_CASE("partition of unity over the domain") {
    const auto mfs = dfs::build_uniform_partition(0.0, 1.0, 3);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = uni(rng);
        double total = 0.0;
        for (const auto& mf : mfs) total += mf.eval(x);
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("firing level: product T-norm") {
    const FuzzyPartition partition = unit_partition(2, 3);
    const RuleIndex j{1, 1};
    const std::vector<double> center = dfs::rule_center(partition, j);
    CHECK(dfs::firing_level(partition, j, center) == 1.0);

    // Both dimensions halfway between centers: each factor 0.5.
    CHECK(dfs::firing_level(partition, j, std::vector<double>{0.25, 0.25}) ==
          doctest::Approx(0.25));

    // One dimension outside the middle set's support.
    CHECK(dfs::firing_level(partition, RuleIndex{1, 0}, std::vector<double>{0.5, 0.9}) == 0.0);
}

TEST_CASE("firing level is Lipschitz in x") {
    const FuzzyPartition partition = unit_partition(2, 3);
    // Steepest triangle slope on [0,1] with 3 sets is 1/0.5 = 2 per dimension.
    const double L = 4.0;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto rules = dfs::enumerate_rules(partition);
    for (int trial = 0; trial < 500; ++trial) {
        const std::vector<double> x{uni(rng), uni(rng)};
        std::vector<double> y = x;
        y[trial % 2] = uni(rng);
        const double dist = std::abs(y[0] - x[0]) + std::abs(y[1] - x[1]);
        for (const auto& j : rules) {
            const double diff =
                std::abs(dfs::firing_level(partition, j, x) - dfs::firing_level(partition, j, y));
            CHECK(diff <= L * dist + 1e-12);
        }
    }
}

TEST_CASE("normalized firing: indicator at centers, normalization elsewhere") {
    const FuzzyPartition partition = unit_partition(1, 3);
    const auto rules = dfs::enumerate_rules(partition);

    for (std::size_t j = 0; j < rules.size(); ++j) {
        const auto p = dfs::normalized_firing(partition, rules, dfs::rule_center(partition, rules[j]));
        for (std::size_t k = 0; k < p.size(); ++k) CHECK(p[k] == (k == j ? 1.0 : 0.0));
    }

    // x=0.25 fires sets 0 and 1 at 0.5 each.
    const auto p = dfs::normalized_firing(partition, rules, std::vector<double>{0.25});
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));
    CHECK(p[2] == 0.0);

    // Over a pruned 2-D rule set the firings no longer sum to 1; at
    // x=(0.2,0.2) the corner rules fire 0.36 and 0.16.
    const FuzzyPartition part2 = unit_partition(2, 3);
    const std::vector<double> q = dfs::normalized_firing(
        part2, {RuleIndex{0, 0}, RuleIndex{1, 1}}, std::vector<double>{0.2, 0.2});
    CHECK(q[0] == doctest::Approx(0.36 / 0.52));
    CHECK(q[1] == doctest::Approx(0.16 / 0.52));
}

TEST_CASE("normalized firing: single-rule set inside its support") {
    const FuzzyPartition partition = unit_partition(1, 3);
    const auto p =
        dfs::normalized_firing(partition, {RuleIndex{1}}, std::vector<double>{0.3});
    REQUIRE(p.size() == 1);
    CHECK(p[0] == 1.0);
}

TEST_CASE("normalized firing: coverage hole throws with the point") {
    const FuzzyPartition partition = unit_partition(1, 3);
    try {
        dfs::normalized_firing(partition, {RuleIndex{0}}, std::vector<double>{0.9});
        FAIL("expected CoverageHoleError");
    } catch (const dfs::CoverageHoleError& e) {
        REQUIRE(e.point().size() == 1);
        CHECK(e.point()[0] == 0.9);
    }
}

TEST_CASE("fs_eval: center exactness, convexity, interpolation") {
    const FuzzyPartition partition = unit_partition(1, 2);
    std::vector<dfs::ZeroOrderRule> rules(2);
    rules[0] = {RuleIndex{0}, {0.0}, 0.0};
    rules[1] = {RuleIndex{1}, {1.0}, 1.0};

    CHECK(dfs::fs_eval(rules, partition, std::vector<double>{0.0}) == 0.0);
    CHECK(dfs::fs_eval(rules, partition, std::vector<double>{1.0}) == 1.0);
    CHECK(dfs::fs_eval(rules, partition, std::vector<double>{0.25}) == doctest::Approx(0.25));

    std::mt19937 rng(2);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = dfs::fs_eval(rules, partition, std::vector<double>{uni(rng)});
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("fs_eval: equal centroids give a constant system") {
    const FuzzyPartition partition = unit_partition(2, 3);
    std::vector<dfs::ZeroOrderRule> rules;
    for (const auto& j : dfs::enumerate_rules(partition))
        rules.push_back({j, dfs::rule_center(partition, j), 4.5});
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const std::vector<double> x{uni(rng), uni(rng)};
        CHECK(dfs::fs_eval(rules, partition, x) == doctest::Approx(4.5).epsilon(1e-14));
    }
}

TEST_CASE("rule enumeration is lexicographic and complete") {
    CHECK(dfs::enumerate_rules(unit_partition(1, 3)) ==
          std::vector<RuleIndex>{{0}, {1}, {2}});
    CHECK(dfs::enumerate_rules(unit_partition(2, 2)) ==
          std::vector<RuleIndex>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(dfs::enumerate_rules(unit_partition(4, 3)).size() == 81);
}

TEST_CASE("select_top_fired basics") {
    const FuzzyPartition partition = unit_partition(1, 3);
    const auto candidates = dfs::enumerate_rules(partition);
    const std::vector<std::vector<double>> data{{0.1}, {0.15}, {0.2}, {0.9}};

    CHECK(dfs::select_top_fired(partition, candidates, data, candidates.size()) == candidates);

    // Points cluster near 0, so the left set accumulates the most firing.
    const auto top1 = dfs::select_top_fired(partition, candidates, data, 1);
    REQUIRE(top1.size() == 1);
    CHECK(top1[0] == RuleIndex{0});

    CHECK_THROWS_AS(dfs::select_top_fired(partition, candidates, {}, 1), dfs::ContractViolation);
}

TEST_CASE("select_top_fired ignores candidate order") {
    const FuzzyPartition partition = unit_partition(2, 3);
    auto candidates = dfs::enumerate_rules(partition);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<std::vector<double>> data(50);
    for (auto& x : data) x = {uni(rng), uni(rng)};

    const auto baseline = dfs::select_top_fired(partition, candidates, data, 5);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(candidates.begin(), candidates.end(), rng);
        CHECK(dfs::select_top_fired(partition, candidates, data, 5) == baseline);
    }
}
