// Timing comparison of the serial reference kernels against the OpenMP
// variants on a synthetic benchmark-sized workload.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "dfs/disturbed.hpp"
#include "dfs/fuzzy.hpp"
#include "dfs/parallel.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
double best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto start = Clock::now();
        fn();
        best = std::min(best, ms_since(start));
    }
    return best;
}

}  // namespace

int main() {
    constexpr std::size_t kRows = 200000;
    constexpr int kDims = 4;
    constexpr int kSetsPerDim = 3;
    constexpr std::size_t kRules = 61;
    constexpr int kOrder = 3;

    std::vector<std::pair<double, double>> intervals(kDims, {0.0, 1.0});
    std::vector<int> counts(kDims, kSetsPerDim);
    const dfs::FuzzyPartition partition = dfs::make_uniform_partition(intervals, counts);
    std::vector<dfs::RuleIndex> all = dfs::enumerate_rules(partition);

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coeff(-0.5, 0.5);

    std::vector<std::vector<double>> points(kRows, std::vector<double>(kDims));
    for (auto& x : points)
        for (double& v : x) v = unit(rng);

    dfs::DfsModel model;
    model.partition = partition;
    model.order_r = kOrder;
    model.order_s = kOrder;
    for (std::size_t r = 0; r < kRules; ++r) {
        dfs::DisturbedRule rule;
        rule.index = all[r];
        rule.center = dfs::rule_center(partition, rule.index);
        rule.polys.a.assign(kOrder + 1, 0.0);
        rule.polys.a[0] = 1.0;
        for (int i = 1; i <= kOrder; ++i) rule.polys.a[static_cast<std::size_t>(i)] = coeff(rng);
        rule.polys.b.resize(kOrder + 1);
        for (double& v : rule.polys.b) v = coeff(rng);
        model.rules.push_back(std::move(rule));
    }
    const std::vector<dfs::RuleIndex> rules = dfs::rule_indices(model);

    std::printf("%zu rows, %zu rules, order %d\n\n", kRows, kRules, kOrder);
    std::printf("%-24s %12s %12s %8s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");

    dfs::DenseMatrix firing;
    {
        const double ts = best_of(3, [&] { firing = dfs::firing_matrix_serial(partition, rules, points); });
        dfs::DenseMatrix check;
        const double tp = best_of(3, [&] { check = dfs::firing_matrix_parallel(partition, rules, points); });
        const bool same = check.data == firing.data;
        std::printf("%-24s %12.1f %12.1f %7.2fx%s\n", "firing_matrix", ts, tp, ts / tp,
                    same ? "" : "  MISMATCH");
    }
    {
        dfs::DenseMatrix ref, check;
        const double ts = best_of(3, [&] { ref = dfs::taylor_batch_serial(model, firing); });
        const double tp = best_of(3, [&] { check = dfs::taylor_batch_parallel(model, firing); });
        const bool same = check.data == ref.data;
        std::printf("%-24s %12.1f %12.1f %7.2fx%s\n", "taylor_batch", ts, tp, ts / tp,
                    same ? "" : "  MISMATCH");
    }
    {
        std::vector<double> ref, check;
        const double ts = best_of(3, [&] { ref = dfs::cumulative_firing_serial(partition, rules, points); });
        const double tp = best_of(3, [&] { check = dfs::cumulative_firing_parallel(partition, rules, points); });
        const bool same = check == ref;
        std::printf("%-24s %12.1f %12.1f %7.2fx%s\n", "cumulative_firing", ts, tp, ts / tp,
                    same ? "" : "  MISMATCH");
    }
    return 0;
}
