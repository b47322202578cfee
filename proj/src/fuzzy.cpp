#include "dfs/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dfs/errors.hpp"
#include "dfs/numerics.hpp"
#include "dfs/parallel.hpp"

namespace dfs {

double TriangularMembership::eval(double x) const {
    if (x < left) return shoulder_left ? 1.0 : 0.0;
    if (x > right) return shoulder_right ? 1.0 : 0.0;
    if (x == center) return 1.0;
    if (x < center) return center == left ? 1.0 : (x - left) / (center - left);
    return center == right ? 1.0 : (right - x) / (right - center);
}

std::vector<TriangularMembership> build_uniform_partition(double lo, double hi, int count) {
    if (!(lo < hi)) throw ContractViolation("partition: interval must satisfy lo < hi");
    if (count < 2) throw ContractViolation("partition: need at least 2 memberships");

    const double span = hi - lo;
    auto center_of = [&](int k) { return lo + span * k / (count - 1); };

    std::vector<TriangularMembership> mfs(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        TriangularMembership& mf = mfs[static_cast<std::size_t>(k)];
        mf.center = center_of(k);
        mf.left = k == 0 ? mf.center : center_of(k - 1);
        mf.right = k == count - 1 ? mf.center : center_of(k + 1);
        mf.shoulder_left = k == 0;
        mf.shoulder_right = k == count - 1;
    }
    return mfs;
}

FuzzyPartition make_uniform_partition(std::span<const std::pair<double, double>> intervals,
                                      std::span<const int> counts) {
    if (intervals.size() != counts.size())
        throw ContractViolation("partition: interval/count length mismatch");
    FuzzyPartition partition;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        partition.dims.push_back(
            build_uniform_partition(intervals[i].first, intervals[i].second, counts[i]));
        partition.intervals.push_back(intervals[i]);
    }
    return partition;
}

std::vector<double> rule_center(const FuzzyPartition& partition, const RuleIndex& j) {
    std::vector<double> center(partition.dimensions());
    for (std::size_t i = 0; i < center.size(); ++i)
        center[i] = partition.dims[i][static_cast<std::size_t>(j[i])].center;
    return center;
}

double firing_level(const FuzzyPartition& partition, const RuleIndex& j,
                    std::span<const double> x) {
    if (x.size() != partition.dimensions() || j.size() != partition.dimensions())
        throw ContractViolation("firing level: dimension mismatch");
    double level = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        level *= partition.dims[i][static_cast<std::size_t>(j[i])].eval(x[i]);
        if (level == 0.0) return 0.0;
    }
    return level;
}

std::vector<double> normalized_firing(const FuzzyPartition& partition,
                                      const std::vector<RuleIndex>& rules,
                                      std::span<const double> x) {
    std::vector<double> p(rules.size());
    for (std::size_t r = 0; r < rules.size(); ++r) p[r] = firing_level(partition, rules[r], x);
    const double total = pairwise_sum(p);
    if (!(total > 0.0)) throw CoverageHoleError(std::vector<double>(x.begin(), x.end()));
    for (double& v : p) v /= total;
    return p;
}

double fs_eval(const std::vector<ZeroOrderRule>& rules, const FuzzyPartition& partition,
               std::span<const double> x) {
    std::vector<RuleIndex> indices(rules.size());
    for (std::size_t r = 0; r < rules.size(); ++r) indices[r] = rules[r].index;
    const std::vector<double> p = normalized_firing(partition, indices, x);
    std::vector<double> terms(rules.size());
    for (std::size_t r = 0; r < rules.size(); ++r) terms[r] = p[r] * rules[r].theta;
    return pairwise_sum(terms);
}

std::vector<RuleIndex> enumerate_rules(const FuzzyPartition& partition) {
    const std::size_t n = partition.dimensions();
    std::vector<RuleIndex> all;
    RuleIndex current(n, 0);
    while (true) {
        all.push_back(current);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++current[i] < static_cast<int>(partition.dims[i].size())) break;
            current[i] = 0;
            if (i == 0) return all;
        }
        if (n == 0) return all;
    }
}

std::vector<RuleIndex> select_top_fired(const FuzzyPartition& partition,
                                        const std::vector<RuleIndex>& candidates,
                                        const std::vector<std::vector<double>>& data,
                                        std::size_t K) {
    if (K > candidates.size()) throw ContractViolation("rule selection: K exceeds candidate count");
    if (data.empty()) throw ContractViolation("rule selection: empty data");

    const std::vector<double> scores = cumulative_firing(partition, candidates, data);

    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return candidates[a] < candidates[b];
    });

    std::vector<RuleIndex> selected;
    selected.reserve(K);
    for (std::size_t k = 0; k < K; ++k) selected.push_back(candidates[order[k]]);
    std::sort(selected.begin(), selected.end());
    return selected;
}

}  // namespace dfs
