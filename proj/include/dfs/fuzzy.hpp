#ifndef DFS_FUZZY_HPP
#define DFS_FUZZY_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dfs {

// Triangular (hat) membership function. Boundary sets can be clipped into
// shoulders: the value is held at 1 on the far side of the center so that
// inputs slightly outside the design interval still fire.
struct TriangularMembership {
    double left = 0.0;
    double center = 0.0;
    double right = 0.0;
    bool shoulder_left = false;
    bool shoulder_right = false;

    double eval(double x) const;
};

// Per-dimension ordered, complete, consistent membership collections.
struct FuzzyPartition {
    std::vector<std::vector<TriangularMembership>> dims;
    std::vector<std::pair<double, double>> intervals;

    std::size_t dimensions() const { return dims.size(); }
};

// Per-dimension membership indices, 0-based.
using RuleIndex = std::vector<int>;

struct ZeroOrderRule {
    RuleIndex index;
    std::vector<double> center;
    double theta = 0.0;
};

// count >= 2 memberships with equally spaced centers on [lo, hi], 50% overlap,
// shoulder-clipped at both boundaries.
std::vector<TriangularMembership> build_uniform_partition(double lo, double hi, int count);

// Uniform partition across all dimensions.
FuzzyPartition make_uniform_partition(std::span<const std::pair<double, double>> intervals,
                                      std::span<const int> counts);

std::vector<double> rule_center(const FuzzyPartition& partition, const RuleIndex& j);

// Product T-norm of the per-dimension membership values.
double firing_level(const FuzzyPartition& partition, const RuleIndex& j,
                    std::span<const double> x);

// Normalized firing vector over an active rule set. Throws CoverageHoleError
// when no rule fires at x.
std::vector<double> normalized_firing(const FuzzyPartition& partition,
                                      const std::vector<RuleIndex>& rules,
                                      std::span<const double> x);

// Center-average defuzzified output of a zero-order system.
double fs_eval(const std::vector<ZeroOrderRule>& rules, const FuzzyPartition& partition,
               std::span<const double> x);

// All index combinations in lexicographic order.
std::vector<RuleIndex> enumerate_rules(const FuzzyPartition& partition);

// The K candidates with largest cumulative firing over the data, ties broken
// lexicographically, result sorted lexicographically.
std::vector<RuleIndex> select_top_fired(const FuzzyPartition& partition,
                                        const std::vector<RuleIndex>& candidates,
                                        const std::vector<std::vector<double>>& data,
                                        std::size_t K);

}  // namespace dfs

#endif
