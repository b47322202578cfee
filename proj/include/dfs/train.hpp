#ifndef DFS_TRAIN_HPP
#define DFS_TRAIN_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dfs/disturbed.hpp"
#include "dfs/fuzzy.hpp"

namespace dfs {

// One training sample: inputs x and targets[i] = f^(i)(x), i = 0..r.
struct TrainingRow {
    std::vector<double> x;
    std::vector<double> targets;
};

struct DelayEmbeddedDataset {
    std::vector<TrainingRow> rows;
    std::vector<double> lags;  // time offsets forming x, largest first
    double horizon = 0.0;

    std::vector<std::vector<double>> inputs() const;
};

struct TrainingReport {
    std::vector<double> residual_norms;  // ||E_i||_2 for i = 0..r, post-solve
    std::size_t rule_count = 0;
    std::vector<int> solve_ranks;  // rank per a-order least squares
    std::vector<std::string> warnings;

    std::string to_string() const;
};

// DFSLA Step-1: per-order least-squares fit of the b-coefficients against the
// targets over the data; a initialized to the unit vector. Throws
// DeadRuleError when a rule never fires on the data.
std::vector<DisturbedRule> assign_b_coefficients(const FuzzyPartition& partition,
                                                 const std::vector<RuleIndex>& rules,
                                                 const DelayEmbeddedDataset& data, int order_r,
                                                 int order_s, double ridge = 0.0);

// Per-row derivative approximation residual
//   E_i(x_k) = sum_j p_j (b_i^j - targets_i)
//            - sum_{m=1..min(i,s)} sum_j p_j a_m^j (b_{i-m}^j - values_{i-m}).
std::vector<double> residual_E(const DfsModel& model, const DelayEmbeddedDataset& data, int order);

// DFSLA Step-2 for one order i >= 1: least-squares solve for a_i^j against the
// residual with the a_i terms excluded; updates the model in place.
void solve_a_order(DfsModel& model, const DelayEmbeddedDataset& data, int order,
                   TrainingReport& report, double ridge = 0.0);

// Full DFSLA: Step-1, then Step-2 for i = 1..min(r, s).
std::pair<DfsModel, TrainingReport> dfsla_train(const FuzzyPartition& partition,
                                                const std::vector<RuleIndex>& rules,
                                                const DelayEmbeddedDataset& data, int order_r,
                                                int order_s, double ridge = 0.0);

}  // namespace dfs

#endif
