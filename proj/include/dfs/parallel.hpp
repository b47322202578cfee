#ifndef DFS_PARALLEL_HPP
#define DFS_PARALLEL_HPP

#include <vector>

#include "dfs/disturbed.hpp"
#include "dfs/fuzzy.hpp"
#include "dfs/numerics.hpp"

namespace dfs {

// Row-parallel kernels used by training and batch evaluation. Each has a
// serial reference implementation; the OpenMP variants partition rows and
// write disjoint output, so results are bit-identical to the serial path.

// P[k][j] = p_j(x_k), the normalized firing of rule j at data row k.
DenseMatrix firing_matrix_serial(const FuzzyPartition& partition,
                                 const std::vector<RuleIndex>& rules,
                                 const std::vector<std::vector<double>>& points);
DenseMatrix firing_matrix_parallel(const FuzzyPartition& partition,
                                   const std::vector<RuleIndex>& rules,
                                   const std::vector<std::vector<double>>& points);

// T[k][i] = i-th Taylor coefficient of the model at row k, i = 0..order_r.
DenseMatrix taylor_batch_serial(const DfsModel& model, const DenseMatrix& firing);
DenseMatrix taylor_batch_parallel(const DfsModel& model, const DenseMatrix& firing);

// Cumulative firing sum_k A_j(x_k) per candidate rule (unnormalized).
std::vector<double> cumulative_firing_serial(const FuzzyPartition& partition,
                                             const std::vector<RuleIndex>& rules,
                                             const std::vector<std::vector<double>>& points);
std::vector<double> cumulative_firing_parallel(const FuzzyPartition& partition,
                                               const std::vector<RuleIndex>& rules,
                                               const std::vector<std::vector<double>>& points);

// Dispatchers: OpenMP path when compiled in, serial otherwise.
DenseMatrix firing_matrix(const FuzzyPartition& partition, const std::vector<RuleIndex>& rules,
                          const std::vector<std::vector<double>>& points);
DenseMatrix taylor_batch(const DfsModel& model, const DenseMatrix& firing);
std::vector<double> cumulative_firing(const FuzzyPartition& partition,
                                      const std::vector<RuleIndex>& rules,
                                      const std::vector<std::vector<double>>& points);

}  // namespace dfs

#endif
