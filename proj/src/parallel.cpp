#include "dfs/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdint>

#include "dfs/errors.hpp"

namespace dfs {

namespace {

void firing_row(const FuzzyPartition& partition, const std::vector<RuleIndex>& rules,
                const std::vector<double>& x, double* out) {
    std::vector<double> firing(rules.size());
    for (std::size_t r = 0; r < rules.size(); ++r) firing[r] = firing_level(partition, rules[r], x);
    const double total = pairwise_sum(firing);
    if (!(total > 0.0)) throw CoverageHoleError(x);
    for (std::size_t r = 0; r < rules.size(); ++r) out[r] = firing[r] / total;
}

}  // namespace

DenseMatrix firing_matrix_serial(const FuzzyPartition& partition,
                                 const std::vector<RuleIndex>& rules,
                                 const std::vector<std::vector<double>>& points) {
    DenseMatrix P(points.size(), rules.size());
    for (std::size_t k = 0; k < points.size(); ++k)
        firing_row(partition, rules, points[k], &P.data[k * P.cols]);
    return P;
}

DenseMatrix firing_matrix_parallel(const FuzzyPartition& partition,
                                   const std::vector<RuleIndex>& rules,
                                   const std::vector<std::vector<double>>& points) {
    DenseMatrix P(points.size(), rules.size());
    std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(points.size()); ++k) {
        try {
            firing_row(partition, rules, points[static_cast<std::size_t>(k)],
                       &P.data[static_cast<std::size_t>(k) * P.cols]);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return P;
}

DenseMatrix taylor_batch_serial(const DfsModel& model, const DenseMatrix& firing) {
    const std::size_t width = static_cast<std::size_t>(model.order_r) + 1;
    DenseMatrix T(firing.rows, width);
    for (std::size_t k = 0; k < firing.rows; ++k) {
        const TaylorCoefficients coeffs = taylor_from_firing(
            model, std::span<const double>(&firing.data[k * firing.cols], firing.cols));
        for (std::size_t i = 0; i < width; ++i) T.at(k, i) = coeffs.values[i];
    }
    return T;
}

DenseMatrix taylor_batch_parallel(const DfsModel& model, const DenseMatrix& firing) {
    const std::size_t width = static_cast<std::size_t>(model.order_r) + 1;
    DenseMatrix T(firing.rows, width);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(firing.rows); ++k) {
        const std::size_t row = static_cast<std::size_t>(k);
        const TaylorCoefficients coeffs = taylor_from_firing(
            model, std::span<const double>(&firing.data[row * firing.cols], firing.cols));
        for (std::size_t i = 0; i < width; ++i) T.at(row, i) = coeffs.values[i];
    }
    return T;
}

namespace {

std::vector<double> cumulative_from_levels(const std::vector<RuleIndex>& rules,
                                           const DenseMatrix& levels) {
    // Column-wise pairwise sums over the row-major level matrix.
    std::vector<double> scores(rules.size());
    std::vector<double> column(levels.rows);
    for (std::size_t r = 0; r < rules.size(); ++r) {
        for (std::size_t k = 0; k < levels.rows; ++k) column[k] = levels.at(k, r);
        scores[r] = pairwise_sum(column);
    }
    return scores;
}

}  // namespace

std::vector<double> cumulative_firing_serial(const FuzzyPartition& partition,
                                             const std::vector<RuleIndex>& rules,
                                             const std::vector<std::vector<double>>& points) {
    DenseMatrix levels(points.size(), rules.size());
    for (std::size_t k = 0; k < points.size(); ++k)
        for (std::size_t r = 0; r < rules.size(); ++r)
            levels.at(k, r) = firing_level(partition, rules[r], points[k]);
    return cumulative_from_levels(rules, levels);
}

std::vector<double> cumulative_firing_parallel(const FuzzyPartition& partition,
                                               const std::vector<RuleIndex>& rules,
                                               const std::vector<std::vector<double>>& points) {
    DenseMatrix levels(points.size(), rules.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(points.size()); ++k)
        for (std::size_t r = 0; r < rules.size(); ++r)
            levels.at(static_cast<std::size_t>(k), r) =
                firing_level(partition, rules[r], points[static_cast<std::size_t>(k)]);
    return cumulative_from_levels(rules, levels);
}

DenseMatrix firing_matrix(const FuzzyPartition& partition, const std::vector<RuleIndex>& rules,
                          const std::vector<std::vector<double>>& points) {
#ifdef _OPENMP
    return firing_matrix_parallel(partition, rules, points);
#else
    return firing_matrix_serial(partition, rules, points);
#endif
}

DenseMatrix taylor_batch(const DfsModel& model, const DenseMatrix& firing) {
#ifdef _OPENMP
    return taylor_batch_parallel(model, firing);
#else
    return taylor_batch_serial(model, firing);
#endif
}

std::vector<double> cumulative_firing(const FuzzyPartition& partition,
                                      const std::vector<RuleIndex>& rules,
                                      const std::vector<std::vector<double>>& points) {
#ifdef _OPENMP
    return cumulative_firing_parallel(partition, rules, points);
#else
    return cumulative_firing_serial(partition, rules, points);
#endif
}

}  // namespace dfs
