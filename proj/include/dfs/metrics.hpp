#ifndef DFS_METRICS_HPP
#define DFS_METRICS_HPP

#include <cstddef>
#include <span>
#include <string>

namespace dfs {

struct ErrorSummary {
    double rmse = 0.0;
    double mse = 0.0;
    double max_abs = 0.0;
    std::size_t n = 0;

    std::string to_string() const;
    std::string to_csv_row() const;  // mse,rmse,max_abs,n
};

// Residual statistics of predicted vs truth; pairwise summation keeps the
// result independent of chunking.
ErrorSummary compare(std::span<const double> predicted, std::span<const double> truth);

}  // namespace dfs

#endif
