#ifndef DFS_NUMERICS_HPP
#define DFS_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dfs {

// Dense row-major matrix of doubles.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows*cols entries, row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct LeastSquaresSolution {
    std::vector<double> coefficients;
    double residual_norm = 0.0;
    int rank = 0;
};

// Minimum-norm minimizer of ||A c - b||_2 via column-pivoted orthogonal
// factorization. Pivots below 1e-10 times the largest one count as zero.
// An optional ridge parameter augments the system with sqrt(ridge)*I rows.
LeastSquaresSolution solve_least_squares(const DenseMatrix& A, std::span<const double> b,
                                         double ridge = 0.0);

// Central-difference estimate of d^order f / dx^order at x0, one Richardson
// extrapolation level, order <= 4. Exact (to round-off) for polynomials of
// degree <= order + 3.
double finite_diff_derivative(const std::function<double(double)>& f, double x0, int order,
                              double step);

// Default step 1e-3 * max(1, |x0|).
double default_fd_step(double x0);

// Summation with reduction order independent of chunking.
double pairwise_sum(std::span<const double> values);

// Shortest decimal representation that round-trips the double bit-exactly.
std::string format_double(double v);

}  // namespace dfs

#endif
