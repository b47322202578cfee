#include "dfs/numerics.hpp"

#include <lapacke.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>

#include "dfs/errors.hpp"

namespace dfs {

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

LeastSquaresSolution solve_least_squares(const DenseMatrix& A, std::span<const double> b,
                                         double ridge) {
    if (A.rows == 0) throw ContractViolation("least squares: empty system");
    if (A.data.size() != A.rows * A.cols)
        throw ContractViolation("least squares: matrix shape mismatch");
    if (b.size() != A.rows) throw ContractViolation("least squares: rhs length mismatch");
    for (double v : A.data)
        if (!std::isfinite(v)) throw ContractViolation("least squares: non-finite matrix entry");
    for (double v : b)
        if (!std::isfinite(v)) throw ContractViolation("least squares: non-finite rhs entry");

    const std::size_t n = A.cols;
    const std::size_t m = ridge > 0.0 ? A.rows + n : A.rows;

    // Work copy, optionally augmented with sqrt(ridge) * I.
    std::vector<double> work(m * n, 0.0);
    std::copy(A.data.begin(), A.data.end(), work.begin());
    if (ridge > 0.0) {
        const double s = std::sqrt(ridge);
        for (std::size_t j = 0; j < n; ++j) work[(A.rows + j) * n + j] = s;
    }

    std::vector<double> rhs(std::max(m, n), 0.0);
    std::copy(b.begin(), b.end(), rhs.begin());

    std::vector<lapack_int> jpvt(n, 0);
    lapack_int rank = 0;
    // Column-pivoted orthogonal factorization, minimum-norm solution.
    const lapack_int info = LAPACKE_dgelsy(
        LAPACK_ROW_MAJOR, static_cast<lapack_int>(m), static_cast<lapack_int>(n), 1, work.data(),
        static_cast<lapack_int>(n), rhs.data(), 1, jpvt.data(), 1e-10, &rank);
    if (info != 0) throw NumericalError("least squares factorization failed");

    LeastSquaresSolution sol;
    sol.rank = static_cast<int>(rank);
    sol.coefficients.assign(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(n));
    if (rank == 0) std::fill(sol.coefficients.begin(), sol.coefficients.end(), 0.0);

    std::vector<double> res(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < n; ++j) dot += A.at(i, j) * sol.coefficients[j];
        res[i] = (dot - b[i]) * (dot - b[i]);
    }
    sol.residual_norm = std::sqrt(pairwise_sum(res));
    return sol;
}

double default_fd_step(double x0) { return 1e-3 * std::max(1.0, std::abs(x0)); }

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

// Central stencil of the given order at step h, O(h^2) truncation.
double central_diff(const std::function<double(double)>& f, double x0, int order, double h) {
    auto ev = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) throw NumericalError("finite differences: non-finite evaluation");
        return v;
    };
    switch (order) {
        case 0:
            return ev(x0);
        case 1:
            return (ev(x0 + h) - ev(x0 - h)) / (2.0 * h);
        case 2:
            return (ev(x0 + h) - 2.0 * ev(x0) + ev(x0 - h)) / (h * h);
        case 3:
            return (ev(x0 + 2.0 * h) - 2.0 * ev(x0 + h) + 2.0 * ev(x0 - h) - ev(x0 - 2.0 * h)) /
                   (2.0 * h * h * h);
        case 4:
            return (ev(x0 + 2.0 * h) - 4.0 * ev(x0 + h) + 6.0 * ev(x0) - 4.0 * ev(x0 - h) +
                    ev(x0 - 2.0 * h)) /
                   (h * h * h * h);
        default:
            throw ContractViolation("finite differences: order must be 0..4");
    }
}

}  // namespace

double finite_diff_derivative(const std::function<double(double)>& f, double x0, int order,
                              double step) {
    if (order < 0 || order > 4) throw ContractViolation("finite differences: order must be 0..4");
    if (!(step > 0.0)) throw ContractViolation("finite differences: step must be positive");
    if (order == 0) return central_diff(f, x0, 0, step);
    const double coarse = central_diff(f, x0, order, step);
    const double fine = central_diff(f, x0, order, step / 2.0);
    return (4.0 * fine - coarse) / 3.0;
}

}  // namespace dfs
