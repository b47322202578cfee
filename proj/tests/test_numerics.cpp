#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dfs/errors.hpp"
#include "dfs/numerics.hpp"

using dfs::DenseMatrix;
using dfs::LeastSquaresSolution;

namespace {

double residual_of(const DenseMatrix& A, const std::vector<double>& c,
                   const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < A.cols; ++j) dot += A.at(i, j) * c[j];
        s += (dot - b[i]) * (dot - b[i]);
    }
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("identity system returns rhs") {
    DenseMatrix A(3, 3);
    A.at(0, 0) = A.at(1, 1) = A.at(2, 2) = 1.0;
    const auto sol = dfs::solve_least_squares(A, std::vector<double>{1.0, 2.0, 3.0});
    CHECK(sol.coefficients[0] == doctest::Approx(1.0));
    CHECK(sol.coefficients[1] == doctest::Approx(2.0));
    CHECK(sol.coefficients[2] == doctest::Approx(3.0));
    CHECK(sol.residual_norm == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sol.rank == 3);
}

TEST_CASE("overdetermined column fits the mean") {
    // Normal equations for a single all-ones column: c = mean(b).
    DenseMatrix A(3, 1);
    A.at(0, 0) = A.at(1, 0) = A.at(2, 0) = 1.0;
    const auto sol = dfs::solve_least_squares(A, std::vector<double>{1.0, 2.0, 3.0});
    CHECK(sol.coefficients[0] == doctest::Approx(2.0));
    CHECK(sol.residual_norm == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rank-deficient system gets the minimum-norm solution") {
    DenseMatrix A(2, 2);
    A.at(0, 0) = A.at(0, 1) = 1.0;
    A.at(1, 0) = A.at(1, 1) = 2.0;
    const std::vector<double> b{1.0, 2.0};
    const auto sol = dfs::solve_least_squares(A, b);
    CHECK(sol.rank == 1);
    CHECK(sol.residual_norm == doctest::Approx(0.0).epsilon(1e-12));

    // Brute-force grid scan: no feasible point with zero residual has a
    // smaller norm than (0.5, 0.5).
    double best_norm = 1e300;
    std::vector<double> best{0.0, 0.0};
    for (double u = -1.0; u <= 1.0; u += 1e-3) {
        const std::vector<double> c{u, 1.0 - u};  // the zero-residual line
        const double norm = std::hypot(c[0], c[1]);
        if (norm < best_norm) {
            best_norm = norm;
            best = c;
        }
    }
    CHECK(sol.coefficients[0] == doctest::Approx(best[0]).epsilon(1e-6));
    CHECK(sol.coefficients[1] == doctest::Approx(best[1]).epsilon(1e-6));
}

TEST_CASE("all-zero matrix maps to zero coefficients") {
    DenseMatrix A(3, 2);
    const std::vector<double> b{1.0, 2.0, 2.0};
    const auto sol = dfs::solve_least_squares(A, b);
    CHECK(sol.rank == 0);
    CHECK(sol.coefficients[0] == 0.0);
    CHECK(sol.coefficients[1] == 0.0);
    CHECK(sol.residual_norm == doctest::Approx(3.0));
}

TEST_CASE("dimension mismatch rejected") {
    DenseMatrix A(2, 2);
    CHECK_THROWS_AS(dfs::solve_least_squares(A, std::vector<double>{1.0}),
                    dfs::ContractViolation);
}

TEST_CASE("well-conditioned random square systems solved to 1e-10") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        DenseMatrix A(5, 5);
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) A.at(i, j) = uni(rng);
            A.at(i, i) += 5.0;  // diagonally dominant, well conditioned
        }
        std::vector<double> x_true(5);
        for (double& v : x_true) v = uni(rng);
        std::vector<double> b(5, 0.0);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) b[i] += A.at(i, j) * x_true[j];
        const auto sol = dfs::solve_least_squares(A, b);
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(sol.coefficients[j] ==
                  doctest::Approx(x_true[j]).epsilon(1e-10).scale(std::abs(x_true[j]) + 1.0));
    }
}

TEST_CASE("solution beats random perturbations") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    DenseMatrix A(8, 3);
    std::vector<double> b(8);
    for (double& v : A.data) v = uni(rng);
    for (double& v : b) v = uni(rng);
    const auto sol = dfs::solve_least_squares(A, b);
    std::normal_distribution<double> noise(0.0, 0.1);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> perturbed = sol.coefficients;
        for (double& v : perturbed) v += noise(rng);
        CHECK(residual_of(A, perturbed, b) >= sol.residual_norm - 1e-12);
    }
}

TEST_CASE("finite differences: quadratic second derivative") {
    const double d = dfs::finite_diff_derivative([](double x) { return x * x; }, 0.0, 2, 1e-3);
    CHECK(d == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("finite differences: constants have zero derivatives") {
    for (int order = 1; order <= 4; ++order) {
        const double d =
            dfs::finite_diff_derivative([](double) { return 4.25; }, 1.3, order, 1e-3);
        CHECK(std::abs(d) <= 1e-10);
    }
}

TEST_CASE("finite differences: third derivative of exp") {
    const double d = dfs::finite_diff_derivative([](double x) { return std::exp(x); }, 0.0, 3, 1e-2);
    CHECK(d == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("finite differences exact for low-degree polynomials") {
    // Degree up to order + 1 must come out exact.
    auto poly = [](double x) { return ((2.0 * x - 1.0) * x + 3.0) * x - 0.5; };  // cubic
    const double d2 = dfs::finite_diff_derivative(poly, 0.7, 2, dfs::default_fd_step(0.7));
    const double expected = 12.0 * 0.7 - 2.0;
    CHECK(std::abs(d2 - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));

    // Order 4 amplifies round-off by step^-4, so probe with a wider step; the
    // stencil is still exact for quintics.
    auto quintic = [](double x) { return x * x * x * x * x; };
    const double d4 = dfs::finite_diff_derivative(quintic, 0.3, 4, 0.05);
    const double expected4 = 120.0 * 0.3;
    CHECK(std::abs(d4 - expected4) <= 1e-8 * std::max(1.0, std::abs(expected4)));
}

TEST_CASE("non-finite evaluations propagate") {
    CHECK_THROWS_AS(dfs::finite_diff_derivative([](double) { return std::nan(""); }, 0.0, 1, 1e-3),
                    dfs::NumericalError);
}

TEST_CASE("pairwise sum matches plain sum") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(1000);
    double plain = 0.0;
    for (double& x : v) {
        x = uni(rng);
        plain += x;
    }
    CHECK(dfs::pairwise_sum(v) == doctest::Approx(plain).epsilon(1e-12));
}
