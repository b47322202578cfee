#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dfs/disturbed.hpp"
#include "dfs/errors.hpp"
#include "dfs/fuzzy.hpp"
#include "dfs/taylor.hpp"

using dfs::DfsModel;
using dfs::ForecastMode;
using dfs::TaylorCoefficients;
using dfs::TaylorStepConfig;

namespace {

// Model of x' = c over a wide partition with one input per lag: every rule
// holds the same constant derivative and zero higher coefficients.
DfsModel constant_slope_model(double c, double lo, double hi, int dims = 2) {
    DfsModel model;
    std::vector<std::pair<double, double>> intervals(static_cast<std::size_t>(dims), {lo, hi});
    std::vector<int> counts(static_cast<std::size_t>(dims), 2);
    model.partition = dfs::make_uniform_partition(intervals, counts);
    model.order_r = 3;
    model.order_s = 3;
    for (const auto& j : dfs::enumerate_rules(model.partition)) {
        dfs::DisturbedRule rule;
        rule.index = j;
        rule.center = dfs::rule_center(model.partition, j);
        rule.polys.a = {1.0, 0.0, 0.0, 0.0};
        rule.polys.b = {c, 0.0, 0.0, 0.0};
        model.rules.push_back(std::move(rule));
    }
    return model;
}

}  // namespace

TEST_CASE("taylor step: zero coefficients fix the state") {
    TaylorCoefficients coeffs{{0.0, 0.0, 0.0}};
    CHECK(dfs::taylor_step(coeffs, 1.7, {3, 0.25}) == 1.7);
}

TEST_CASE("taylor step: order one is the Euler update") {
    TaylorCoefficients coeffs{{2.5}};
    CHECK(dfs::taylor_step(coeffs, 1.0, {1, 0.1}) == doctest::Approx(1.25));
}

TEST_CASE("taylor step: exact coefficients of x' = -x truncate the exponential") {
    // x(t) = e^(-t) from x=1: values[i] = x^(i+1)(0) = (-1)^(i+1).
    TaylorCoefficients coeffs{{-1.0, 1.0, -1.0, 1.0}};
    const double h = 0.1;
    double expected = 1.0;
    double term = 1.0;
    for (int k = 1; k <= 4; ++k) {
        term *= -h / static_cast<double>(k);
        expected += term;
    }
    CHECK(dfs::taylor_step(coeffs, 1.0, {4, h}) == doctest::Approx(expected).epsilon(1e-15));
    // The truncation sits within O(h^5) of e^(-h).
    CHECK(std::abs(dfs::taylor_step(coeffs, 1.0, {4, h}) - std::exp(-h)) < 1e-7);
}

TEST_CASE("taylor step: shorter orders are prefixes of longer ones") {
    TaylorCoefficients coeffs{{0.3, -0.2, 0.15, 0.07}};
    const double h = 0.4;
    double prev = dfs::taylor_step(coeffs, 2.0, {1, h});
    for (int nu = 2; nu <= 4; ++nu) {
        const double cur = dfs::taylor_step(coeffs, 2.0, {nu, h});
        // Appending one summand only adds the new term; recompute it directly.
        double weight = h;
        for (int i = 1; i < nu; ++i) weight *= h / static_cast<double>(i + 1);
        CHECK(cur - prev ==
              doctest::Approx(coeffs.values[static_cast<std::size_t>(nu - 1)] * weight)
                  .epsilon(1e-13));
        prev = cur;
    }
}

TEST_CASE("taylor step: invalid order rejected") {
    TaylorCoefficients coeffs{{1.0, 2.0}};
    CHECK_THROWS_AS(dfs::taylor_step(coeffs, 0.0, {0, 0.1}), dfs::ContractViolation);
    CHECK_THROWS_AS(dfs::taylor_step(coeffs, 0.0, {3, 0.1}), dfs::ContractViolation);
}

TEST_CASE("convergence order probe on the exponential") {
    auto coeffs_at = [](double x) {
        // x' = -x: values[i] = x^(i+1) = (-1)^(i+1) x.
        TaylorCoefficients c;
        for (int i = 0; i < 4; ++i) c.values.push_back(((i % 2 == 0) ? -1.0 : 1.0) * x);
        return c;
    };
    auto flow = [](double x, double h) { return x * std::exp(-h); };
    const std::vector<double> steps{0.1, 0.05, 0.025, 0.0125};
    for (int nu : {1, 2, 3}) {
        const auto slope = dfs::convergence_order_probe(coeffs_at, flow, 1.0, nu, steps);
        REQUIRE(slope.has_value());
        CHECK(*slope == doctest::Approx(static_cast<double>(nu) + 1.0).epsilon(0.05));
    }
}

TEST_CASE("convergence order probe: x' = 0 is degenerate") {
    auto coeffs_at = [](double) { return TaylorCoefficients{{0.0, 0.0, 0.0, 0.0}}; };
    auto flow = [](double x, double) { return x; };
    const std::vector<double> steps{0.1, 0.05, 0.025};
    CHECK_FALSE(dfs::convergence_order_probe(coeffs_at, flow, 1.0, 2, steps).has_value());
}

TEST_CASE("forecast: perfect linear model has zero one-step error") {
    // Series x(t) = 0.05 t; the constant-slope model is exact, so every
    // one-step prediction matches truth to round-off.
    const double slope = 0.05;
    const DfsModel model = constant_slope_model(slope, -10.0, 10.0);
    std::vector<double> times, values;
    for (int t = 0; t < 40; ++t) {
        times.push_back(static_cast<double>(t));
        values.push_back(slope * static_cast<double>(t));
    }
    const auto result = dfs::forecast(model, times, values, std::vector<double>{2.0, 0.0}, 10, 20,
                                      {1, 2.0}, ForecastMode::OneStep);
    REQUIRE(result.predicted.size() == 20);
    CHECK(result.coverage_fallbacks == 0);
    for (std::size_t i = 0; i < result.predicted.size(); ++i)
        CHECK(result.predicted[i] == doctest::Approx(result.truth[i]).epsilon(1e-12));
}

TEST_CASE("forecast: free run from a fixed point stays constant") {
    const DfsModel model = constant_slope_model(0.0, -1.0, 1.0);
    std::vector<double> times, values;
    for (int t = 0; t < 30; ++t) {
        times.push_back(static_cast<double>(t));
        values.push_back(0.25);
    }
    const auto result = dfs::forecast(model, times, values, std::vector<double>{1.0, 0.0}, 10, 15,
                                      {2, 1.0}, ForecastMode::FreeRun);
    for (double p : result.predicted) CHECK(p == 0.25);
}

TEST_CASE("forecast: free run tracks the linear model and matches one-step first") {
    const double slope = 0.05;
    const DfsModel model = constant_slope_model(slope, -10.0, 10.0);
    std::vector<double> times, values;
    for (int t = 0; t < 40; ++t) {
        times.push_back(static_cast<double>(t));
        values.push_back(slope * static_cast<double>(t));
    }
    const std::vector<double> lags{2.0, 0.0};
    const auto one = dfs::forecast(model, times, values, lags, 10, 10, {1, 2.0},
                                   ForecastMode::OneStep);
    const auto free = dfs::forecast(model, times, values, lags, 10, 10, {1, 2.0},
                                    ForecastMode::FreeRun);
    CHECK(free.predicted[0] == one.predicted[0]);
    CHECK(free.times[0] == one.times[0]);
    // The model is exact, so even the fed-back states stay on the line.
    for (std::size_t i = 0; i < free.predicted.size(); ++i)
        CHECK(free.predicted[i] == doctest::Approx(free.truth[i]).epsilon(1e-12));
}

TEST_CASE("forecast: precondition checks") {
    const DfsModel model = constant_slope_model(0.0, -1.0, 1.0);
    std::vector<double> times{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> values(6, 0.0);
    const std::vector<double> lags{1.0, 0.0};
    // Step not on the sample grid.
    CHECK_THROWS_AS(dfs::forecast(model, times, values, lags, 3, 1, {1, 0.5},
                                  ForecastMode::OneStep),
                    dfs::ContractViolation);
    // Seed history too short.
    CHECK_THROWS_AS(dfs::forecast(model, times, values, lags, 1, 1, {1, 1.0},
                                  ForecastMode::OneStep),
                    dfs::ContractViolation);
    // Free-run lag not a multiple of the step.
    CHECK_THROWS_AS(dfs::forecast(model, times, values, std::vector<double>{3.0, 0.0}, 5, 1,
                                  {1, 2.0}, ForecastMode::FreeRun),
                    dfs::ContractViolation);
    // One-step mode needs truth for every predicted index.
    CHECK_THROWS_AS(dfs::forecast(model, times, values, lags, 3, 10, {1, 1.0},
                                  ForecastMode::OneStep),
                    dfs::ContractViolation);
}
