#ifndef DFS_TAYLOR_HPP
#define DFS_TAYLOR_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dfs/disturbed.hpp"

namespace dfs {

struct TaylorStepConfig {
    int nu = 1;      // method order, 1 <= nu <= order_r + 1
    double h = 1.0;  // step in series-time units
};

enum class ForecastMode { OneStep, FreeRun };

struct ForecastResult {
    std::vector<double> times;
    std::vector<double> predicted;
    std::vector<double> truth;  // empty when unavailable
    ForecastMode mode = ForecastMode::OneStep;
    std::size_t coverage_fallbacks = 0;
};

// One Taylor step. The model stack approximates f = x' and its derivatives,
// so coeffs.values[i] stands for x^(i+1)(t) and the update is the truncated
// series x(t+h) = x(t) + sum_{i=0}^{nu-1} values[i] h^(i+1) / (i+1)!.
// The (i+1)! (not i!) is what makes the one-step error O(h^(nu+1)); the
// exponential probe test pins this down.
double taylor_step(const TaylorCoefficients& coeffs, double x_k, const TaylorStepConfig& cfg);

// Iterated forecast over a uniformly sampled series. cfg.h must be a positive
// integer multiple of the sample spacing and every lag a multiple of cfg.h.
// Predictions start at series index start_index; one-step mode rebuilds the
// lag vector from truth each step, free-run feeds predictions back. Coverage
// holes fall back to the nearest rule center and are counted.
ForecastResult forecast(const DfsModel& model, std::span<const double> times,
                        std::span<const double> values, std::span<const double> lags,
                        std::size_t start_index, std::size_t steps, const TaylorStepConfig& cfg,
                        ForecastMode mode);

// Slope of log(one-step error) vs log(h) for exact Taylor coefficients
// supplied by coeffs_at and the exact flow x0 -> x(t0 + h). Returns nullopt
// when the error is identically zero (degenerate probe).
std::optional<double> convergence_order_probe(
    const std::function<TaylorCoefficients(double)>& coeffs_at,
    const std::function<double(double, double)>& exact_flow, double x0, int nu,
    std::span<const double> steps);

}  // namespace dfs

#endif
