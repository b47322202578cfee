#include "dfs/taylor.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "dfs/errors.hpp"

namespace dfs {

double taylor_step(const TaylorCoefficients& coeffs, double x_k, const TaylorStepConfig& cfg) {
    if (cfg.nu < 1) throw ContractViolation("taylor step: nu must be >= 1");
    if (static_cast<std::size_t>(cfg.nu) > coeffs.values.size())
        throw ContractViolation("taylor step: nu exceeds available coefficients");
    double x = x_k;
    double weight = cfg.h;  // h^(i+1) / (i+1)!
    for (int i = 0; i < cfg.nu; ++i) {
        x += coeffs.values[static_cast<std::size_t>(i)] * weight;
        weight *= cfg.h / static_cast<double>(i + 2);
    }
    return x;
}

namespace {

std::size_t as_stride(double offset, double spacing, const char* what) {
    const double ratio = offset / spacing;
    const double rounded = std::round(ratio);
    if (rounded < 0.0 || std::abs(ratio - rounded) > 1e-9)
        throw ContractViolation(std::string(what) + " must be a nonnegative multiple of the sample spacing");
    return static_cast<std::size_t>(rounded);
}

}  // namespace

ForecastResult forecast(const DfsModel& model, std::span<const double> times,
                        std::span<const double> values, std::span<const double> lags,
                        std::size_t start_index, std::size_t steps, const TaylorStepConfig& cfg,
                        ForecastMode mode) {
    if (times.size() != values.size() || times.size() < 2)
        throw ContractViolation("forecast: series too short");
    if (lags.empty()) throw ContractViolation("forecast: no lags");
    if (!(cfg.h > 0.0)) throw ContractViolation("forecast: step must be positive");
    if (cfg.nu > model.order_r + 1)
        throw ContractViolation("forecast: nu exceeds model order + 1");

    const double spacing = times[1] - times[0];
    const std::size_t stride = as_stride(cfg.h, spacing, "forecast step");
    if (stride == 0) throw ContractViolation("forecast step must be at least the sample spacing");

    std::vector<std::size_t> lag_strides;
    std::size_t max_lag = 0;
    for (double lag : lags) {
        lag_strides.push_back(as_stride(lag, spacing, "lag"));
        max_lag = std::max(max_lag, lag_strides.back());
    }
    if (start_index < stride + max_lag)
        throw ContractViolation("forecast: seed history too short for the lag vector");

    ForecastResult result;
    result.mode = mode;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    if (mode == ForecastMode::OneStep) {
        if (start_index + steps > times.size())
            throw ContractViolation("forecast: one-step mode needs truth for every step");
        std::vector<double> x(lags.size());
        for (std::size_t t = 0; t < steps; ++t) {
            const std::size_t target = start_index + t;
            const std::size_t base = target - stride;
            for (std::size_t i = 0; i < lags.size(); ++i) x[i] = values[base - lag_strides[i]];
            const TaylorCoefficients coeffs =
                taylor_with_fallback(model, x, &result.coverage_fallbacks);
            const double pred = taylor_step(coeffs, values[base], cfg);
            if (!std::isfinite(pred))
                throw NumericalError("forecast: non-finite prediction at step " + std::to_string(t));
            result.times.push_back(times[target]);
            result.predicted.push_back(pred);
            result.truth.push_back(values[target]);
        }
        return result;
    }

    // Free run: state buffer at stride spacing, newest last, seeded from truth
    // so that the first prediction coincides with one-step mode.
    for (std::size_t ls : lag_strides)
        if (ls % stride != 0)
            throw ContractViolation("forecast: free-run lags must be multiples of the step");
    const std::size_t depth = max_lag / stride + 1;
    const std::size_t base = start_index - stride;
    std::deque<double> buffer;
    for (std::size_t k = depth; k-- > 0;) buffer.push_back(values[base - k * stride]);

    std::vector<double> x(lags.size());
    for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t i = 0; i < lags.size(); ++i)
            x[i] = buffer[buffer.size() - 1 - lag_strides[i] / stride];
        const TaylorCoefficients coeffs = taylor_with_fallback(model, x, &result.coverage_fallbacks);
        const double pred = taylor_step(coeffs, buffer.back(), cfg);
        if (!std::isfinite(pred))
            throw NumericalError("forecast: non-finite prediction at step " + std::to_string(t));
        const std::size_t target = start_index + t * stride;
        result.times.push_back(times[base] + static_cast<double>(t + 1) * cfg.h);
        result.predicted.push_back(pred);
        result.truth.push_back(target < values.size() ? values[target] : nan);
        buffer.push_back(pred);
        buffer.pop_front();
    }
    return result;
}

std::optional<double> convergence_order_probe(
    const std::function<TaylorCoefficients(double)>& coeffs_at,
    const std::function<double(double, double)>& exact_flow, double x0, int nu,
    std::span<const double> steps) {
    if (steps.size() < 2) throw ContractViolation("order probe: need at least two step sizes");

    std::vector<double> log_h, log_e;
    for (double h : steps) {
        const TaylorCoefficients coeffs = coeffs_at(x0);
        const double pred = taylor_step(coeffs, x0, TaylorStepConfig{nu, h});
        const double err = std::abs(exact_flow(x0, h) - pred);
        if (err < 1e-300) continue;  // degenerate: exact step
        log_h.push_back(std::log(h));
        log_e.push_back(std::log(err));
    }
    if (log_h.size() < 2) return std::nullopt;

    const std::size_t n = log_h.size();
    double sh = 0, se = 0, shh = 0, she = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sh += log_h[i];
        se += log_e[i];
        shh += log_h[i] * log_h[i];
        she += log_h[i] * log_e[i];
    }
    const double denom = static_cast<double>(n) * shh - sh * sh;
    return (static_cast<double>(n) * she - sh * se) / denom;
}

}  // namespace dfs
