#include "dfs/mackey_glass.hpp"

#include <cmath>
#include <string>

#include "dfs/errors.hpp"

namespace dfs {

namespace {

std::size_t exact_stride(double offset, double step, const char* what) {
    const double ratio = offset / step;
    const double rounded = std::round(ratio);
    if (rounded < 0.0 || std::abs(ratio - rounded) > 1e-9)
        throw ContractViolation(std::string(what) + " must be a nonnegative multiple of " +
                                std::to_string(step));
    return static_cast<std::size_t>(rounded);
}

double checked_denominator(double z, double c) {
    const double den = 1.0 + std::pow(z, c);
    if (std::abs(den) < 1e-12) throw NumericalError("mackey-glass: vanishing denominator");
    return den;
}

}  // namespace

double mg_rhs(double x_now, double x_delayed, const MgParams& p) {
    return p.a * x_delayed / checked_denominator(x_delayed, p.c) - p.b * x_now;
}

double mg_g1(double z, const MgParams& p) {
    const double u = std::pow(z, p.c);
    const double d = checked_denominator(z, p.c);
    return p.a * (1.0 + (1.0 - p.c) * u) / (d * d);
}

double mg_g2(double z, const MgParams& p) {
    const double u = std::pow(z, p.c);
    const double d = checked_denominator(z, p.c);
    return -p.a * p.c * std::pow(z, p.c - 1.0) * ((1.0 + p.c) + (1.0 - p.c) * u) / (d * d * d);
}

double mg_g3(double z, const MgParams& p) {
    const double c = p.c;
    const double d = checked_denominator(z, c);
    const double c2m1 = c * c - 1.0;
    const double poly = c2m1 * std::pow(z, c - 2.0) - (4.0 * c * c + 2.0) * std::pow(z, 2.0 * c - 2.0) +
                        c2m1 * std::pow(z, 3.0 * c - 2.0);
    return -p.a * c * poly / (d * d * d * d);
}

MgGrid integrate_grid(const MgParams& p, double t_end) {
    if (!(p.dt > 0.0)) throw ContractViolation("mackey-glass: dt must be positive");
    if (p.tau < 0.0) throw ContractViolation("mackey-glass: tau must be nonnegative");
    const std::size_t delay = p.tau > 0.0 ? exact_stride(p.tau, p.dt, "tau") : 0;
    if (p.tau > 0.0 && delay == 0) throw ContractViolation("mackey-glass: tau must be >= dt");

    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / p.dt - 1e-9));
    MgGrid grid;
    grid.dt = p.dt;
    grid.x.resize(steps + 1);
    grid.x[0] = p.x0;

    // x(t) = 0 for t < 0.
    auto delayed = [&](std::ptrdiff_t idx) { return idx < 0 ? 0.0 : grid.x[static_cast<std::size_t>(idx)]; };

    for (std::size_t k = 0; k < steps; ++k) {
        const double x = grid.x[k];
        double k1, k2, k3, k4;
        if (delay == 0) {
            // Degenerate ODE: the delayed argument is the stage value itself.
            k1 = mg_rhs(x, x, p);
            const double y2 = x + 0.5 * p.dt * k1;
            k2 = mg_rhs(y2, y2, p);
            const double y3 = x + 0.5 * p.dt * k2;
            k3 = mg_rhs(y3, y3, p);
            const double y4 = x + p.dt * k3;
            k4 = mg_rhs(y4, y4, p);
        } else {
            const std::ptrdiff_t di = static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(delay);
            const double z0 = delayed(di);
            const double z1 = delayed(di + 1);
            const double zh = 0.5 * (z0 + z1);  // linear interpolation at the half step
            k1 = mg_rhs(x, z0, p);
            k2 = mg_rhs(x + 0.5 * p.dt * k1, zh, p);
            k3 = mg_rhs(x + 0.5 * p.dt * k2, zh, p);
            k4 = mg_rhs(x + p.dt * k3, z1, p);
        }
        grid.x[k + 1] = x + p.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(grid.x[k + 1]))
            throw NumericalError("mackey-glass: non-finite state at t=" +
                                 std::to_string((k + 1) * p.dt));
    }
    return grid;
}

namespace {

MgSeries sample_grid(const MgGrid& grid, const MgParams& p) {
    const std::size_t stride = exact_stride(p.spacing, grid.dt, "sample spacing");
    const std::size_t offset = exact_stride(p.washout, grid.dt, "washout");
    MgSeries series;
    series.times.reserve(p.samples);
    series.x.reserve(p.samples);
    for (std::size_t i = 0; i < p.samples; ++i) {
        const std::size_t idx = offset + i * stride;
        if (idx >= grid.x.size()) throw ContractViolation("mackey-glass: grid shorter than requested samples");
        series.times.push_back(p.washout + static_cast<double>(i) * p.spacing);
        series.x.push_back(grid.x[idx]);
    }
    return series;
}

double grid_t_end(const MgParams& p) {
    if (p.samples == 0) throw ContractViolation("mackey-glass: need at least one sample");
    return p.washout + static_cast<double>(p.samples - 1) * p.spacing;
}

}  // namespace

MgSeries integrate(const MgParams& p) { return sample_grid(integrate_grid(p, grid_t_end(p)), p); }

void derivative_series(MgSeries& series, const MgGrid& grid, const MgParams& p) {
    const std::size_t n = grid.x.size();
    const std::size_t delay = p.tau > 0.0 ? exact_stride(p.tau, grid.dt, "tau") : 0;

    auto value = [&](const std::vector<double>& col, std::ptrdiff_t idx) {
        return idx < 0 ? 0.0 : col[static_cast<std::size_t>(idx)];
    };

    std::vector<double> x1(n), x2(n), x3(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::ptrdiff_t di =
            delay == 0 ? static_cast<std::ptrdiff_t>(k)
                       : static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(delay);
        const double z = value(grid.x, di);
        x1[k] = mg_rhs(grid.x[k], z, p);
        const double x1d = value(x1, di);
        x2[k] = -p.b * x1[k] + mg_g1(z, p) * x1d;
        const double x2d = value(x2, di);
        x3[k] = -p.b * x2[k] + mg_g2(z, p) * x1d * x1d + mg_g1(z, p) * x2d;
    }

    const std::size_t stride = exact_stride(p.spacing, grid.dt, "sample spacing");
    const std::size_t offset = exact_stride(p.washout, grid.dt, "washout");
    series.x1.resize(series.size());
    series.x2.resize(series.size());
    series.x3.resize(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::size_t idx = offset + i * stride;
        series.x1[i] = x1[idx];
        series.x2[i] = x2[idx];
        series.x3[i] = x3[idx];
    }
}

double fourth_derivative(const MgSeries& series, const MgParams& p, std::size_t k) {
    if (series.x3.size() != series.size())
        throw ContractViolation("mackey-glass: derivative columns not filled");
    const std::size_t delay = p.tau > 0.0 ? exact_stride(p.tau, p.spacing, "tau") : 0;
    if (k < delay) throw ContractViolation("mackey-glass: fourth derivative needs tau of history");
    const std::size_t d = k - delay;
    const double z = series.x[d];
    const double x1d = series.x1[d];
    const double x2d = series.x2[d];
    const double x3d = series.x3[d];
    return -p.b * series.x3[k] + mg_g3(z, p) * x1d * x1d * x1d +
           3.0 * mg_g2(z, p) * x1d * x2d + mg_g1(z, p) * x3d;
}

MgSeries generate_series(const MgParams& p) {
    const MgGrid grid = integrate_grid(p, grid_t_end(p));
    MgSeries series = sample_grid(grid, p);
    derivative_series(series, grid, p);
    return series;
}

std::pair<DelayEmbeddedDataset, DelayEmbeddedDataset> build_embedding(
    const MgSeries& series, const MgParams& p, const std::vector<double>& lags, double horizon,
    std::size_t train_count, std::size_t test_count, int order_r) {
    if (order_r < 0 || order_r > 3)
        throw ContractViolation("embedding: derivative targets available for r <= 3 only");
    if (lags.empty()) throw ContractViolation("embedding: no lags");
    if (series.size() == 0 || series.x1.size() != series.size())
        throw ContractViolation("embedding: series missing derivative columns");

    std::size_t max_lag = 0;
    std::vector<std::size_t> strides;
    for (double lag : lags) {
        strides.push_back(exact_stride(lag, p.spacing, "lag"));
        max_lag = std::max(max_lag, strides.back());
    }
    if (train_count <= max_lag || train_count + test_count > series.size())
        throw ContractViolation("embedding: series too short for the requested split");

    auto make_rows = [&](std::size_t lo, std::size_t hi) {
        DelayEmbeddedDataset ds;
        ds.lags = lags;
        ds.horizon = horizon;
        for (std::size_t base = lo; base < hi; ++base) {
            TrainingRow row;
            row.x.resize(lags.size());
            for (std::size_t i = 0; i < lags.size(); ++i) row.x[i] = series.x[base - strides[i]];
            row.targets.resize(static_cast<std::size_t>(order_r) + 1);
            if (order_r >= 0) row.targets[0] = series.x1[base];
            if (order_r >= 1) row.targets[1] = series.x2[base];
            if (order_r >= 2) row.targets[2] = series.x3[base];
            if (order_r >= 3) row.targets[3] = fourth_derivative(series, p, base);
            ds.rows.push_back(std::move(row));
        }
        return ds;
    };

    return {make_rows(max_lag, train_count), make_rows(train_count, train_count + test_count)};
}

}  // namespace dfs
