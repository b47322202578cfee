#ifndef DFS_MACKEY_GLASS_HPP
#define DFS_MACKEY_GLASS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "dfs/train.hpp"

namespace dfs {

struct MgParams {
    double a = 0.2;
    double b = 0.1;
    double c = 10.0;
    double tau = 17.0;  // delay; tau/dt must land on the grid
    double dt = 0.1;
    double x0 = 1.2;
    double washout = 118.0;      // first sampled time
    std::size_t samples = 1000;  // unit-spaced output rows
    double spacing = 1.0;

    bool operator==(const MgParams&) const = default;
};

// Output series sampled at `spacing`: value and first three time derivatives.
struct MgSeries {
    std::vector<double> times;
    std::vector<double> x, x1, x2, x3;

    std::size_t size() const { return times.size(); }
};

// Fine integration grid; index k holds x(k * dt), with x = 0 for t < 0 kept
// implicitly by the delayed-lookup helpers.
struct MgGrid {
    double dt = 0.1;
    std::vector<double> x;
};

// Division-form right-hand side a*x_d / (1 + x_d^c) - b*x.
double mg_rhs(double x_now, double x_delayed, const MgParams& p);

// Derivatives of G(z) = a z / (1 + z^c) with respect to the delayed argument.
double mg_g1(double z, const MgParams& p);
double mg_g2(double z, const MgParams& p);
double mg_g3(double z, const MgParams& p);

// Classic RK4 with linearly interpolated delayed lookups at half steps.
MgGrid integrate_grid(const MgParams& p, double t_end);

// Sample the x column at the requested spacing starting at washout.
MgSeries integrate(const MgParams& p);

// Fill x1..x3 via the chain recursions
//   x''  = -b x'  + G'(z) x'_d
//   x''' = -b x'' + G''(z) x'_d^2 + G'(z) x''_d         (z = x(t - tau)).
void derivative_series(MgSeries& series, const MgGrid& grid, const MgParams& p);

// Fourth derivative at sample index k, one more level of the same recursion:
//   x'''' = -b x''' + G'''(z) x'_d^3 + 3 G''(z) x'_d x''_d + G'(z) x'''_d.
// Delayed values are read from the sampled columns; requires tau to be a
// multiple of the sample spacing and k*spacing >= tau + washout alignment.
double fourth_derivative(const MgSeries& series, const MgParams& p, std::size_t k);

// Convenience: integrate + derivative columns.
MgSeries generate_series(const MgParams& p);

// Delay embedding split into train/test in temporal order. Row base indices
// start at max(lag)/spacing; targets[i] = x^(i+1) at the base time, with the
// fourth derivative computed analytically when order_r == 3 (order_r <= 3).
std::pair<DelayEmbeddedDataset, DelayEmbeddedDataset> build_embedding(
    const MgSeries& series, const MgParams& p, const std::vector<double>& lags, double horizon,
    std::size_t train_count, std::size_t test_count, int order_r);

}  // namespace dfs

#endif
