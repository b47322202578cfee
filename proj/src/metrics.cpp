#include "dfs/metrics.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "dfs/errors.hpp"
#include "dfs/numerics.hpp"

namespace dfs {

std::string ErrorSummary::to_string() const {
    std::ostringstream os;
    os << "n=" << n << " mse=" << mse << " rmse=" << rmse << " max_abs=" << max_abs;
    return os.str();
}

std::string ErrorSummary::to_csv_row() const {
    return format_double(mse) + "," + format_double(rmse) + "," + format_double(max_abs) + "," +
           std::to_string(n);
}

ErrorSummary compare(std::span<const double> predicted, std::span<const double> truth) {
    if (predicted.size() != truth.size()) throw ContractViolation("compare: length mismatch");
    if (predicted.empty()) throw ContractViolation("compare: empty input");

    std::vector<double> squared(predicted.size());
    double max_abs = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double r = predicted[i] - truth[i];
        if (!std::isfinite(r)) throw ContractViolation("compare: non-finite residual");
        squared[i] = r * r;
        max_abs = std::max(max_abs, std::abs(r));
    }

    ErrorSummary summary;
    summary.n = predicted.size();
    summary.mse = pairwise_sum(squared) / static_cast<double>(predicted.size());
    summary.rmse = std::sqrt(summary.mse);
    summary.max_abs = max_abs;
    return summary;
}

}  // namespace dfs
