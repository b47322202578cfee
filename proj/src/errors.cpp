#include "dfs/errors.hpp"

#include <sstream>

namespace dfs {

namespace {

std::string describe_point(const std::vector<double>& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ", ";
        os << x[i];
    }
    os << ")";
    return os.str();
}

std::string describe_rules(const std::vector<std::vector<int>>& rules) {
    std::ostringstream os;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        if (r) os << " ";
        os << describe_point(std::vector<double>(rules[r].begin(), rules[r].end()));
    }
    return os.str();
}

}  // namespace

CoverageHoleError::CoverageHoleError(std::vector<double> x)
    : std::runtime_error("no active rule fires at " + describe_point(x)), x_(std::move(x)) {}

DeadRuleError::DeadRuleError(std::vector<std::vector<int>> rules)
    : std::runtime_error("rules never fire on training data: " + describe_rules(rules)),
      rules_(std::move(rules)) {}

TrustRegionError::TrustRegionError(std::vector<double> x, double h)
    : std::runtime_error("disturbance out of trust region at " + describe_point(x) +
                         ", h=" + std::to_string(h)),
      x_(std::move(x)),
      h_(h) {}

}  // namespace dfs
