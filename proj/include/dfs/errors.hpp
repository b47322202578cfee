#ifndef DFS_ERRORS_HPP
#define DFS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace dfs {

// Violated precondition or malformed input. Maps to CLI exit code 2.
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical breakdown (NaN state, non-finite evaluation). Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// No active rule fires at the query point. Carries the offending input.
class CoverageHoleError : public std::runtime_error {
public:
    explicit CoverageHoleError(std::vector<double> x);
    const std::vector<double>& point() const { return x_; }

private:
    std::vector<double> x_;
};

// Rules that never fire on the training data. Carries the 0-based index tuples.
class DeadRuleError : public std::runtime_error {
public:
    explicit DeadRuleError(std::vector<std::vector<int>> rules);
    const std::vector<std::vector<int>>& rules() const { return rules_; }

private:
    std::vector<std::vector<int>> rules_;
};

// Disturbance h outside the region where the rational denominator is trusted.
class TrustRegionError : public std::runtime_error {
public:
    TrustRegionError(std::vector<double> x, double h);
    const std::vector<double>& point() const { return x_; }
    double disturbance() const { return h_; }

private:
    std::vector<double> x_;
    double h_;
};

}  // namespace dfs

#endif
