#ifndef DFS_DISTURBED_HPP
#define DFS_DISTURBED_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dfs/fuzzy.hpp"

namespace dfs {

// Per-rule disturbance polynomials in the scalar disturbance h:
//   a (length s+1) weighs the denominator, a[0] == 1;
//   b (length r+1) forms the numerator, b[0] is the rule centroid.
struct DisturbancePolynomials {
    std::vector<double> a;
    std::vector<double> b;
};

struct DisturbedRule {
    RuleIndex index;
    std::vector<double> center;
    DisturbancePolynomials polys;
};

struct DfsModel {
    FuzzyPartition partition;
    std::vector<DisturbedRule> rules;
    int order_r = 0;
    int order_s = 0;
};

// Taylor coefficients of h -> g(x, h) at h = 0: values[i] = g^(i)(x) / i!.
struct TaylorCoefficients {
    std::vector<double> values;
};

// Horner evaluation of sum_d coeffs[d] * h^d.
double poly_eval(std::span<const double> coeffs, double h);

std::vector<RuleIndex> rule_indices(const DfsModel& model);

// Rational evaluation
//   g(x,h) = sum_j A_j(x) Q_j(h) P_j(h) / sum_j A_j(x) Q_j(h).
// Throws TrustRegionError when the denominator magnitude drops below
// 1e-9 * sum_j A_j(x); propagates CoverageHoleError.
double dfs_eval(const DfsModel& model, std::span<const double> x, double h);

// Taylor coefficients at h = 0 through order r via the division recurrence
//   values[i] = sum_j p_j c_i^j - sum_{k<i} (sum_j p_j a^j_{i-k}) values[k],
//   c_i^j = sum_{k<=i} a^j_{i-k} b^j_k.
TaylorCoefficients dfs_taylor_coefficients(const DfsModel& model, std::span<const double> x);

// Same recurrence with a precomputed normalized firing vector p.
TaylorCoefficients taylor_from_firing(const DfsModel& model, std::span<const double> p);

// Taylor coefficients with nearest-center fallback: on a coverage hole the
// closest rule's b vector is returned and *fallbacks is incremented.
TaylorCoefficients taylor_with_fallback(const DfsModel& model, std::span<const double> x,
                                        std::size_t* fallbacks);

// Flat text model format, bit-exact round trip for finite doubles.
void save_model(const DfsModel& model, std::ostream& out);
void save_model(const DfsModel& model, const std::string& path);
DfsModel load_model(std::istream& in);
DfsModel load_model(const std::string& path);

}  // namespace dfs

#endif
