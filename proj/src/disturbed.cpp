#include "dfs/disturbed.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "dfs/errors.hpp"
#include "dfs/numerics.hpp"

namespace dfs {

double poly_eval(std::span<const double> coeffs, double h) {
    double acc = 0.0;
    for (std::size_t d = coeffs.size(); d > 0; --d) acc = acc * h + coeffs[d - 1];
    return acc;
}

std::vector<RuleIndex> rule_indices(const DfsModel& model) {
    std::vector<RuleIndex> indices(model.rules.size());
    for (std::size_t r = 0; r < model.rules.size(); ++r) indices[r] = model.rules[r].index;
    return indices;
}

namespace {

void check_model(const DfsModel& model) {
    if (model.rules.empty()) throw ContractViolation("model: no rules");
}

std::vector<double> rule_firings(const DfsModel& model, std::span<const double> x) {
    std::vector<double> a(model.rules.size());
    for (std::size_t r = 0; r < model.rules.size(); ++r)
        a[r] = firing_level(model.partition, model.rules[r].index, x);
    return a;
}

}  // namespace

double dfs_eval(const DfsModel& model, std::span<const double> x, double h) {
    check_model(model);
    const std::vector<double> firing = rule_firings(model, x);
    const double total = pairwise_sum(firing);
    if (!(total > 0.0)) throw CoverageHoleError(std::vector<double>(x.begin(), x.end()));

    std::vector<double> num(model.rules.size());
    std::vector<double> den(model.rules.size());
    for (std::size_t r = 0; r < model.rules.size(); ++r) {
        const DisturbancePolynomials& polys = model.rules[r].polys;
        const double q = poly_eval(polys.a, h);
        num[r] = firing[r] * q * poly_eval(polys.b, h);
        den[r] = firing[r] * q;
    }
    const double denominator = pairwise_sum(den);
    // Q polynomials are only constrained near h = 0.
    if (std::abs(denominator) < 1e-9 * total)
        throw TrustRegionError(std::vector<double>(x.begin(), x.end()), h);
    return pairwise_sum(num) / denominator;
}

TaylorCoefficients taylor_from_firing(const DfsModel& model, std::span<const double> p) {
    const int r = model.order_r;
    const int s = model.order_s;
    const std::size_t nrules = model.rules.size();

    // Firing-averaged denominator coefficients; abar[0] == 1 since a[0] == 1.
    std::vector<double> abar(static_cast<std::size_t>(r) + 1, 0.0);
    std::vector<double> terms(nrules);
    for (int m = 0; m <= r; ++m) {
        if (m > s) break;
        for (std::size_t j = 0; j < nrules; ++j)
            terms[j] = p[j] * model.rules[j].polys.a[static_cast<std::size_t>(m)];
        abar[static_cast<std::size_t>(m)] = pairwise_sum(terms);
    }

    TaylorCoefficients coeffs;
    coeffs.values.assign(static_cast<std::size_t>(r) + 1, 0.0);
    for (int i = 0; i <= r; ++i) {
        for (std::size_t j = 0; j < nrules; ++j) {
            const DisturbancePolynomials& polys = model.rules[j].polys;
            double c = 0.0;  // c_i^j = sum_{k<=i} a_{i-k} b_k
            for (int k = 0; k <= i; ++k) {
                const int m = i - k;
                if (m > s) continue;
                c += polys.a[static_cast<std::size_t>(m)] * polys.b[static_cast<std::size_t>(k)];
            }
            terms[j] = p[j] * c;
        }
        double value = pairwise_sum(terms);
        for (int k = 0; k < i; ++k)
            value -= abar[static_cast<std::size_t>(i - k)] * coeffs.values[static_cast<std::size_t>(k)];
        coeffs.values[static_cast<std::size_t>(i)] = value;
    }
    return coeffs;
}

TaylorCoefficients dfs_taylor_coefficients(const DfsModel& model, std::span<const double> x) {
    check_model(model);
    const std::vector<double> firing = rule_firings(model, x);
    const double total = pairwise_sum(firing);
    if (!(total > 0.0)) throw CoverageHoleError(std::vector<double>(x.begin(), x.end()));
    std::vector<double> p(firing);
    for (double& v : p) v /= total;
    return taylor_from_firing(model, p);
}

TaylorCoefficients taylor_with_fallback(const DfsModel& model, std::span<const double> x,
                                        std::size_t* fallbacks) {
    try {
        return dfs_taylor_coefficients(model, x);
    } catch (const CoverageHoleError&) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < model.rules.size(); ++r) {
            double d2 = 0.0;
            const std::vector<double>& c = model.rules[r].center;
            for (std::size_t i = 0; i < c.size(); ++i) d2 += (x[i] - c[i]) * (x[i] - c[i]);
            if (d2 < best_dist) {
                best_dist = d2;
                best = r;
            }
        }
        if (fallbacks) ++*fallbacks;
        TaylorCoefficients coeffs;
        coeffs.values = model.rules[best].polys.b;
        return coeffs;
    }
}

void save_model(const DfsModel& model, std::ostream& out) {
    const std::size_t n = model.partition.dimensions();
    out << "dfs-model 1\n";
    out << n << " " << model.order_r << " " << model.order_s << " " << model.rules.size() << "\n";
    for (std::size_t i = 0; i < n; ++i)
        out << format_double(model.partition.intervals[i].first) << " "
            << format_double(model.partition.intervals[i].second) << " "
            << model.partition.dims[i].size() << "\n";
    for (const DisturbedRule& rule : model.rules) {
        for (std::size_t i = 0; i < n; ++i) out << rule.index[i] << " ";
        for (double v : rule.polys.a) out << format_double(v) << " ";
        for (std::size_t i = 0; i < rule.polys.b.size(); ++i) {
            out << format_double(rule.polys.b[i]);
            out << (i + 1 < rule.polys.b.size() ? ' ' : '\n');
        }
    }
}

void save_model(const DfsModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    save_model(model, out);
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

DfsModel load_model(std::istream& in) {
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (!in || magic != "dfs-model" || version != 1)
        throw ContractViolation("model file: bad header");

    std::size_t n = 0, nrules = 0;
    DfsModel model;
    in >> n >> model.order_r >> model.order_s >> nrules;
    if (!in || n == 0 || nrules == 0 || model.order_r < 0 || model.order_s < 0 ||
        model.order_s > model.order_r)
        throw ContractViolation("model file: bad dimensions");

    std::vector<std::pair<double, double>> intervals(n);
    std::vector<int> counts(n);
    for (std::size_t i = 0; i < n; ++i) {
        in >> intervals[i].first >> intervals[i].second >> counts[i];
        if (!in) throw ContractViolation("model file: bad partition spec");
    }
    model.partition = make_uniform_partition(intervals, counts);

    model.rules.resize(nrules);
    for (DisturbedRule& rule : model.rules) {
        rule.index.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            in >> rule.index[i];
            if (!in || rule.index[i] < 0 || rule.index[i] >= counts[i])
                throw ContractViolation("model file: rule index out of range");
        }
        rule.polys.a.resize(static_cast<std::size_t>(model.order_s) + 1);
        for (double& v : rule.polys.a) in >> v;
        rule.polys.b.resize(static_cast<std::size_t>(model.order_r) + 1);
        for (double& v : rule.polys.b) in >> v;
        if (!in) throw ContractViolation("model file: truncated rule line");
        rule.center = rule_center(model.partition, rule.index);
    }
    return model;
}

DfsModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    return load_model(in);
}

}  // namespace dfs
