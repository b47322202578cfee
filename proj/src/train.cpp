#include "dfs/train.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dfs/errors.hpp"
#include "dfs/numerics.hpp"
#include "dfs/parallel.hpp"

namespace dfs {

std::vector<std::vector<double>> DelayEmbeddedDataset::inputs() const {
    std::vector<std::vector<double>> xs;
    xs.reserve(rows.size());
    for (const TrainingRow& row : rows) xs.push_back(row.x);
    return xs;
}

std::string TrainingReport::to_string() const {
    std::ostringstream os;
    os << "rules: " << rule_count << "\n";
    for (std::size_t i = 0; i < residual_norms.size(); ++i)
        os << "order " << i << ": ||E_" << i << "|| = " << residual_norms[i] << "\n";
    for (std::size_t i = 0; i < solve_ranks.size(); ++i)
        os << "a-solve order " << i + 1 << ": rank " << solve_ranks[i] << "\n";
    for (const std::string& w : warnings) os << "warning: " << w << "\n";
    return os.str();
}

namespace {

void check_dataset(const DelayEmbeddedDataset& data, int order_r) {
    if (data.rows.empty()) throw ContractViolation("training: empty dataset");
    for (const TrainingRow& row : data.rows) {
        if (row.targets.size() != static_cast<std::size_t>(order_r) + 1)
            throw ContractViolation("training: row target length != r + 1");
        for (double v : row.x)
            if (!std::isfinite(v)) throw ContractViolation("training: non-finite input");
        for (double v : row.targets)
            if (!std::isfinite(v)) throw ContractViolation("training: non-finite target");
    }
}

// E_i rows from precomputed firing matrix P and Taylor value matrix T. When
// exclude_top is set the m == i term (the a_i unknowns) is left out.
std::vector<double> residual_rows(const DfsModel& model, const DelayEmbeddedDataset& data,
                                  const DenseMatrix& P, const DenseMatrix& T, int order,
                                  bool exclude_top) {
    const std::size_t nrules = model.rules.size();
    const int m_max = std::min(exclude_top ? order - 1 : order, model.order_s);

    std::vector<double> out(data.rows.size());
    std::vector<double> terms(nrules);
    for (std::size_t k = 0; k < data.rows.size(); ++k) {
        const double target = data.rows[k].targets[static_cast<std::size_t>(order)];
        for (std::size_t j = 0; j < nrules; ++j)
            terms[j] = P.at(k, j) *
                       (model.rules[j].polys.b[static_cast<std::size_t>(order)] - target);
        double e = pairwise_sum(terms);
        for (int m = 1; m <= m_max; ++m) {
            const double value = T.at(k, static_cast<std::size_t>(order - m));
            for (std::size_t j = 0; j < nrules; ++j) {
                const DisturbancePolynomials& polys = model.rules[j].polys;
                terms[j] = P.at(k, j) * polys.a[static_cast<std::size_t>(m)] *
                           (polys.b[static_cast<std::size_t>(order - m)] - value);
            }
            e -= pairwise_sum(terms);
        }
        out[k] = e;
    }
    return out;
}

double norm2(std::span<const double> v) {
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
    return std::sqrt(pairwise_sum(sq));
}

}  // namespace

std::vector<DisturbedRule> assign_b_coefficients(const FuzzyPartition& partition,
                                                 const std::vector<RuleIndex>& rules,
                                                 const DelayEmbeddedDataset& data, int order_r,
                                                 int order_s, double ridge) {
    if (rules.empty()) throw ContractViolation("training: no rules");
    if (order_s > order_r) throw ContractViolation("training: s must not exceed r");
    check_dataset(data, order_r);

    const DenseMatrix P = firing_matrix(partition, rules, data.inputs());

    std::vector<std::vector<int>> dead;
    for (std::size_t j = 0; j < rules.size(); ++j) {
        bool fires = false;
        for (std::size_t k = 0; k < P.rows && !fires; ++k) fires = P.at(k, j) > 0.0;
        if (!fires) dead.push_back(rules[j]);
    }
    if (!dead.empty()) throw DeadRuleError(std::move(dead));

    std::vector<DisturbedRule> out(rules.size());
    for (std::size_t j = 0; j < rules.size(); ++j) {
        out[j].index = rules[j];
        out[j].center = rule_center(partition, rules[j]);
        out[j].polys.a.assign(static_cast<std::size_t>(order_s) + 1, 0.0);
        out[j].polys.a[0] = 1.0;
        out[j].polys.b.assign(static_cast<std::size_t>(order_r) + 1, 0.0);
    }

    std::vector<double> rhs(P.rows);
    for (int i = 0; i <= order_r; ++i) {
        for (std::size_t k = 0; k < P.rows; ++k)
            rhs[k] = data.rows[k].targets[static_cast<std::size_t>(i)];
        const LeastSquaresSolution sol = solve_least_squares(P, rhs, ridge);
        for (std::size_t j = 0; j < rules.size(); ++j)
            out[j].polys.b[static_cast<std::size_t>(i)] = sol.coefficients[j];
    }
    return out;
}

std::vector<double> residual_E(const DfsModel& model, const DelayEmbeddedDataset& data,
                               int order) {
    if (order < 0 || order > model.order_r)
        throw ContractViolation("residual: order out of range");
    check_dataset(data, model.order_r);
    const DenseMatrix P = firing_matrix(model.partition, rule_indices(model), data.inputs());
    const DenseMatrix T = taylor_batch(model, P);
    return residual_rows(model, data, P, T, order, /*exclude_top=*/false);
}

void solve_a_order(DfsModel& model, const DelayEmbeddedDataset& data, int order,
                   TrainingReport& report, double ridge) {
    if (order < 1 || order > model.order_s)
        throw ContractViolation("a-solve: order must be in 1..s");
    check_dataset(data, model.order_r);

    const std::size_t nrules = model.rules.size();
    const DenseMatrix P = firing_matrix(model.partition, rule_indices(model), data.inputs());
    const DenseMatrix T = taylor_batch(model, P);

    DenseMatrix D(P.rows, nrules);
    for (std::size_t k = 0; k < P.rows; ++k)
        for (std::size_t j = 0; j < nrules; ++j)
            D.at(k, j) = P.at(k, j) * (model.rules[j].polys.b[0] - T.at(k, 0));

    const std::vector<double> rhs =
        residual_rows(model, data, P, T, order, /*exclude_top=*/true);

    const LeastSquaresSolution sol = solve_least_squares(D, rhs, ridge);
    for (std::size_t j = 0; j < nrules; ++j)
        model.rules[j].polys.a[static_cast<std::size_t>(order)] = sol.coefficients[j];

    report.solve_ranks.push_back(sol.rank);
    if (sol.rank < static_cast<int>(nrules)) {
        std::ostringstream os;
        os << "a-solve order " << order << " rank-deficient (" << sol.rank << "/" << nrules
           << "), minimum-norm solution taken";
        report.warnings.push_back(os.str());
    }
}

std::pair<DfsModel, TrainingReport> dfsla_train(const FuzzyPartition& partition,
                                                const std::vector<RuleIndex>& rules,
                                                const DelayEmbeddedDataset& data, int order_r,
                                                int order_s, double ridge) {
    DfsModel model;
    model.partition = partition;
    model.order_r = order_r;
    model.order_s = order_s;
    model.rules = assign_b_coefficients(partition, rules, data, order_r, order_s, ridge);

    TrainingReport report;
    report.rule_count = model.rules.size();

    for (int i = 1; i <= std::min(order_r, order_s); ++i)
        solve_a_order(model, data, i, report, ridge);

    report.residual_norms.resize(static_cast<std::size_t>(order_r) + 1);
    const DenseMatrix P = firing_matrix(model.partition, rule_indices(model), data.inputs());
    const DenseMatrix T = taylor_batch(model, P);
    for (int i = 0; i <= order_r; ++i)
        report.residual_norms[static_cast<std::size_t>(i)] =
            norm2(residual_rows(model, data, P, T, i, false));

    return {std::move(model), std::move(report)};
}

}  // namespace dfs
