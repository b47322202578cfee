#include "dfs/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dfs/errors.hpp"
#include "dfs/numerics.hpp"

namespace dfs {

namespace {

std::vector<double> parse_double_list(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format_double(values[i]);
    }
    return out;
}

bool is_multiple(double value, double base) {
    const double ratio = value / base;
    return std::abs(ratio - std::round(ratio)) <= 1e-9;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ContractViolation("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = line.substr(start, eq - start);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "mg.a") cfg.mg.a = std::stod(value);
            else if (key == "mg.b") cfg.mg.b = std::stod(value);
            else if (key == "mg.c") cfg.mg.c = std::stod(value);
            else if (key == "mg.tau") cfg.mg.tau = std::stod(value);
            else if (key == "mg.dt") cfg.mg.dt = std::stod(value);
            else if (key == "mg.x0") cfg.mg.x0 = std::stod(value);
            else if (key == "mg.washout") cfg.mg.washout = std::stod(value);
            else if (key == "mg.samples") cfg.mg.samples = static_cast<std::size_t>(std::stoull(value));
            else if (key == "mg.spacing") cfg.mg.spacing = std::stod(value);
            else if (key == "embed.lags") cfg.lags = parse_double_list(value);
            else if (key == "embed.train") cfg.train_count = static_cast<std::size_t>(std::stoull(value));
            else if (key == "embed.test") cfg.test_count = static_cast<std::size_t>(std::stoull(value));
            else if (key == "fs.lo") cfg.partition_lo = std::stod(value);
            else if (key == "fs.hi") cfg.partition_hi = std::stod(value);
            else if (key == "fs.count") cfg.partition_count = std::stoi(value);
            else if (key == "dfs.r") cfg.order_r = std::stoi(value);
            else if (key == "dfs.s") cfg.order_s = std::stoi(value);
            else if (key == "dfs.rules") cfg.rule_count = static_cast<std::size_t>(std::stoull(value));
            else if (key == "train.ridge") cfg.ridge = std::stod(value);
            else if (key == "taylor.nu") cfg.taylor_nu = std::stoi(value);
            else if (key == "taylor.h") cfg.taylor_h = std::stod(value);
            else if (key == "out.dir") cfg.out_dir = value;
            else throw ContractViolation("config: unknown key " + key);
        } catch (const std::invalid_argument&) {
            throw ContractViolation("config line " + std::to_string(lineno) + ": bad value for " + key);
        } catch (const std::out_of_range&) {
            throw ContractViolation("config line " + std::to_string(lineno) + ": bad value for " + key);
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config " + path);
    return parse_config(in);
}

void write_config(const RunConfig& cfg, std::ostream& out) {
    out << "mg.a=" << format_double(cfg.mg.a) << "\n";
    out << "mg.b=" << format_double(cfg.mg.b) << "\n";
    out << "mg.c=" << format_double(cfg.mg.c) << "\n";
    out << "mg.tau=" << format_double(cfg.mg.tau) << "\n";
    out << "mg.dt=" << format_double(cfg.mg.dt) << "\n";
    out << "mg.x0=" << format_double(cfg.mg.x0) << "\n";
    out << "mg.washout=" << format_double(cfg.mg.washout) << "\n";
    out << "mg.samples=" << cfg.mg.samples << "\n";
    out << "mg.spacing=" << format_double(cfg.mg.spacing) << "\n";
    out << "embed.lags=" << join_doubles(cfg.lags) << "\n";
    out << "embed.train=" << cfg.train_count << "\n";
    out << "embed.test=" << cfg.test_count << "\n";
    out << "fs.lo=" << format_double(cfg.partition_lo) << "\n";
    out << "fs.hi=" << format_double(cfg.partition_hi) << "\n";
    out << "fs.count=" << cfg.partition_count << "\n";
    out << "dfs.r=" << cfg.order_r << "\n";
    out << "dfs.s=" << cfg.order_s << "\n";
    out << "dfs.rules=" << cfg.rule_count << "\n";
    out << "train.ridge=" << format_double(cfg.ridge) << "\n";
    out << "taylor.nu=" << cfg.taylor_nu << "\n";
    out << "taylor.h=" << format_double(cfg.taylor_h) << "\n";
    out << "out.dir=" << cfg.out_dir << "\n";
}

void save_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    write_config(cfg, out);
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

void RunConfig::validate() const {
    if (!(mg.dt > 0.0)) throw ContractViolation("mg.dt must be positive");
    if (!(mg.spacing > 0.0)) throw ContractViolation("mg.spacing must be positive");
    if (mg.samples < 2) throw ContractViolation("mg.samples must be at least 2");
    if (mg.tau < 0.0) throw ContractViolation("mg.tau must be nonnegative");
    if (mg.tau > 0.0 && !is_multiple(mg.tau, mg.dt))
        throw ContractViolation("mg.tau must be a multiple of mg.dt");
    if (!is_multiple(mg.washout, mg.dt))
        throw ContractViolation("mg.washout must be a multiple of mg.dt");
    if (!is_multiple(mg.spacing, mg.dt))
        throw ContractViolation("mg.spacing must be a multiple of mg.dt");
    if (lags.empty()) throw ContractViolation("embed.lags must not be empty");
    double max_lag = 0.0;
    for (double lag : lags) {
        if (lag < 0.0 || !is_multiple(lag, mg.spacing))
            throw ContractViolation("embed.lags must be nonnegative multiples of mg.spacing");
        max_lag = std::max(max_lag, lag);
    }
    const std::size_t needed =
        static_cast<std::size_t>(std::round(max_lag / mg.spacing));
    if (train_count <= needed)
        throw ContractViolation("embed.train must exceed the longest lag; need more than " +
                                std::to_string(needed) + " samples");
    if (train_count + test_count > mg.samples)
        throw ContractViolation("embed.train + embed.test exceeds mg.samples; minimum mg.samples is " +
                                std::to_string(train_count + test_count));
    if (!(partition_lo < partition_hi)) throw ContractViolation("fs.lo must be below fs.hi");
    if (partition_count < 2) throw ContractViolation("fs.count must be at least 2");
    if (order_r < 0 || order_r > 3) throw ContractViolation("dfs.r must be in 0..3");
    if (order_s < 0 || order_s > order_r) throw ContractViolation("dfs.s must be in 0..dfs.r");
    double total_rules = 1.0;
    for (std::size_t i = 0; i < lags.size(); ++i) total_rules *= partition_count;
    if (rule_count > total_rules)
        throw ContractViolation("dfs.rules exceeds the full rule count");
    if (taylor_nu < 1 || taylor_nu > order_r + 1)
        throw ContractViolation("taylor.nu must be in 1..dfs.r+1");
    if (!(taylor_h > 0.0) || !is_multiple(taylor_h, mg.spacing))
        throw ContractViolation("taylor.h must be a positive multiple of mg.spacing");
    for (double lag : lags)
        if (!is_multiple(lag, taylor_h))
            throw ContractViolation("embed.lags must be multiples of taylor.h for free-run feedback");
    if (ridge < 0.0) throw ContractViolation("train.ridge must be nonnegative");
    if (out_dir.empty()) throw ContractViolation("out.dir must not be empty");
}

}  // namespace dfs
