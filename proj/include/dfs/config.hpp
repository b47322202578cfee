#ifndef DFS_CONFIG_HPP
#define DFS_CONFIG_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dfs/mackey_glass.hpp"

namespace dfs {

// Flat key=value run configuration with sectioned keys (mg.tau=17, dfs.r=3).
struct RunConfig {
    MgParams mg;

    std::vector<double> lags = {18.0, 12.0, 6.0, 0.0};
    std::size_t train_count = 500;
    std::size_t test_count = 500;

    double partition_lo = 0.40;
    double partition_hi = 1.32;
    int partition_count = 3;

    int order_r = 3;
    int order_s = 3;
    std::size_t rule_count = 61;  // 0 keeps the full rule set
    double ridge = 0.0;

    int taylor_nu = 4;
    double taylor_h = 1.0;

    std::string out_dir = "out";

    bool operator==(const RunConfig&) const = default;

    // Checks every module precondition this config feeds; throws
    // ContractViolation with the offending key.
    void validate() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
void write_config(const RunConfig& cfg, std::ostream& out);
void save_config(const RunConfig& cfg, const std::string& path);

}  // namespace dfs

#endif
