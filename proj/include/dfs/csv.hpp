#ifndef DFS_CSV_HPP
#define DFS_CSV_HPP

#include <string>
#include <vector>

#include "dfs/mackey_glass.hpp"
#include "dfs/taylor.hpp"

namespace dfs {

// Header t,x,x1,x2,x3; one row per sample.
void write_series_csv(const MgSeries& series, const std::string& path);
MgSeries read_series_csv(const std::string& path);

// Header t,truth,pred,residual; missing truth leaves the columns empty.
void write_forecast_csv(const ForecastResult& result, const std::string& path);

// Generic table writer used for derivative comparisons.
void write_table_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns, const std::string& path);

}  // namespace dfs

#endif
