#include "dfs/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dfs/errors.hpp"
#include "dfs/numerics.hpp"

namespace dfs {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    return out;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              const std::string& path) {
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) {
            fields.push_back(std::nan(""));
            continue;
        }
        fields.push_back(std::stod(cell));
    }
    if (fields.size() != expected)
        throw ContractViolation("csv: bad column count in " + path + ": " + line);
    return fields;
}

}  // namespace

void write_series_csv(const MgSeries& series, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,x,x1,x2,x3\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_double(series.times[i]) << "," << format_double(series.x[i]) << ","
            << format_double(series.x1[i]) << "," << format_double(series.x2[i]) << ","
            << format_double(series.x3[i]) << "\n";
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

MgSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "t,x,x1,x2,x3")
        throw ContractViolation("csv: expected header t,x,x1,x2,x3 in " + path);
    MgSeries series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<double> row = parse_row(line, 5, path);
        series.times.push_back(row[0]);
        series.x.push_back(row[1]);
        series.x1.push_back(row[2]);
        series.x2.push_back(row[3]);
        series.x3.push_back(row[4]);
    }
    if (series.size() == 0) throw ContractViolation("csv: no data rows in " + path);
    return series;
}

void write_forecast_csv(const ForecastResult& result, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,truth,pred,residual\n";
    for (std::size_t i = 0; i < result.times.size(); ++i) {
        const bool have_truth = i < result.truth.size() && std::isfinite(result.truth[i]);
        out << format_double(result.times[i]) << ",";
        if (have_truth)
            out << format_double(result.truth[i]) << "," << format_double(result.predicted[i])
                << "," << format_double(result.predicted[i] - result.truth[i]);
        else
            out << "," << format_double(result.predicted[i]) << ",";
        out << "\n";
    }
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

void write_table_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns, const std::string& path) {
    if (header.size() != columns.size()) throw ContractViolation("csv: header/column mismatch");
    std::ofstream out = open_out(path);
    for (std::size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? ',' : '\n');
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (const auto& col : columns)
        if (col.size() != rows) throw ContractViolation("csv: ragged columns");
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << format_double(columns[c][r]) << (c + 1 < columns.size() ? ',' : '\n');
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace dfs
