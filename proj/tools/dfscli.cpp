#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dfs/config.hpp"
#include "dfs/csv.hpp"
#include "dfs/disturbed.hpp"
#include "dfs/errors.hpp"
#include "dfs/mackey_glass.hpp"
#include "dfs/metrics.hpp"
#include "dfs/parallel.hpp"
#include "dfs/taylor.hpp"
#include "dfs/train.hpp"

namespace fs = std::filesystem;

namespace {

bool verbose() {
    const char* level = std::getenv("DFS_LOG");
    return level != nullptr && *level != '\0';
}

void log(const std::string& msg) {
    if (verbose()) std::cerr << "dfscli: " << msg << "\n";
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::ios_base::failure("cannot create output directory " + dir);
}

dfs::FuzzyPartition partition_from(const dfs::RunConfig& cfg) {
    std::vector<std::pair<double, double>> intervals(cfg.lags.size(),
                                                     {cfg.partition_lo, cfg.partition_hi});
    std::vector<int> counts(cfg.lags.size(), cfg.partition_count);
    return dfs::make_uniform_partition(intervals, counts);
}

int cmd_generate(const dfs::RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    log("integrating series (" + std::to_string(cfg.mg.samples) + " samples)");
    const dfs::MgSeries series = dfs::generate_series(cfg.mg);
    dfs::write_series_csv(series, out_dir + "/mg.csv");
    dfs::save_config(cfg, out_dir + "/config.effective");
    std::cout << "wrote " << out_dir << "/mg.csv (" << series.size() << " rows)\n";
    return 0;
}

int cmd_train(const dfs::RunConfig& cfg, const std::string& data_path,
              const std::string& out_dir) {
    ensure_dir(out_dir);
    const dfs::MgSeries series = dfs::read_series_csv(data_path);
    auto [train_set, test_set] = dfs::build_embedding(series, cfg.mg, cfg.lags, cfg.taylor_h,
                                                      cfg.train_count, cfg.test_count, cfg.order_r);
    (void)test_set;

    const dfs::FuzzyPartition partition = partition_from(cfg);
    std::vector<dfs::RuleIndex> rules = dfs::enumerate_rules(partition);
    if (cfg.rule_count > 0 && cfg.rule_count < rules.size()) {
        log("selecting " + std::to_string(cfg.rule_count) + " of " + std::to_string(rules.size()) +
            " rules");
        rules = dfs::select_top_fired(partition, rules, train_set.inputs(), cfg.rule_count);
    }

    auto [model, report] = dfs::dfsla_train(partition, rules, train_set, cfg.order_r, cfg.order_s,
                                            cfg.ridge);
    dfs::save_model(model, out_dir + "/model.txt");
    {
        std::ofstream rep(out_dir + "/report.txt");
        if (!rep) throw std::ios_base::failure("cannot write " + out_dir + "/report.txt");
        rep << report.to_string();
    }
    dfs::save_config(cfg, out_dir + "/config.effective");
    std::cout << report.to_string();
    std::cout << "wrote " << out_dir << "/model.txt\n";
    return 0;
}

int forecast_series(const dfs::RunConfig& cfg, const dfs::DfsModel& model,
                    const dfs::MgSeries& series, dfs::ForecastMode mode,
                    const std::string& out_dir) {
    const dfs::TaylorStepConfig step{cfg.taylor_nu, cfg.taylor_h};
    const dfs::ForecastResult result =
        dfs::forecast(model, series.times, series.x, cfg.lags, cfg.train_count, cfg.test_count,
                      step, mode);
    dfs::write_forecast_csv(result, out_dir + "/pred.csv");
    if (result.coverage_fallbacks > 0)
        log(std::to_string(result.coverage_fallbacks) + " coverage-hole fallbacks");

    // Score only the predictions with ground truth.
    std::vector<double> pred, truth;
    for (std::size_t i = 0; i < result.predicted.size(); ++i) {
        if (i < result.truth.size() && std::isfinite(result.truth[i])) {
            pred.push_back(result.predicted[i]);
            truth.push_back(result.truth[i]);
        }
    }
    if (!pred.empty()) {
        const dfs::ErrorSummary summary = dfs::compare(pred, truth);
        std::ofstream sum(out_dir + "/summary.csv");
        if (!sum) throw std::ios_base::failure("cannot write " + out_dir + "/summary.csv");
        sum << "series,mse,rmse,max_abs,n\n";
        sum << "x," << summary.to_csv_row() << "\n";
        std::cout << "forecast " << summary.to_string() << "\n";
    } else {
        std::cout << "forecast: no overlapping truth to score\n";
    }
    std::cout << "wrote " << out_dir << "/pred.csv\n";
    return 0;
}

int forecast_derivatives(const dfs::RunConfig& cfg, const dfs::DfsModel& model,
                         const dfs::MgSeries& series, const std::string& out_dir) {
    auto [train_set, test_set] = dfs::build_embedding(series, cfg.mg, cfg.lags, cfg.taylor_h,
                                                      cfg.train_count, cfg.test_count, cfg.order_r);
    (void)train_set;

    const std::size_t n = test_set.rows.size();
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i) times[i] = series.times[cfg.train_count + i];

    std::vector<std::vector<double>> truth(3, std::vector<double>(n));
    std::vector<std::vector<double>> pred(3, std::vector<double>(n));
    std::size_t fallbacks = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const dfs::TaylorCoefficients coeffs =
            dfs::taylor_with_fallback(model, test_set.rows[i].x, &fallbacks);
        for (std::size_t d = 0; d < 3; ++d) {
            truth[d][i] = test_set.rows[i].targets[d];
            pred[d][i] = coeffs.values[d];
        }
    }
    if (fallbacks > 0) log(std::to_string(fallbacks) + " coverage-hole fallbacks");

    dfs::write_table_csv({"t", "x1", "x1_hat", "x2", "x2_hat", "x3", "x3_hat"},
                         {times, truth[0], pred[0], truth[1], pred[1], truth[2], pred[2]},
                         out_dir + "/deriv.csv");

    std::ofstream sum(out_dir + "/summary.csv");
    if (!sum) throw std::ios_base::failure("cannot write " + out_dir + "/summary.csv");
    sum << "series,mse,rmse,max_abs,n\n";
    const char* names[3] = {"x1", "x2", "x3"};
    for (std::size_t d = 0; d < 3; ++d) {
        const dfs::ErrorSummary summary = dfs::compare(pred[d], truth[d]);
        sum << names[d] << "," << summary.to_csv_row() << "\n";
        std::cout << names[d] << " " << summary.to_string() << "\n";
    }
    std::cout << "wrote " << out_dir << "/deriv.csv\n";
    return 0;
}

int cmd_forecast(const dfs::RunConfig& cfg, const std::string& model_path,
                 const std::string& data_path, const std::string& mode,
                 const std::string& out_dir) {
    ensure_dir(out_dir);
    const dfs::DfsModel model = dfs::load_model(model_path);
    const dfs::MgSeries series = dfs::read_series_csv(data_path);
    int rc;
    if (mode == "one-step")
        rc = forecast_series(cfg, model, series, dfs::ForecastMode::OneStep, out_dir);
    else if (mode == "free-run")
        rc = forecast_series(cfg, model, series, dfs::ForecastMode::FreeRun, out_dir);
    else if (mode == "derivatives")
        rc = forecast_derivatives(cfg, model, series, out_dir);
    else
        throw dfs::ContractViolation("unknown mode " + mode);
    dfs::save_config(cfg, out_dir + "/config.effective");
    return rc;
}

int cmd_eval(const std::string& pred_path) {
    std::ifstream in(pred_path);
    if (!in) throw std::ios_base::failure("cannot open " + pred_path);
    std::string line;
    if (!std::getline(in, line) || line != "t,truth,pred,residual")
        throw dfs::ContractViolation("eval: expected header t,truth,pred,residual");
    std::vector<double> pred, truth;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string t, tr, pr;
        std::getline(ss, t, ',');
        std::getline(ss, tr, ',');
        std::getline(ss, pr, ',');
        if (tr.empty() || pr.empty()) continue;
        truth.push_back(std::stod(tr));
        pred.push_back(std::stod(pr));
    }
    const dfs::ErrorSummary summary = dfs::compare(pred, truth);
    std::cout << summary.to_string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Disturbed fuzzy system forecaster"};
    app.require_subcommand(1);

    std::string config_path, out_dir, data_path, model_path, pred_path;
    std::string mode = "one-step";

    CLI::App* generate = app.add_subcommand("generate", "Generate the benchmark series CSV");
    generate->add_option("--config", config_path, "Run configuration file");
    generate->add_option("--out", out_dir, "Output directory");

    CLI::App* train = app.add_subcommand("train", "Train a model from a series CSV");
    train->add_option("--config", config_path, "Run configuration file");
    train->add_option("--data", data_path, "Series CSV")->required();
    train->add_option("--out", out_dir, "Output directory");

    CLI::App* forecast = app.add_subcommand("forecast", "Forecast with a trained model");
    forecast->add_option("--config", config_path, "Run configuration file");
    forecast->add_option("--model", model_path, "Model file")->required();
    forecast->add_option("--data", data_path, "Series CSV")->required();
    forecast->add_option("--mode", mode, "one-step | free-run | derivatives");
    forecast->add_option("--out", out_dir, "Output directory");

    CLI::App* eval = app.add_subcommand("eval", "Summarize a predictions CSV");
    eval->add_option("--pred", pred_path, "Predictions CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        dfs::RunConfig cfg;
        if (!config_path.empty()) cfg = dfs::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        if (app.got_subcommand(eval)) return cmd_eval(pred_path);

        cfg.validate();
        if (app.got_subcommand(generate)) return cmd_generate(cfg, cfg.out_dir);
        if (app.got_subcommand(train)) return cmd_train(cfg, data_path, cfg.out_dir);
        if (app.got_subcommand(forecast))
            return cmd_forecast(cfg, model_path, data_path, mode, cfg.out_dir);
    } catch (const dfs::ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dfs::DeadRuleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dfs::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dfs::CoverageHoleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dfs::TrustRegionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
