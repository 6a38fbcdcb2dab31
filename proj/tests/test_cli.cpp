#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <string>

#include "helpers.hpp"
#include "prc/series.hpp"

using nlohmann::json;
using test_helpers::TempDir;
using test_helpers::read_text;
using test_helpers::write_text;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PRCKIT_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json run_config(const std::string& dataset_dir, bool metrics) {
    json j = {
        {"data", {{"dir", dataset_dir}, {"prefix", "scan"}}},
        {"process", {{"Xs", "t"}, {"Readouts", "Voltage"}, {"delimiter", "\t"}}},
        {"target", {{"kind", "square"}, {"num_periods", 10}}},
        {"model", {{"kind", "ridge"}, {"alpha", 1e-6}, {"fit_intercept", true}}},
        {"rc", {{"tau", 0}, {"test_size", 0.3}, {"error_type", "MSE"}}},
    };
    if (metrics) {
        j["metrics"] = {{"enabled", true},
                        {"kmax", 12},
                        {"remove_auto_correlation", false},
                        {"input_file", dataset_dir + "/input_series.txt"}};
    }
    return j;
}

}  // namespace

TEST_CASE("targets subcommand writes the requested series") {
    TempDir tmp;
    const auto out = tmp.path() / "sq.txt";
    REQUIRE(run_cli("targets square --length 500 --periods 10 --out " + out.string()) == 0);
    const auto s = prc::load_series(out);
    REQUIRE(s.values.size() == 500);
    for (int i = 0; i < 500; ++i) {
        REQUIRE(s.values[i] == ((i % 50) < 25 ? 1.0 : 0.0));
    }
}

TEST_CASE("simulate regenerates datasets bit-exactly") {
    TempDir tmp;
    const auto a = tmp.path() / "a";
    const auto b = tmp.path() / "b";
    const std::string flags = "--system diode --input sine --periods 4 --points-per-period 25 "
                              "--windows 5 --seed 3 --out ";
    REQUIRE(run_cli("simulate " + flags + a.string()) == 0);
    REQUIRE(run_cli("simulate " + flags + b.string()) == 0);
    CHECK(read_text(a / "scan1.txt") == read_text(b / "scan1.txt"));
    CHECK(read_text(a / "scan100.txt") == read_text(b / "scan100.txt"));
    CHECK(read_text(a / "input_series.txt") == read_text(b / "input_series.txt"));
}

TEST_CASE("run produces the documented outputs and exit code 0") {
    TempDir tmp;
    const auto dataset = tmp.path() / "dataset";
    REQUIRE(run_cli("simulate --system diode --input sine --periods 10 --points-per-period 50 "
                    "--windows 8 --seed 1 --out " +
                    dataset.string()) == 0);
    write_text(tmp.path() / "run.json", run_config("dataset", true).dump(2));

    const auto out = tmp.path() / "out";
    REQUIRE(run_cli("run " + (tmp.path() / "run.json").string() + " --out " + out.string()) == 0);

    const json results = json::parse(read_text(out / "results.json"));
    REQUIRE(results.contains("train_error"));
    REQUIRE(results.contains("test_error"));
    REQUIRE(results.contains("nl"));
    REQUIRE(results.contains("lmc_total"));
    REQUIRE(results.contains("lmc_per_lag"));
    REQUIRE(results.contains("config"));
    CHECK(results.size() == 6);
    CHECK(results["test_error"].get<double>() < 0.125);  // 0.5 * var(square)
    CHECK(results["lmc_per_lag"].size() == 12);

    const std::string train_csv = read_text(out / "train.csv");
    CHECK(train_csv.rfind("index,target,prediction\n", 0) == 0);
    const std::string weights_csv = read_text(out / "weights.csv");
    CHECK(weights_csv.rfind("node,weight\n", 0) == 0);
    CHECK(weights_csv.find("\nintercept,") != std::string::npos);
    CHECK(weights_csv.find("r0,") != std::string::npos);
}

TEST_CASE("metrics keys are absent when disabled") {
    TempDir tmp;
    const auto dataset = tmp.path() / "dataset";
    REQUIRE(run_cli("simulate --system diode --input sine --periods 10 --points-per-period 50 "
                    "--windows 8 --seed 1 --out " +
                    dataset.string()) == 0);
    write_text(tmp.path() / "run.json", run_config("dataset", false).dump(2));
    const auto out = tmp.path() / "out";
    REQUIRE(run_cli("run " + (tmp.path() / "run.json").string() + " --out " + out.string()) == 0);
    const json results = json::parse(read_text(out / "results.json"));
    CHECK(results.size() == 3);
    CHECK_FALSE(results.contains("nl"));
    CHECK_FALSE(results.contains("lmc_total"));
    CHECK_FALSE(results.contains("lmc_per_lag"));
}

TEST_CASE("validation errors exit 1 and data errors exit 2") {
    TempDir tmp;
    json bad = run_config("dataset", false);
    bad["rc"]["tau"] = -1;
    write_text(tmp.path() / "bad.json", bad.dump());
    CHECK(run_cli("run " + (tmp.path() / "bad.json").string() + " --out " +
                  (tmp.path() / "out").string()) == 1);

    json missing = run_config("no_such_dir", false);
    write_text(tmp.path() / "missing.json", missing.dump());
    CHECK(run_cli("run " + (tmp.path() / "missing.json").string() + " --out " +
                  (tmp.path() / "out").string()) == 2);
}

TEST_CASE("metrics subcommand reports a delay-line reservoir") {
    TempDir tmp;
    const auto dataset = tmp.path() / "dataset";
    std::filesystem::create_directories(dataset);

    // Hand-built delay-line dataset: channels are u(t-1), u(t-2).
    std::mt19937 rng(5);
    const int rows = 120;
    std::vector<double> full(rows + 2);
    for (auto& v : full) v = test_helpers::uniform01(rng);
    for (int t = 0; t < rows; ++t) {
        write_text(dataset / ("scan" + std::to_string(t + 1) + ".txt"),
                   "t\tVoltage\n0\t" + std::to_string(full[t + 1]) + "\n1\t" +
                       std::to_string(full[t]) + "\n");
    }
    prc::SignalSeries u;
    u.values.assign(full.begin() + 2, full.end());
    prc::save_series(dataset / "input_series.txt", u);

    json cfg = {
        {"data", {{"dir", "dataset"}, {"prefix", "scan"}}},
        {"process", {{"Xs", "t"}, {"Readouts", "Voltage"}, {"delimiter", "\t"}}},
        {"metrics",
         {{"enabled", true}, {"kmax", 5}, {"remove_auto_correlation", false},
          {"input_file", "dataset/input_series.txt"}}},
    };
    write_text(tmp.path() / "metrics.json", cfg.dump());

    const std::string out_file = (tmp.path() / "report.json").string();
    const std::string cmd = std::string(PRCKIT_BIN) + " metrics " +
                            (tmp.path() / "metrics.json").string() + " > " + out_file +
                            " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const json report = json::parse(read_text(tmp.path() / "report.json"));
    CHECK(report["lmc_per_lag"][0].get<double>() >= 0.99);
    CHECK(report["lmc_per_lag"][1].get<double>() >= 0.99);
    CHECK(report["nl_per_channel"].size() == 2);
    CHECK(report["kmax"] == 5);
}
