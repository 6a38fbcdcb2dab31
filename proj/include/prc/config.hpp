#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "prc/pipeline.hpp"
#include "prc/preprocess.hpp"
#include "prc/series.hpp"
#include "prc/training.hpp"

namespace prc {

/// Declarative description of one full pipeline run, loaded from a JSON
/// config file. Field names inside "process" follow the reservoir-parameter
/// menu verbatim ("Xs", "Readouts", "delimiter", "remove_bg", ...).
struct RunConfig {
    std::filesystem::path data_dir;  // resolved against the config file's directory
    std::string prefix;

    ParseParams parse;        // from process.Xs / process.Readouts / process.delimiter / process.bg_fname
    ProcessParams process;

    struct TargetConfig {
        std::string kind;  // square | sawtooth | sine | mackey-glass | file
        std::optional<int> length;          // defaults to the reservoir row count
        int num_periods = 10;
        std::optional<int> points_per_period;
        bool normalize = false;
        std::optional<std::filesystem::path> file;  // resolved, kind == "file"
        MackeyGlassParams mackey_glass;
    };
    std::optional<TargetConfig> target;

    ModelSpec model;
    RcParams rc;  // rc.model mirrors `model`

    struct MetricsConfig {
        bool enabled = false;
        int kmax = 25;
        bool remove_auto_correlation = false;
        std::optional<std::filesystem::path> input_file;  // resolved
    };
    MetricsConfig metrics;

    nlohmann::json raw;  // verbatim echo for results.json
};

/// Parse and validate; every failure is a BadParams whose message starts with
/// the offending field path (e.g. "rc.tau: must be >= 0").
RunConfig load_run_config(const std::filesystem::path& config_path);
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Build the target series described by the config; `df_length` supplies the
/// default length so generated targets match the reservoir rows.
SignalSeries make_target(const RunConfig::TargetConfig& t, int df_length);

}  // namespace prc
