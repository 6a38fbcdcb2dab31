#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "prc/config.hpp"
#include "prc/errors.hpp"
#include "prc/metrics.hpp"
#include "prc/pipeline.hpp"
#include "prc/series.hpp"
#include "prc/simulate.hpp"
#include "prc/text.hpp"
#include "prc/training.hpp"

namespace {

using nlohmann::json;

void write_prediction_csv(const std::filesystem::path& path, const Eigen::VectorXd& target,
                          const Eigen::VectorXd& pred) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw prc::Error(prc::Errc::io_error, "cannot write: " + path.string());
    out << "index,target,prediction\n";
    for (Eigen::Index i = 0; i < target.size(); ++i) {
        out << i << ',' << prc::format_double(target(i)) << ',' << prc::format_double(pred(i))
            << '\n';
    }
}

void write_weights_csv(const std::filesystem::path& path, const prc::TrainedReadout& r,
                       const std::vector<std::string>& node_labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw prc::Error(prc::Errc::io_error, "cannot write: " + path.string());
    out << "node,weight\n";
    for (Eigen::Index i = 0; i < r.weights.size(); ++i) {
        const std::string label = i < static_cast<Eigen::Index>(node_labels.size())
                                      ? node_labels[static_cast<std::size_t>(i)]
                                      : "r" + std::to_string(i);
        out << label << ',' << prc::format_double(r.weights(i)) << '\n';
    }
    out << "intercept," << prc::format_double(r.intercept) << '\n';
}

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir) {
    const prc::RunConfig cfg = prc::load_run_config(config_path);
    if (!cfg.target) {
        throw prc::Error(prc::Errc::bad_params, "target: section required for `run`");
    }

    prc::Pipeline pipeline(cfg.data_dir, cfg.prefix, cfg.parse, cfg.process);
    pipeline.define_target(prc::make_target(*cfg.target, pipeline.get_df_length()));
    pipeline.run(cfg.rc);
    if (!pipeline.get_readout().converged) {
        std::cerr << "warning: model fit did not converge; best iterate kept\n";
    }

    json results;
    const prc::RcResults& rc = pipeline.get_rc_results();
    results["train_error"] = rc.train_error;
    results["test_error"] = rc.test_error;
    if (cfg.metrics.enabled) {
        pipeline.define_input(prc::load_series(*cfg.metrics.input_file));
        results["nl"] = pipeline.get_non_linearity();
        const auto [total, per_lag] =
            pipeline.get_linear_memory_capacity(cfg.metrics.kmax, cfg.metrics.remove_auto_correlation);
        results["lmc_total"] = total;
        results["lmc_per_lag"] = per_lag;
    }
    results["config"] = cfg.raw;

    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "results.json", std::ios::binary);
        if (!out) throw prc::Error(prc::Errc::io_error, "cannot write results.json");
        out << results.dump(2) << '\n';
    }
    write_prediction_csv(out_dir / "train.csv", rc.y_train, rc.train_pred);
    write_prediction_csv(out_dir / "test.csv", rc.y_test, rc.test_pred);
    write_weights_csv(out_dir / "weights.csv", pipeline.get_readout(),
                      pipeline.matrix().node_labels);

    std::cout << "train_error = " << prc::format_double(rc.train_error)
              << "\ntest_error = " << prc::format_double(rc.test_error) << '\n';
    return 0;
}

int cmd_metrics(const std::filesystem::path& config_path) {
    const prc::RunConfig cfg = prc::load_run_config(config_path);
    if (!cfg.metrics.input_file) {
        throw prc::Error(prc::Errc::bad_params, "metrics.input_file: required for `metrics`");
    }
    prc::Pipeline pipeline(cfg.data_dir, cfg.prefix, cfg.parse, cfg.process);
    const prc::SignalSeries input = prc::load_series(*cfg.metrics.input_file);

    const prc::NonlinearityReport nl = prc::nonlinearity(input, pipeline.matrix().values);
    const prc::MemoryCapacityReport mc = prc::linear_memory_capacity(
        input, pipeline.matrix().values, cfg.metrics.kmax, cfg.metrics.remove_auto_correlation);

    json report;
    report["nl"] = nl.mean_nl;
    report["nl_per_channel"] = nl.per_channel;
    report["lmc_total"] = mc.total;
    report["lmc_per_lag"] = mc.per_lag;
    report["kmax"] = mc.kmax;
    report["remove_auto_correlation"] = mc.auto_correlation_removed;
    std::cout << report.dump(2) << '\n';
    return 0;
}

struct TargetCliArgs {
    std::string kind;
    std::filesystem::path out_file;
    int length = 0;
    int periods = 10;
    int points_per_period = 0;
    bool normalize = false;
    prc::MackeyGlassParams mg;
};

int cmd_targets(const TargetCliArgs& a) {
    if (a.length < 1 && !(a.kind == "sine" && a.points_per_period > 0)) {
        throw prc::Error(prc::Errc::bad_params, "--length is required for this target kind");
    }
    prc::SignalSeries s;
    if (a.kind == "square") {
        s = prc::generate_square_wave(a.length, a.periods);
    } else if (a.kind == "sawtooth") {
        s = prc::generate_sawtooth_wave(a.length, a.periods);
    } else if (a.kind == "sine") {
        s = prc::generate_sine_wave(a.length, a.periods,
                                    a.points_per_period > 0
                                        ? std::optional<int>(a.points_per_period)
                                        : std::nullopt);
    } else if (a.kind == "mackey-glass") {
        prc::MackeyGlassParams p = a.mg;
        p.length = a.length;
        s = prc::generate_mackey_glass(p);
    } else {
        throw prc::Error(prc::Errc::bad_params,
                         "kind must be one of square|sawtooth|sine|mackey-glass");
    }
    if (a.normalize) s = prc::normalize_list(s);
    prc::save_series(a.out_file, s);
    std::cout << "wrote " << s.size() << " samples to " << a.out_file.string() << '\n';
    return 0;
}

struct SimulateCliArgs {
    std::string system;
    std::string input = "sine";
    std::filesystem::path out_dir;
    std::filesystem::path input_file;
    int windows = 32;
    unsigned seed = 1;
    int length = 500;
    int periods = 10;
    int points_per_period = 50;
    int nodes = 50;
    double radius = 0.9;
    double leak = 1.0;
    double input_scale = 1.0;
    double capacitance = 1e-4;
    double timestep = 1e-3;
};

int cmd_simulate(const SimulateCliArgs& a) {
    prc::SignalSeries u;
    if (a.input == "sine") {
        u = prc::generate_sine_wave(a.length, a.periods,
                                    a.points_per_period > 0
                                        ? std::optional<int>(a.points_per_period)
                                        : std::nullopt);
    } else if (a.input == "mackey-glass") {
        prc::MackeyGlassParams p;
        p.length = a.length;
        u = prc::normalize_list(prc::generate_mackey_glass(p));
    } else if (a.input == "file") {
        if (a.input_file.empty()) {
            throw prc::Error(prc::Errc::bad_params, "--input-file required with --input file");
        }
        u = prc::load_series(a.input_file);
    } else {
        throw prc::Error(prc::Errc::bad_params, "--input must be sine|mackey-glass|file");
    }

    if (a.system == "diode" || a.system == "rc-circuit") {
        if (a.windows < 2) {
            throw prc::Error(prc::Errc::bad_params,
                             "--windows must be >= 2 (scan files need two rows)");
        }
        const prc::MultiplexWindows w = prc::make_random_windows(a.windows, a.seed);
        if (a.system == "diode") {
            prc::simulate_diode_dataset(u, w, prc::DiodeCircuitParams{}, a.out_dir);
        } else {
            prc::RcCircuitParams p;
            p.capacitance = a.capacitance;
            p.timestep = a.timestep;
            prc::simulate_rc_circuit_dataset(u, w, p, a.out_dir);
        }
    } else if (a.system == "esn") {
        if (a.nodes < 2) {
            throw prc::Error(prc::Errc::bad_params, "--nodes must be >= 2");
        }
        prc::EsnParams p;
        p.n_nodes = a.nodes;
        p.spectral_radius = a.radius;
        p.leak_rate = a.leak;
        p.input_scale = a.input_scale;
        p.seed = a.seed;
        prc::simulate_esn_dataset(u, p, a.out_dir);
    } else {
        throw prc::Error(prc::Errc::bad_params, "--system must be diode|rc-circuit|esn");
    }
    prc::save_series(a.out_dir / "input_series.txt", u);
    std::cout << "wrote " << u.size() << " scan files to " << a.out_dir.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Physical reservoir computing toolkit: dataset ingestion, readout training, "
                 "reservoir metrics, and bundled physical-system simulators"};
    app.require_subcommand(1);

    std::filesystem::path run_config, run_out = "out";
    auto* run = app.add_subcommand("run", "Execute a full pipeline from a JSON config file");
    run->add_option("config", run_config, "Path to the run config")->required();
    run->add_option("--out", run_out, "Output directory (results.json, train/test/weights csv)");

    TargetCliArgs targets;
    auto* tg = app.add_subcommand("targets", "Generate an input/target series file");
    tg->add_option("kind", targets.kind, "square|sawtooth|sine|mackey-glass")->required();
    tg->add_option("--out", targets.out_file, "Output series file")->required();
    tg->add_option("--length", targets.length, "Series length (optional for sine with --points-per-period)");
    tg->add_option("--periods", targets.periods, "Number of periods (waveforms)");
    tg->add_option("--points-per-period", targets.points_per_period, "Sine sampling density");
    tg->add_flag("--normalize", targets.normalize, "Rescale onto [0,1]");
    tg->add_option("--mg-beta", targets.mg.beta, "Mackey-Glass beta");
    tg->add_option("--mg-gamma", targets.mg.gamma, "Mackey-Glass gamma");
    tg->add_option("--mg-n", targets.mg.n_exp, "Mackey-Glass exponent");
    tg->add_option("--mg-tau", targets.mg.tau_delay, "Mackey-Glass delay");
    tg->add_option("--mg-dt", targets.mg.dt, "Integration step");
    tg->add_option("--mg-subsample", targets.mg.subsample, "Keep every k-th step");
    tg->add_option("--mg-washout", targets.mg.washout, "Discarded leading samples");
    tg->add_option("--mg-x0", targets.mg.x0, "Initial value / pre-history");

    SimulateCliArgs sim;
    auto* sm = app.add_subcommand("simulate", "Generate a synthetic reservoir dataset");
    sm->add_option("--system", sim.system, "diode|rc-circuit|esn")->required();
    sm->add_option("--input", sim.input, "sine|mackey-glass|file (default sine)");
    sm->add_option("--out", sim.out_dir, "Output dataset directory")->required();
    sm->add_option("--input-file", sim.input_file, "Series file when --input file");
    sm->add_option("--windows", sim.windows, "Multiplexing windows (circuit systems)");
    sm->add_option("--seed", sim.seed, "RNG seed for windows / ESN weights");
    sm->add_option("--length", sim.length, "Input length (sine: ignored if ppp given)");
    sm->add_option("--periods", sim.periods, "Sine periods");
    sm->add_option("--points-per-period", sim.points_per_period, "Sine points per period");
    sm->add_option("--nodes", sim.nodes, "ESN reservoir size");
    sm->add_option("--radius", sim.radius, "ESN spectral radius");
    sm->add_option("--leak", sim.leak, "ESN leak rate in (0,1]");
    sm->add_option("--input-scale", sim.input_scale, "ESN input weight scale");
    sm->add_option("--capacitance", sim.capacitance, "RC circuit capacitance (F)");
    sm->add_option("--timestep", sim.timestep, "RC circuit integration step (s)");

    std::filesystem::path metrics_config;
    auto* mt = app.add_subcommand("metrics", "Reservoir metrics report from a config file");
    mt->add_option("config", metrics_config, "Path to the config (data/process/metrics)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);  // 0 for --help, nonzero for usage errors
    }

    try {
        if (run->parsed()) return cmd_run(run_config, run_out);
        if (tg->parsed()) return cmd_targets(targets);
        if (sm->parsed()) return cmd_simulate(sim);
        if (mt->parsed()) return cmd_metrics(metrics_config);
    } catch (const prc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return prc::is_validation_error(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
