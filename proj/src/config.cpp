#include "prc/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include "prc/errors.hpp"

namespace prc {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(Errc::bad_params, path + ": " + what);
}

const json* find(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

void check_keys(const json& obj, const std::string& section, std::set<std::string> allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            fail(section.empty() ? key : section + "." + key, "unknown key");
        }
    }
}

std::string get_string(const json& obj, const std::string& section, const std::string& key) {
    const json* v = find(obj, key);
    if (!v) fail(section + "." + key, "required");
    if (!v->is_string()) fail(section + "." + key, "expected a string");
    return v->get<std::string>();
}

std::string get_string_or(const json& obj, const std::string& section, const std::string& key,
                          const std::string& fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) fail(section + "." + key, "expected a string");
    return v->get<std::string>();
}

bool get_bool_or(const json& obj, const std::string& section, const std::string& key,
                 bool fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(section + "." + key, "expected true/false");
    return v->get<bool>();
}

long get_int_or(const json& obj, const std::string& section, const std::string& key,
                long fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(section + "." + key, "expected an integer");
    return v->get<long>();
}

double get_number_or(const json& obj, const std::string& section, const std::string& key,
                     double fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) fail(section + "." + key, "expected a number");
    return v->get<double>();
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
    return p.is_absolute() ? p : base / p;
}

void parse_process(const json& obj, RunConfig& cfg) {
    check_keys(obj, "process",
               {"Xs", "Readouts", "delimiter", "remove_bg", "bg_fname", "smooth", "smooth_win",
                "smooth_rank", "cut_xs", "x1", "x2", "normalize_local", "normalize_global",
                "sample", "sample_rate", "transpose"});
    cfg.parse.xs_col = get_string(obj, "process", "Xs");
    cfg.parse.readout_col = get_string(obj, "process", "Readouts");
    cfg.parse.delimiter = get_string_or(obj, "process", "delimiter", "\t");
    if (cfg.parse.delimiter.empty()) fail("process.delimiter", "must be non-empty");

    auto& p = cfg.process;
    p.remove_bg = get_bool_or(obj, "process", "remove_bg", false);
    const std::string bg = get_string_or(obj, "process", "bg_fname", "");
    if (!bg.empty()) cfg.parse.bg_fname = bg;
    if (p.remove_bg && bg.empty()) fail("process.bg_fname", "required when remove_bg is true");

    p.smooth = get_bool_or(obj, "process", "smooth", false);
    p.smooth_win = static_cast<int>(get_int_or(obj, "process", "smooth_win", 0));
    p.smooth_rank = static_cast<int>(get_int_or(obj, "process", "smooth_rank", 0));
    p.cut_xs = get_bool_or(obj, "process", "cut_xs", false);
    p.x1 = get_number_or(obj, "process", "x1", 0.0);
    p.x2 = get_number_or(obj, "process", "x2", 0.0);
    p.normalize_local = get_bool_or(obj, "process", "normalize_local", false);
    p.normalize_global = get_bool_or(obj, "process", "normalize_global", false);
    p.sample = get_bool_or(obj, "process", "sample", false);
    p.sample_rate = static_cast<int>(get_int_or(obj, "process", "sample_rate", 1));
    p.transpose = get_bool_or(obj, "process", "transpose", false);

    try {
        validate_process_params(p);
    } catch (const Error& e) {
        fail("process", e.what());
    }
}

void parse_target(const json& obj, const std::filesystem::path& base, RunConfig& cfg) {
    check_keys(obj, "target",
               {"kind", "length", "num_periods", "points_per_period", "normalize", "file",
                "mackey_glass"});
    RunConfig::TargetConfig t;
    t.kind = get_string(obj, "target", "kind");
    const std::set<std::string> kinds{"square", "sawtooth", "sine", "mackey-glass", "file"};
    if (!kinds.count(t.kind)) {
        fail("target.kind", "must be one of square|sawtooth|sine|mackey-glass|file");
    }
    if (const json* v = find(obj, "length")) {
        if (!v->is_number_integer()) fail("target.length", "expected an integer");
        t.length = v->get<int>();
        if (*t.length < 1) fail("target.length", "must be >= 1");
    }
    t.num_periods = static_cast<int>(get_int_or(obj, "target", "num_periods", 10));
    if (const json* v = find(obj, "points_per_period")) {
        if (!v->is_number_integer()) fail("target.points_per_period", "expected an integer");
        t.points_per_period = v->get<int>();
    }
    t.normalize = get_bool_or(obj, "target", "normalize", false);
    if (t.kind == "file") {
        const std::string f = get_string(obj, "target", "file");
        t.file = resolve(base, f);
    }
    if (const json* mg = find(obj, "mackey_glass")) {
        if (!mg->is_object()) fail("target.mackey_glass", "expected an object");
        check_keys(*mg, "target.mackey_glass",
                   {"beta", "gamma", "n_exp", "tau_delay", "dt", "subsample", "washout", "x0"});
        auto& m = t.mackey_glass;
        m.beta = get_number_or(*mg, "target.mackey_glass", "beta", m.beta);
        m.gamma = get_number_or(*mg, "target.mackey_glass", "gamma", m.gamma);
        m.n_exp = get_number_or(*mg, "target.mackey_glass", "n_exp", m.n_exp);
        m.tau_delay = get_number_or(*mg, "target.mackey_glass", "tau_delay", m.tau_delay);
        m.dt = get_number_or(*mg, "target.mackey_glass", "dt", m.dt);
        m.subsample = static_cast<int>(get_int_or(*mg, "target.mackey_glass", "subsample", m.subsample));
        m.washout = static_cast<int>(get_int_or(*mg, "target.mackey_glass", "washout", m.washout));
        m.x0 = get_number_or(*mg, "target.mackey_glass", "x0", m.x0);
    }
    cfg.target = std::move(t);
}

void parse_model(const json& obj, RunConfig& cfg) {
    check_keys(obj, "model", {"kind", "alpha", "fit_intercept", "tol", "max_iter"});
    const std::string kind = get_string_or(obj, "model", "kind", "ridge");
    if (kind == "ridge") {
        cfg.model.kind = ModelKind::ridge;
    } else if (kind == "linear") {
        cfg.model.kind = ModelKind::linear;
    } else if (kind == "logistic") {
        cfg.model.kind = ModelKind::logistic;
    } else {
        fail("model.kind", "must be one of ridge|linear|logistic");
    }
    auto& mp = cfg.model.params;
    mp.alpha = get_number_or(obj, "model", "alpha", 1e-3);
    if (mp.alpha < 0.0) fail("model.alpha", "must be >= 0");
    mp.fit_intercept = get_bool_or(obj, "model", "fit_intercept", true);
    mp.tol = get_number_or(obj, "model", "tol", 1e-4);
    if (mp.tol <= 0.0) fail("model.tol", "must be > 0");
    if (const json* v = find(obj, "max_iter")) {
        if (!v->is_number_integer()) fail("model.max_iter", "expected an integer or null");
        const int mi = v->get<int>();
        if (mi < 1) fail("model.max_iter", "must be >= 1");
        mp.max_iter = mi;
    }
}

void parse_rc(const json& obj, RunConfig& cfg) {
    check_keys(obj, "rc", {"tau", "test_size", "error_type"});
    cfg.rc.tau = static_cast<int>(get_int_or(obj, "rc", "tau", 0));
    if (cfg.rc.tau < 0) fail("rc.tau", "must be >= 0");
    cfg.rc.test_size = get_number_or(obj, "rc", "test_size", 0.3);
    if (!(cfg.rc.test_size > 0.0 && cfg.rc.test_size < 1.0)) {
        fail("rc.test_size", "must lie in (0,1)");
    }
    const std::string err = get_string_or(obj, "rc", "error_type", "MSE");
    if (err == "MSE") {
        cfg.rc.error_type = ErrorKind::mse;
    } else if (err == "MAE") {
        cfg.rc.error_type = ErrorKind::mae;
    } else {
        fail("rc.error_type", "must be MSE or MAE");
    }
}

void parse_metrics(const json& obj, const std::filesystem::path& base, RunConfig& cfg) {
    check_keys(obj, "metrics", {"enabled", "kmax", "remove_auto_correlation", "input_file"});
    auto& m = cfg.metrics;
    m.enabled = get_bool_or(obj, "metrics", "enabled", false);
    m.kmax = static_cast<int>(get_int_or(obj, "metrics", "kmax", 25));
    if (m.kmax < 1) fail("metrics.kmax", "must be >= 1");
    m.remove_auto_correlation = get_bool_or(obj, "metrics", "remove_auto_correlation", false);
    const std::string f = get_string_or(obj, "metrics", "input_file", "");
    if (!f.empty()) m.input_file = resolve(base, f);
    if (m.enabled && !m.input_file) {
        fail("metrics.input_file", "required when metrics.enabled is true");
    }
}

}  // namespace

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw Error(Errc::bad_params, "config root must be a JSON object");
    check_keys(j, "", {"data", "process", "target", "model", "rc", "metrics"});

    RunConfig cfg;
    cfg.raw = j;

    const json* data = find(j, "data");
    if (!data || !data->is_object()) fail("data", "section required");
    check_keys(*data, "data", {"dir", "prefix"});
    cfg.data_dir = resolve(base_dir, get_string(*data, "data", "dir"));
    cfg.prefix = get_string(*data, "data", "prefix");
    if (cfg.prefix.empty()) fail("data.prefix", "must be non-empty");

    const json* process = find(j, "process");
    if (!process || !process->is_object()) fail("process", "section required");
    parse_process(*process, cfg);

    if (const json* target = find(j, "target")) {
        if (!target->is_object()) fail("target", "expected an object");
        parse_target(*target, base_dir, cfg);
    }
    if (const json* model = find(j, "model")) {
        if (!model->is_object()) fail("model", "expected an object");
        parse_model(*model, cfg);
    }
    if (const json* rc = find(j, "rc")) {
        if (!rc->is_object()) fail("rc", "expected an object");
        parse_rc(*rc, cfg);
    }
    if (const json* metrics = find(j, "metrics")) {
        if (!metrics->is_object()) fail("metrics", "expected an object");
        parse_metrics(*metrics, base_dir, cfg);
    }
    cfg.rc.model = cfg.model;
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& config_path) {
    std::ifstream in(config_path);
    if (!in) {
        throw Error(Errc::bad_params, "cannot open config file: " + config_path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(Errc::bad_params, "config parse error: " + std::string(e.what()));
    }
    return parse_run_config(j, config_path.parent_path());
}

SignalSeries make_target(const RunConfig::TargetConfig& t, int df_length) {
    const int length = t.length.value_or(df_length);
    SignalSeries s;
    if (t.kind == "square") {
        s = generate_square_wave(length, t.num_periods);
    } else if (t.kind == "sawtooth") {
        s = generate_sawtooth_wave(length, t.num_periods);
    } else if (t.kind == "sine") {
        s = generate_sine_wave(length, t.num_periods, t.points_per_period);
    } else if (t.kind == "mackey-glass") {
        MackeyGlassParams p = t.mackey_glass;
        p.length = length;
        s = generate_mackey_glass(p);
    } else if (t.kind == "file") {
        s = load_series(*t.file);
    } else {
        throw Error(Errc::bad_params, "target.kind: unknown kind '" + t.kind + "'");
    }
    if (t.normalize) s = normalize_list(s);
    return s;
}

}  // namespace prc
