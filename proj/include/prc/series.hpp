#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace prc {

/// 1-D real-valued sequence; used both for reservoir inputs u(t) and for
/// training targets y(t).
struct SignalSeries {
    std::vector<double> values;
    std::string name;

    std::size_t size() const { return values.size(); }
};

struct MackeyGlassParams {
    double beta = 0.2;
    double gamma = 0.1;
    double n_exp = 10.0;
    double tau_delay = 17.0;
    double dt = 0.1;
    int subsample = 10;    // keep every subsample-th integration step
    int washout = 1000;    // kept samples discarded before output starts
    double x0 = 1.2;       // constant pre-history
    int length = 1000;
};

/// Square wave in {0,1}, starting high, `num_periods` full periods.
SignalSeries generate_square_wave(int length, int num_periods);

/// Sawtooth in [0,1), rising within each period.
SignalSeries generate_sawtooth_wave(int length, int num_periods);

/// sin(2*pi*i/P). If points_per_period is given, length is recomputed as
/// num_periods * points_per_period and the length argument is ignored.
SignalSeries generate_sine_wave(int length, int num_periods,
                                std::optional<int> points_per_period = std::nullopt);

/// Chaotic delay-differential series integrated with fixed-step RK4; the
/// delayed term is read from a history ring buffer (constant x0 before t=0).
SignalSeries generate_mackey_glass(const MackeyGlassParams& p);

/// Affine map of the series onto [0,1]; a constant series maps to all zeros.
SignalSeries normalize_list(const SignalSeries& s);

/// Newline-separated decimal text, one value per line. Round-trips bit-exactly.
SignalSeries load_series(const std::filesystem::path& path);
void save_series(const std::filesystem::path& path, const SignalSeries& s);

}  // namespace prc
