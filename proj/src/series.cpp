#include "prc/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <system_error>

#include "prc/errors.hpp"
#include "prc/text.hpp"

namespace prc {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool parse_double(std::string_view token, double& out) {
    if (token.empty()) return false;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') ++first;  // from_chars rejects a leading '+'
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

namespace {

void check_period_args(int length, int num_periods) {
    if (num_periods < 1 || length < 2 * num_periods) {
        throw Error(Errc::bad_period_count,
                    "need length >= 2*num_periods >= 2, got length=" + std::to_string(length) +
                        ", num_periods=" + std::to_string(num_periods));
    }
}

double frac(double v) { return v - std::floor(v); }

}  // namespace

SignalSeries generate_square_wave(int length, int num_periods) {
    check_period_args(length, num_periods);
    const double period = static_cast<double>(length) / num_periods;
    SignalSeries s;
    s.name = "square";
    s.values.resize(length);
    for (int i = 0; i < length; ++i) {
        s.values[i] = frac(i / period) < 0.5 ? 1.0 : 0.0;
    }
    return s;
}

SignalSeries generate_sawtooth_wave(int length, int num_periods) {
    check_period_args(length, num_periods);
    const double period = static_cast<double>(length) / num_periods;
    SignalSeries s;
    s.name = "sawtooth";
    s.values.resize(length);
    for (int i = 0; i < length; ++i) {
        s.values[i] = frac(i / period);
    }
    return s;
}

SignalSeries generate_sine_wave(int length, int num_periods,
                                std::optional<int> points_per_period) {
    if (points_per_period) {
        if (*points_per_period < 2) {
            throw Error(Errc::bad_period_count, "points_per_period must be >= 2");
        }
        length = num_periods * *points_per_period;
    }
    check_period_args(length, num_periods);
    const double period = static_cast<double>(length) / num_periods;
    SignalSeries s;
    s.name = "sine";
    s.values.resize(length);
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (int i = 0; i < length; ++i) {
        s.values[i] = std::sin(two_pi * i / period);
    }
    return s;
}

SignalSeries generate_mackey_glass(const MackeyGlassParams& p) {
    if (p.dt <= 0.0) throw Error(Errc::bad_params, "mackey_glass: dt must be > 0");
    if (p.length < 1) throw Error(Errc::bad_params, "mackey_glass: length must be >= 1");
    if (p.subsample < 1) throw Error(Errc::bad_params, "mackey_glass: subsample must be >= 1");
    if (p.washout < 0) throw Error(Errc::bad_params, "mackey_glass: washout must be >= 0");
    const double steps_real = p.tau_delay / p.dt;
    const long delay_steps = std::lround(steps_real);
    if (delay_steps < 1 || std::abs(steps_real - static_cast<double>(delay_steps)) > 1e-9) {
        throw Error(Errc::bad_params, "mackey_glass: tau_delay/dt must be a positive integer");
    }

    const auto deriv = [&](double x, double x_delayed) {
        return p.beta * x_delayed / (1.0 + std::pow(x_delayed, p.n_exp)) - p.gamma * x;
    };

    // Ring buffer over the last delay_steps+2 states; slot k % m holds x_k.
    // Pre-filling with x0 covers indices before t=0.
    const long m = delay_steps + 2;
    std::vector<double> ring(static_cast<std::size_t>(m), p.x0);
    const auto slot = [m](long k) { return static_cast<std::size_t>(((k % m) + m) % m); };

    SignalSeries s;
    s.name = "mackey_glass";
    s.values.reserve(p.length);

    double x = p.x0;
    const long total_kept = static_cast<long>(p.washout) + p.length;
    const long total_steps = total_kept * p.subsample;
    long kept = 0;
    for (long k = 0; k < total_steps; ++k) {
        const double xd0 = ring[slot(k - delay_steps)];
        const double xd1 = ring[slot(k - delay_steps + 1)];
        // Midpoint stages need x(t - tau + dt/2); 4-point cubic interpolation
        // keeps the RK4 order, falling back to linear for very short delays.
        double xdm;
        if (delay_steps >= 2) {
            const double xdm1 = ring[slot(k - delay_steps - 1)];
            const double xd2 = ring[slot(k - delay_steps + 2)];
            xdm = (-xdm1 + 9.0 * xd0 + 9.0 * xd1 - xd2) / 16.0;
        } else {
            xdm = 0.5 * (xd0 + xd1);
        }
        const double k1 = deriv(x, xd0);
        const double k2 = deriv(x + 0.5 * p.dt * k1, xdm);
        const double k3 = deriv(x + 0.5 * p.dt * k2, xdm);
        const double k4 = deriv(x + p.dt * k3, xd1);
        x += p.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ring[slot(k + 1)] = x;
        if ((k + 1) % p.subsample == 0) {
            ++kept;
            if (kept > p.washout) s.values.push_back(x);
        }
    }
    return s;
}

SignalSeries normalize_list(const SignalSeries& s) {
    if (s.values.empty()) throw Error(Errc::bad_params, "normalize_list: empty series");
    const auto [mn_it, mx_it] = std::minmax_element(s.values.begin(), s.values.end());
    const double mn = *mn_it, mx = *mx_it;
    SignalSeries out;
    out.name = s.name;
    out.values.resize(s.values.size());
    if (mx == mn) return out;  // constant -> zeros
    const double span = mx - mn;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        out.values[i] = (s.values[i] - mn) / span;
    }
    return out;
}

SignalSeries load_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open series file: " + path.string());
    SignalSeries s;
    s.name = path.stem().string();
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double v;
        if (!parse_double(line, v)) {
            throw Error(Errc::malformed_row,
                        path.string() + ":" + std::to_string(line_no) + ": not a number: '" + line + "'");
        }
        s.values.push_back(v);
    }
    if (s.values.empty()) {
        throw Error(Errc::io_error, "series file contains no values: " + path.string());
    }
    return s;
}

void save_series(const std::filesystem::path& path, const SignalSeries& s) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw Error(Errc::io_error, "cannot write series file: " + path.string());
    for (double v : s.values) {
        out << format_double(v) << '\n';
    }
    if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

}  // namespace prc
