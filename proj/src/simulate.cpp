#include "prc/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "prc/errors.hpp"
#include "prc/ingest.hpp"

namespace prc {
namespace {

// Platform-independent uniform draw in [0,1); distribution classes are
// implementation-defined, the raw engine stream is not.
double uniform01(std::mt19937& rng) {
    const std::uint64_t hi = rng();
    const std::uint64_t lo = rng();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

void write_dataset(const Eigen::MatrixXd& matrix, const std::filesystem::path& out_dir,
                   const std::string& xs_col, const std::string& readout_col) {
    std::filesystem::create_directories(out_dir);
    std::vector<double> xs(static_cast<std::size_t>(matrix.cols()));
    for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = static_cast<double>(j);
    std::vector<double> row(xs.size());
    for (Eigen::Index t = 0; t < matrix.rows(); ++t) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) row[static_cast<std::size_t>(j)] = matrix(t, j);
        write_scan_file(out_dir / ("scan" + std::to_string(t + 1) + ".txt"), xs, row, xs_col,
                        readout_col, "\t");
    }
}

void check_diode(const DiodeCircuitParams& p) {
    if (p.saturation_current <= 0 || p.thermal_voltage <= 0 || p.ideality <= 0 ||
        p.series_resistance <= 0) {
        throw Error(Errc::bad_params, "diode parameters must all be positive");
    }
}

void check_windows(const MultiplexWindows& w) {
    if (w.n_windows < 1 || w.bounds.size() != static_cast<std::size_t>(w.n_windows)) {
        throw Error(Errc::bad_params, "windows: need n_windows >= 1 matching bounds");
    }
    for (const auto& [lo, hi] : w.bounds) {
        if (!(lo < hi) || lo < 0.0) {
            throw Error(Errc::bad_params, "window bounds must satisfy 0 <= i_low < i_high");
        }
    }
}

}  // namespace

MultiplexWindows make_random_windows(int n, unsigned seed, double i_min, double i_max) {
    if (n < 1) throw Error(Errc::bad_params, "need at least one window");
    if (!(i_min < i_max) || i_min < 0.0) {
        throw Error(Errc::bad_params, "need 0 <= i_min < i_max");
    }
    MultiplexWindows w;
    w.n_windows = n;
    w.seed = seed;
    w.bounds.reserve(n);
    std::mt19937 rng(seed);
    for (int j = 0; j < n; ++j) {
        double a = uniform_in(rng, i_min, i_max);
        double b = uniform_in(rng, i_min, i_max);
        while (a == b) b = uniform_in(rng, i_min, i_max);
        w.bounds.emplace_back(std::min(a, b), std::max(a, b));
    }
    return w;
}

double diode_voltage(double i, const DiodeCircuitParams& p) {
    check_diode(p);
    if (i < 0.0) throw Error(Errc::bad_params, "diode current must be >= 0");
    return p.ideality * p.thermal_voltage * std::log1p(i / p.saturation_current) +
           i * p.series_resistance;
}

Eigen::MatrixXd map_input_to_currents(const SignalSeries& u, const MultiplexWindows& w) {
    check_windows(w);
    if (u.values.empty()) throw Error(Errc::bad_params, "input series is empty");
    const auto [mn_it, mx_it] = std::minmax_element(u.values.begin(), u.values.end());
    const double mn = *mn_it, mx = *mx_it;
    const double span = mx - mn;
    const Eigen::Index L = static_cast<Eigen::Index>(u.values.size());
    Eigen::MatrixXd currents(L, w.n_windows);
    for (int j = 0; j < w.n_windows; ++j) {
        const auto [lo, hi] = w.bounds[static_cast<std::size_t>(j)];
        for (Eigen::Index t = 0; t < L; ++t) {
            const double frac = span == 0.0 ? 0.0 : (u.values[static_cast<std::size_t>(t)] - mn) / span;
            currents(t, j) = lo + frac * (hi - lo);
        }
    }
    return currents;
}

Eigen::MatrixXd diode_response(const SignalSeries& u, const MultiplexWindows& w,
                               const DiodeCircuitParams& p) {
    const Eigen::MatrixXd currents = map_input_to_currents(u, w);
    Eigen::MatrixXd v(currents.rows(), currents.cols());
    for (Eigen::Index t = 0; t < currents.rows(); ++t) {
        for (Eigen::Index j = 0; j < currents.cols(); ++j) {
            v(t, j) = diode_voltage(currents(t, j), p);
        }
    }
    return v;
}

Eigen::MatrixXd rc_circuit_response(const SignalSeries& u, const MultiplexWindows& w,
                                    const RcCircuitParams& p) {
    check_diode(p.diode);
    if (p.capacitance <= 0.0 || p.timestep <= 0.0) {
        throw Error(Errc::bad_params, "capacitance and timestep must be positive");
    }
    const double rc = p.diode.series_resistance * p.capacitance;
    if (p.timestep > rc / 5.0) {
        throw Error(Errc::unstable_timestep,
                    "timestep " + std::to_string(p.timestep) + " too large for R*C = " +
                        std::to_string(rc));
    }
    const Eigen::MatrixXd currents = map_input_to_currents(u, w);
    Eigen::MatrixXd v(currents.rows(), currents.cols());
    const double dt = p.timestep;
    for (Eigen::Index j = 0; j < currents.cols(); ++j) {
        double state = 0.0;  // capacitor starts discharged (power-on transient)
        for (Eigen::Index t = 0; t < currents.rows(); ++t) {
            const double i_now = currents(t, j);
            // The capacitor sits across the diode and relaxes toward the
            // junction voltage with time constant R*C; the series resistor's
            // drop adds instantaneously, so the measured node voltage carries
            // both the current input and the circuit's history.
            const double drive = diode_voltage(i_now, p.diode) - i_now * p.diode.series_resistance;
            // Heun step of dV/dt = (drive - V)/(R*C), drive held for the step.
            const double d0 = (drive - state) / rc;
            const double predictor = state + dt * d0;
            const double d1 = (drive - predictor) / rc;
            state += 0.5 * dt * (d0 + d1);
            v(t, j) = i_now * p.diode.series_resistance + state;
        }
    }
    return v;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> esn_weights(const EsnParams& p) {
    if (p.n_nodes < 1) throw Error(Errc::bad_params, "n_nodes must be >= 1");
    if (!(p.leak_rate > 0.0 && p.leak_rate <= 1.0)) {
        throw Error(Errc::bad_params, "leak_rate must lie in (0,1]");
    }
    if (p.spectral_radius < 0.0) {
        throw Error(Errc::bad_params, "spectral_radius must be >= 0");
    }

    const int n = p.n_nodes;
    std::mt19937 rng(p.seed);
    Eigen::MatrixXd w_res(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) w_res(r, c) = uniform_in(rng, -1.0, 1.0);
    }
    Eigen::VectorXd w_in(n);
    for (int r = 0; r < n; ++r) w_in(r) = uniform_in(rng, -p.input_scale, p.input_scale);

    if (p.spectral_radius == 0.0) {
        w_res.setZero();
    } else {
        const Eigen::VectorXcd eigs = Eigen::EigenSolver<Eigen::MatrixXd>(w_res, false).eigenvalues();
        const double rho = eigs.cwiseAbs().maxCoeff();
        if (!(rho > 0.0) || !std::isfinite(rho)) {
            throw Error(Errc::spectral_radius_failure,
                        "sampled recurrent matrix has no usable spectral radius");
        }
        w_res *= p.spectral_radius / rho;
    }
    return {std::move(w_res), std::move(w_in)};
}

Eigen::MatrixXd esn_response(const SignalSeries& u, const EsnParams& p) {
    if (u.values.empty()) throw Error(Errc::bad_params, "input series is empty");
    const auto [w_res, w_in] = esn_weights(p);
    const int n = p.n_nodes;
    const Eigen::Index L = static_cast<Eigen::Index>(u.values.size());
    Eigen::MatrixXd states(L, n);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index t = 0; t < L; ++t) {
        const Eigen::VectorXd pre = w_res * x + w_in * u.values[static_cast<std::size_t>(t)];
        x = (1.0 - p.leak_rate) * x + p.leak_rate * pre.array().tanh().matrix();
        states.row(t) = x.transpose();
    }
    return states;
}

void simulate_diode_dataset(const SignalSeries& u, const MultiplexWindows& w,
                            const DiodeCircuitParams& p, const std::filesystem::path& out_dir) {
    write_dataset(diode_response(u, w, p), out_dir, "t", "Voltage");
}

void simulate_rc_circuit_dataset(const SignalSeries& u, const MultiplexWindows& w,
                                 const RcCircuitParams& p, const std::filesystem::path& out_dir) {
    write_dataset(rc_circuit_response(u, w, p), out_dir, "t", "Voltage");
}

void simulate_esn_dataset(const SignalSeries& u, const EsnParams& p,
                          const std::filesystem::path& out_dir) {
    write_dataset(esn_response(u, p), out_dir, "node", "State");
}

}  // namespace prc
