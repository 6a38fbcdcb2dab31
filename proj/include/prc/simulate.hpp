#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <utility>
#include <vector>

#include "prc/series.hpp"

namespace prc {

/// Shockley-style diode in series with a resistor. Defaults approximate a
/// red LED with its knee near 1.8 V; they are stand-ins, not measurements.
struct DiodeCircuitParams {
    double saturation_current = 1e-12;  // A
    double thermal_voltage = 0.02585;   // V
    double ideality = 1.8;
    double series_resistance = 100.0;   // ohm
};

/// Time-multiplexing windows: N current intervals the input is mapped onto,
/// one readout node per window.
struct MultiplexWindows {
    int n_windows = 0;
    std::vector<std::pair<double, double>> bounds;  // (i_low, i_high) in A
    unsigned seed = 0;
};

/// Draw n window bounds uniformly at random within [i_min, i_max].
MultiplexWindows make_random_windows(int n, unsigned seed, double i_min = 1e-3,
                                     double i_max = 1e-2);

struct RcCircuitParams {
    DiodeCircuitParams diode;
    double capacitance = 1e-4;  // F
    double timestep = 1e-3;     // s; must stay well under R*C
};

struct EsnParams {
    int n_nodes = 50;
    double spectral_radius = 0.9;
    double input_scale = 1.0;
    double leak_rate = 1.0;  // in (0,1]
    unsigned seed = 0;
};

/// V(i) = ideality * thermal_voltage * ln(1 + i/I_sat) + i * R; monotone in i.
double diode_voltage(double i, const DiodeCircuitParams& p);

/// Affine map of the input's range onto each window's current interval;
/// column j, row t = the current applied to window j at time t.
Eigen::MatrixXd map_input_to_currents(const SignalSeries& u, const MultiplexWindows& w);

/// Memoryless reservoir: row t holds the instantaneous diode voltage of each
/// window's current.
Eigen::MatrixXd diode_response(const SignalSeries& u, const MultiplexWindows& w,
                               const DiodeCircuitParams& p);

/// Capacitor + diode reservoir: per window, a capacitor across the diode
/// relaxes toward the junction voltage with time constant R*C (explicit
/// trapezoidal integration, one step per input sample) and the measured
/// voltage adds the series resistor's instantaneous drop, so rows depend on
/// both the current input and the history. For a constant input the readout
/// converges to the static diode voltage.
Eigen::MatrixXd rc_circuit_response(const SignalSeries& u, const MultiplexWindows& w,
                                    const RcCircuitParams& p);

/// Random ESN weights for the given seed: the recurrent matrix (spectral
/// radius rescaled to p.spectral_radius) and the input weight vector.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> esn_weights(const EsnParams& p);

/// Leaky echo state network:
///   x(t) = (1-leak)*x(t-1) + leak*tanh(W_res*x(t-1) + W_in*u(t)).
/// W_res is random with its spectral radius rescaled to the requested value.
Eigen::MatrixXd esn_response(const SignalSeries& u, const EsnParams& p);

/// Dataset writers: one scan file per row in the ingest module's text format
/// (circuits: columns "t"/"Voltage"; ESN: columns "node"/"State").
void simulate_diode_dataset(const SignalSeries& u, const MultiplexWindows& w,
                            const DiodeCircuitParams& p, const std::filesystem::path& out_dir);
void simulate_rc_circuit_dataset(const SignalSeries& u, const MultiplexWindows& w,
                                 const RcCircuitParams& p, const std::filesystem::path& out_dir);
void simulate_esn_dataset(const SignalSeries& u, const EsnParams& p,
                          const std::filesystem::path& out_dir);

}  // namespace prc
