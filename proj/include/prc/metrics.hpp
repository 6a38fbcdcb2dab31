#pragma once

#include <Eigen/Dense>
#include <vector>

#include "prc/series.hpp"

namespace prc {

/// Squared correlation cov^2(a,b) / (var(a) var(b)), population moments.
/// Constant inputs are degenerate: the result is defined as 0 and the flag
/// (when requested) is set instead of raising an error mid-sweep.
double r_squared(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
double r_squared(const Eigen::VectorXd& a, const Eigen::VectorXd& b, bool& degenerate);

struct NonlinearityReport {
    double mean_nl = 0.0;
    std::vector<double> per_channel;
};

/// Per-channel nonlinearity: 1 - R^2 between a readout channel and the best
/// linear estimator fitted from the scalar input u(t). Constant channels
/// score 0 (trivially linear). Scores range from 0 (linear) to 1.
NonlinearityReport nonlinearity(const SignalSeries& input, const Eigen::MatrixXd& readouts);

struct MemoryCapacityReport {
    double total = 0.0;
    std::vector<double> per_lag;  // per_lag[k-1] holds the score for lag k
    int kmax = 0;
    bool auto_correlation_removed = false;
};

/// Linear memory capacity: for each lag 1..kmax, fit a lightly ridge-damped
/// linear estimator from the readout row x(t) to the delayed input u(t-k)
/// and score it with R^2 in-sample; total is the sum over lags. Optionally
/// subtracts the input's own lag-k R^2, which can push scores negative for
/// strongly self-correlated inputs.
MemoryCapacityReport linear_memory_capacity(const SignalSeries& input,
                                            const Eigen::MatrixXd& readouts, int kmax = 25,
                                            bool remove_auto_correlation = false);

/// Entry k-1 holds R^2[u(t), u(t-k)] over the aligned overlap.
std::vector<double> remove_auto_correlation_profile(const SignalSeries& u, int kmax);

}  // namespace prc
