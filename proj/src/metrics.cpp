#include "prc/metrics.hpp"

#include <cmath>
#include <string>

#include "prc/errors.hpp"
#include "prc/training.hpp"

namespace prc {
namespace {

constexpr double kMcRidgeAlpha = 1e-6;  // tames collinear readout channels

Eigen::VectorXd to_vector(const SignalSeries& s) {
    return Eigen::Map<const Eigen::VectorXd>(s.values.data(),
                                             static_cast<Eigen::Index>(s.values.size()));
}

// Constant up to rounding noise: below this relative range, cov/var ratios
// are quotients of cancellation error and carry no information.
bool is_constant(const Eigen::VectorXd& v) {
    const double mn = v.minCoeff();
    const double mx = v.maxCoeff();
    const double scale = std::max(std::abs(mn), std::abs(mx));
    return (mx - mn) <= scale * 1e-13;
}

}  // namespace

double r_squared(const Eigen::VectorXd& a, const Eigen::VectorXd& b, bool& degenerate) {
    if (a.size() != b.size()) {
        throw Error(Errc::length_mismatch, "r_squared: length mismatch");
    }
    if (a.size() < 2) {
        throw Error(Errc::too_few_rows, "r_squared: need at least 2 samples");
    }
    degenerate = false;
    if (is_constant(a) || is_constant(b)) {
        degenerate = true;
        return 0.0;
    }
    const double n = static_cast<double>(a.size());
    const Eigen::ArrayXd da = a.array() - a.mean();
    const Eigen::ArrayXd db = b.array() - b.mean();
    const double cov = (da * db).sum() / n;
    const double var_a = da.square().sum() / n;
    const double var_b = db.square().sum() / n;
    if (var_a <= 0.0 || var_b <= 0.0) {  // full underflow
        degenerate = true;
        return 0.0;
    }
    return cov * cov / (var_a * var_b);
}

double r_squared(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    bool degenerate = false;
    return r_squared(a, b, degenerate);
}

NonlinearityReport nonlinearity(const SignalSeries& input, const Eigen::MatrixXd& readouts) {
    const Eigen::VectorXd u = to_vector(input);
    if (u.size() != readouts.rows()) {
        throw Error(Errc::length_mismatch,
                    "input series length " + std::to_string(u.size()) +
                        " != reservoir rows " + std::to_string(readouts.rows()));
    }
    if (u.size() < 2) throw Error(Errc::too_few_rows, "nonlinearity: need at least 2 rows");

    NonlinearityReport report;
    report.per_channel.reserve(readouts.cols());
    for (Eigen::Index c = 0; c < readouts.cols(); ++c) {
        const Eigen::VectorXd channel = readouts.col(c);
        if (is_constant(channel)) {
            report.per_channel.push_back(0.0);  // trivially linear
            continue;
        }
        const TrainedReadout line = fit_linear(u, channel, /*fit_intercept=*/true);
        const Eigen::VectorXd estimate = predict(line, u);
        report.per_channel.push_back(1.0 - r_squared(estimate, channel));
    }
    double sum = 0.0;
    for (double v : report.per_channel) sum += v;
    report.mean_nl = report.per_channel.empty() ? 0.0 : sum / report.per_channel.size();
    return report;
}

MemoryCapacityReport linear_memory_capacity(const SignalSeries& input,
                                            const Eigen::MatrixXd& readouts, int kmax,
                                            bool remove_auto_correlation) {
    const Eigen::VectorXd u = to_vector(input);
    if (u.size() != readouts.rows()) {
        throw Error(Errc::length_mismatch, "input series length != reservoir rows");
    }
    if (kmax < 1) throw Error(Errc::bad_params, "kmax must be >= 1");
    const Eigen::Index L = readouts.rows();
    if (L <= kmax + 2) {
        throw Error(Errc::too_few_rows, "need more than kmax+2 rows, got " + std::to_string(L));
    }

    RidgeParams estimator;
    estimator.alpha = kMcRidgeAlpha;
    estimator.fit_intercept = true;

    MemoryCapacityReport report;
    report.kmax = kmax;
    report.auto_correlation_removed = remove_auto_correlation;
    report.per_lag.reserve(kmax);
    for (int k = 1; k <= kmax; ++k) {
        // Rows t = k..L-1 reconstruct u(t-k) from the full readout row x(t).
        const Eigen::MatrixXd x_sub = readouts.bottomRows(L - k);
        const Eigen::VectorXd u_delayed = u.head(L - k);
        const TrainedReadout fit = fit_ridge(x_sub, u_delayed, estimator);
        const Eigen::VectorXd estimate = predict(fit, x_sub);
        double score = r_squared(estimate, u_delayed);
        if (remove_auto_correlation) {
            score -= r_squared(u.tail(L - k), u_delayed);
        }
        report.per_lag.push_back(score);
    }
    double total = 0.0;
    for (double v : report.per_lag) total += v;
    report.total = total;
    return report;
}

std::vector<double> remove_auto_correlation_profile(const SignalSeries& u, int kmax) {
    const Eigen::VectorXd v = to_vector(u);
    if (kmax < 1) throw Error(Errc::bad_params, "kmax must be >= 1");
    if (v.size() <= kmax + 1) {
        throw Error(Errc::too_few_rows, "series too short for kmax " + std::to_string(kmax));
    }
    std::vector<double> profile;
    profile.reserve(kmax);
    const Eigen::Index L = v.size();
    for (int k = 1; k <= kmax; ++k) {
        profile.push_back(r_squared(v.tail(L - k), v.head(L - k)));
    }
    return profile;
}

}  // namespace prc
