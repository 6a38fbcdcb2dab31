#include "prc/training.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prc/errors.hpp"

namespace prc {
namespace {

void check_finite(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (!X.allFinite() || !y.allFinite()) {
        throw Error(Errc::non_finite_input, "features or targets contain NaN/Inf");
    }
    if (X.rows() < 1) throw Error(Errc::too_few_rows, "need at least one training row");
    if (X.rows() != y.size()) {
        throw Error(Errc::length_mismatch, "X has " + std::to_string(X.rows()) +
                                               " rows but y has " + std::to_string(y.size()));
    }
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::VectorXd> align_tau(const Eigen::MatrixXd& X,
                                                      const Eigen::VectorXd& y, int tau) {
    const Eigen::Index L = X.rows();
    if (X.rows() != y.size()) {
        throw Error(Errc::length_mismatch, "align_tau: X rows != y length");
    }
    if (tau < 0 || tau >= L) {
        throw Error(Errc::tau_too_large,
                    "tau " + std::to_string(tau) + " outside [0, " + std::to_string(L) + ")");
    }
    return {X.topRows(L - tau), y.tail(L - tau)};
}

SplitBlocks split_chronological(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                double test_size) {
    if (!(test_size > 0.0 && test_size < 1.0)) {
        throw Error(Errc::bad_params, "test_size must lie in (0,1)");
    }
    if (X.rows() != y.size()) {
        throw Error(Errc::length_mismatch, "split: X rows != y length");
    }
    const Eigen::Index L = X.rows();
    // Fractional boundaries round the train block up.
    const auto train_n =
        static_cast<Eigen::Index>(std::ceil((1.0 - test_size) * static_cast<double>(L)));
    SplitBlocks b;
    b.x_train = X.topRows(train_n);
    b.y_train = y.head(train_n);
    b.x_test = X.bottomRows(L - train_n);
    b.y_test = y.tail(L - train_n);
    return b;
}

TrainedReadout fit_ridge(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const RidgeParams& p) {
    check_finite(X, y);
    if (p.alpha < 0.0) throw Error(Errc::bad_params, "alpha must be >= 0");

    const Eigen::Index n_features = X.cols();
    Eigen::RowVectorXd x_mean = Eigen::RowVectorXd::Zero(n_features);
    double y_mean = 0.0;
    if (p.fit_intercept) {
        x_mean = X.colwise().mean();
        y_mean = y.mean();
    }
    const Eigen::MatrixXd Xc = X.rowwise() - x_mean;
    const Eigen::VectorXd yc = y.array() - y_mean;

    TrainedReadout r;
    r.model_kind = p.alpha == 0.0 ? ModelKind::linear : ModelKind::ridge;
    if (p.alpha > 0.0) {
        Eigen::MatrixXd gram = Xc.transpose() * Xc;
        gram.diagonal().array() += p.alpha;
        r.weights = gram.ldlt().solve(Xc.transpose() * yc);
    } else {
        // Minimum-norm least squares; exact for full-rank systems and defined
        // behavior for rank-deficient ones.
        r.weights = Xc.completeOrthogonalDecomposition().solve(yc);
    }
    r.intercept = p.fit_intercept ? y_mean - x_mean.dot(r.weights) : 0.0;
    if (!r.weights.allFinite() || !std::isfinite(r.intercept)) {
        throw Error(Errc::singular_system, "ridge solve produced non-finite weights");
    }
    return r;
}

TrainedReadout fit_linear(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          bool fit_intercept) {
    RidgeParams p;
    p.alpha = 0.0;
    p.fit_intercept = fit_intercept;
    return fit_ridge(X, y, p);
}

TrainedReadout fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            const RidgeParams& p) {
    check_finite(X, y);
    if (p.alpha < 0.0) throw Error(Errc::bad_params, "alpha must be >= 0");
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y(i) != 0.0 && y(i) != 1.0) {
            throw Error(Errc::non_binary_target,
                        "logistic target must be 0/1, got " + std::to_string(y(i)) +
                            " at row " + std::to_string(i));
        }
    }

    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    const int max_iter = p.max_iter.value_or(100);
    constexpr double p_clamp = 1e-12;

    // beta = (intercept, weights); the intercept diagonal stays unregularized.
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(d + 1);
    Eigen::MatrixXd A(n, d + 1);
    A.col(0).setOnes();
    A.rightCols(d) = X;

    TrainedReadout r;
    r.model_kind = ModelKind::logistic;
    r.converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        const Eigen::VectorXd z = A * beta;
        Eigen::VectorXd prob(n);
        Eigen::VectorXd w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            prob(i) = std::clamp(sigmoid(z(i)), p_clamp, 1.0 - p_clamp);
            w(i) = prob(i) * (1.0 - prob(i));
        }
        Eigen::VectorXd grad = A.transpose() * (y - prob);
        grad.tail(d) -= p.alpha * beta.tail(d);
        Eigen::MatrixXd hess = A.transpose() * w.asDiagonal() * A;
        hess.diagonal().tail(d).array() += p.alpha;
        const Eigen::VectorXd delta = hess.ldlt().solve(grad);
        if (!delta.allFinite()) break;
        beta += delta;
        if (delta.cwiseAbs().maxCoeff() < p.tol) {
            r.converged = true;
            break;
        }
    }
    r.intercept = beta(0);
    r.weights = beta.tail(d);
    return r;
}

Eigen::VectorXd predict(const TrainedReadout& r, const Eigen::MatrixXd& X) {
    if (X.cols() != r.weights.size()) {
        throw Error(Errc::length_mismatch, "predict: feature count mismatch");
    }
    Eigen::VectorXd out = (X * r.weights).array() + r.intercept;
    if (r.model_kind == ModelKind::logistic) {
        out = out.unaryExpr([](double z) { return sigmoid(z); });
    }
    return out;
}

Eigen::VectorXd predict_labels(const TrainedReadout& r, const Eigen::MatrixXd& X) {
    Eigen::VectorXd prob = predict(r, X);
    return prob.unaryExpr([](double v) { return v >= 0.5 ? 1.0 : 0.0; });
}

double error(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth, ErrorKind kind) {
    if (pred.size() != truth.size()) {
        throw Error(Errc::length_mismatch, "error: prediction/truth length mismatch");
    }
    if (pred.size() == 0) throw Error(Errc::too_few_rows, "error: empty vectors");
    const Eigen::ArrayXd resid = (pred - truth).array();
    return kind == ErrorKind::mse ? resid.square().mean() : resid.abs().mean();
}

}  // namespace prc
