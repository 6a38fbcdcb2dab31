#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>

namespace prc {

enum class ModelKind { ridge, linear, logistic };
enum class ErrorKind { mse, mae };

struct RidgeParams {
    double alpha = 1e-3;
    bool fit_intercept = true;
    double tol = 1e-4;                // logistic convergence threshold
    std::optional<int> max_iter;      // logistic iteration cap (default 100)
};

struct ModelSpec {
    ModelKind kind = ModelKind::ridge;
    RidgeParams params;
};

struct RcParams {
    ModelSpec model;
    int tau = 0;            // steps the target leads the input; 0 for transformation tasks
    double test_size = 0.3;
    ErrorKind error_type = ErrorKind::mse;
};

/// Trained linear readout: y(t) = weights . x_out(t) + intercept.
struct TrainedReadout {
    Eigen::VectorXd weights;
    double intercept = 0.0;
    ModelKind model_kind = ModelKind::ridge;
    bool converged = true;  // false only when logistic IRLS hit its iteration cap
};

struct RcResults {
    Eigen::MatrixXd x_train, x_test;
    Eigen::VectorXd y_train, y_test;
    Eigen::VectorXd train_pred, test_pred;
    double train_error = 0.0;
    double test_error = 0.0;
};

/// Pair row t of X with y(t+tau): X keeps rows 0..L-tau-1, y keeps tau..L-1.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> align_tau(const Eigen::MatrixXd& X,
                                                      const Eigen::VectorXd& y, int tau);

struct SplitBlocks {
    Eigen::MatrixXd x_train, x_test;
    Eigen::VectorXd y_train, y_test;
};

/// Chronological split, no shuffling: first ceil((1-test_size)*L) rows train.
SplitBlocks split_chronological(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                double test_size);

/// Ridge regression by direct solve of the centered normal equations.
/// alpha = 0 falls back to the minimum-norm least-squares solution.
TrainedReadout fit_ridge(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const RidgeParams& p);

/// Ordinary least squares (ridge with alpha = 0).
TrainedReadout fit_linear(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          bool fit_intercept = true);

/// L2-regularized logistic regression fitted by iteratively reweighted least
/// squares; y must be exactly 0/1. The intercept is left unregularized.
TrainedReadout fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            const RidgeParams& p);

/// X*weights + intercept; for logistic readouts this emits probabilities.
Eigen::VectorXd predict(const TrainedReadout& r, const Eigen::MatrixXd& X);

/// Probabilities thresholded at 0.5.
Eigen::VectorXd predict_labels(const TrainedReadout& r, const Eigen::MatrixXd& X);

double error(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth, ErrorKind kind);

}  // namespace prc
