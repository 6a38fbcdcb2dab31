#include "prc/pipeline.hpp"

#include <string>

#include "prc/errors.hpp"

namespace prc {

Pipeline::Pipeline(const std::filesystem::path& dir, const std::string& prefix,
                   const ParseParams& parse, const ProcessParams& process) {
    validate_process_params(process);
    if (process.remove_bg && !parse.bg_fname) {
        throw Error(Errc::bad_params, "remove_bg requires bg_fname");
    }
    scan_set_ = load_scan_set(dir, prefix, parse.xs_col, parse.readout_col, parse.delimiter,
                              parse.bg_fname);
    matrix_ = assemble(scan_set_, process);
}

void Pipeline::define_target(SignalSeries target) {
    if (static_cast<Eigen::Index>(target.size()) != matrix_.rows()) {
        throw Error(Errc::length_mismatch,
                    "target length " + std::to_string(target.size()) +
                        " != reservoir rows " + std::to_string(matrix_.rows()));
    }
    target_ = std::move(target);
}

void Pipeline::define_input(SignalSeries input) {
    if (static_cast<Eigen::Index>(input.size()) != matrix_.rows()) {
        throw Error(Errc::length_mismatch,
                    "input length " + std::to_string(input.size()) +
                        " != reservoir rows " + std::to_string(matrix_.rows()));
    }
    input_ = std::move(input);
}

void Pipeline::run(const RcParams& rc) {
    if (!target_) throw Error(Errc::no_target, "define_target must be called before run");

    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
        target_->values.data(), static_cast<Eigen::Index>(target_->size()));

    auto [x_aligned, y_aligned] = align_tau(matrix_.values, y, rc.tau);
    SplitBlocks blocks = split_chronological(x_aligned, y_aligned, rc.test_size);
    if (blocks.x_train.rows() < 1 || blocks.x_test.rows() < 1) {
        throw Error(Errc::too_few_rows, "split left an empty train or test block");
    }

    TrainedReadout readout;
    switch (rc.model.kind) {
        case ModelKind::ridge:
            readout = fit_ridge(blocks.x_train, blocks.y_train, rc.model.params);
            break;
        case ModelKind::linear:
            readout = fit_linear(blocks.x_train, blocks.y_train, rc.model.params.fit_intercept);
            break;
        case ModelKind::logistic:
            readout = fit_logistic(blocks.x_train, blocks.y_train, rc.model.params);
            break;
    }

    RcResults results;
    results.train_pred = predict(readout, blocks.x_train);
    results.test_pred = predict(readout, blocks.x_test);
    results.train_error = error(results.train_pred, blocks.y_train, rc.error_type);
    results.test_error = error(results.test_pred, blocks.y_test, rc.error_type);
    results.x_train = std::move(blocks.x_train);
    results.x_test = std::move(blocks.x_test);
    results.y_train = std::move(blocks.y_train);
    results.y_test = std::move(blocks.y_test);

    results_ = std::move(results);
    readout_ = std::move(readout);
}

const RcResults& Pipeline::get_rc_results() const {
    if (!results_) throw Error(Errc::not_run, "run must be called before get_rc_results");
    return *results_;
}

const TrainedReadout& Pipeline::get_readout() const {
    if (!readout_) throw Error(Errc::not_run, "run must be called before get_readout");
    return *readout_;
}

const SignalSeries& Pipeline::require_input() const {
    if (!input_) throw Error(Errc::no_input, "define_input must be called before metrics");
    return *input_;
}

double Pipeline::get_non_linearity() const {
    return nonlinearity(require_input(), matrix_.values).mean_nl;
}

std::pair<double, std::vector<double>> Pipeline::get_linear_memory_capacity(
    int kmax, bool remove_auto_correlation) const {
    MemoryCapacityReport report =
        linear_memory_capacity(require_input(), matrix_.values, kmax, remove_auto_correlation);
    return {report.total, std::move(report.per_lag)};
}

}  // namespace prc
