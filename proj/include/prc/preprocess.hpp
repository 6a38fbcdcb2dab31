#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "prc/ingest.hpp"

namespace prc {

/// Preprocessing menu applied while building the reservoir matrix.
struct ProcessParams {
    bool remove_bg = false;
    bool smooth = false;
    int smooth_win = 0;
    int smooth_rank = 0;
    bool cut_xs = false;
    double x1 = 0.0;
    double x2 = 0.0;
    bool normalize_local = false;
    bool normalize_global = false;
    bool sample = false;
    int sample_rate = 1;
    bool transpose = false;
};

/// Throws BadParams on any invariant violation (per-record conditions such as
/// smooth_win < sample count are checked in assemble, where the data is known).
void validate_process_params(const ProcessParams& p);

/// Dense reservoir matrix: rows = time-indexed inputs (scans), columns =
/// readout nodes, unless transposed. Carries the preprocessing snapshot.
struct ReservoirMatrix {
    Eigen::MatrixXd values;
    std::vector<long> row_labels;            // scan indices, or node indices if transposed
    std::vector<std::string> node_labels;    // "r0".."rN", or scan labels if transposed
    ProcessParams applied;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

/// Subtract the background readouts from every record; xs unchanged.
ScanSet remove_background(const ScanSet& set);

/// Savitzky-Golay smoothing: least-squares fit of a degree-`rank` polynomial
/// over each centered window, evaluated at the center. Boundaries reuse the
/// first/last full window and evaluate the fitted polynomial off-center, so
/// the output length equals the input length.
std::vector<double> savgol_smooth(const std::vector<double>& seq, int win, int rank);

/// Keep samples with x1 <= x <= x2 (inclusive).
ScanRecord cut_xs(const ScanRecord& record, double x1, double x2);

/// Keep indices 0, rate, 2*rate, ...
ScanRecord sample(const ScanRecord& record, int rate);

/// Per-column affine map onto [0,1]; constant columns map to all zeros.
Eigen::MatrixXd normalize_local(const Eigen::MatrixXd& m);

/// Whole-matrix affine map onto [0,1]; a constant matrix maps to all zeros.
Eigen::MatrixXd normalize_global(const Eigen::MatrixXd& m);

/// Full pipeline, in fixed order: remove_bg -> smooth -> cut_xs -> sample ->
/// stack rows -> normalize -> transpose.
ReservoirMatrix assemble(const ScanSet& set, const ProcessParams& p);

}  // namespace prc
