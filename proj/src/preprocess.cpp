#include "prc/preprocess.hpp"

#include <cmath>
#include <string>

#include "prc/errors.hpp"

namespace prc {

void validate_process_params(const ProcessParams& p) {
    if (p.smooth) {
        if (p.smooth_win < 1 || p.smooth_win % 2 == 0) {
            throw Error(Errc::bad_params, "smooth_win must be an odd positive integer, got " +
                                              std::to_string(p.smooth_win));
        }
        if (p.smooth_rank < 0 || p.smooth_rank >= p.smooth_win) {
            throw Error(Errc::bad_params, "smooth_rank must satisfy 0 <= smooth_rank < smooth_win");
        }
    }
    if (p.cut_xs && !(p.x1 < p.x2)) {
        throw Error(Errc::bad_params, "cut_xs requires x1 < x2");
    }
    if (p.normalize_local && p.normalize_global) {
        throw Error(Errc::bad_params, "normalize_local and normalize_global are mutually exclusive");
    }
    if (p.sample && p.sample_rate < 1) {
        throw Error(Errc::bad_params, "sample_rate must be a positive integer");
    }
    if (p.transpose && (p.remove_bg || p.smooth || p.cut_xs || p.sample || p.normalize_local ||
                        p.normalize_global)) {
        throw Error(Errc::bad_params,
                    "transpose cannot be combined with other preprocessing parameters");
    }
}

ScanSet remove_background(const ScanSet& set) {
    if (!set.background) {
        throw Error(Errc::missing_background, "scan set has no background record");
    }
    const auto& bg = set.background->readouts;
    ScanSet out = set;
    for (auto& rec : out.records) {
        if (rec.readouts.size() != bg.size()) {
            throw Error(Errc::xs_mismatch, "background length differs from scan " +
                                               std::to_string(rec.scan_index));
        }
        for (std::size_t i = 0; i < bg.size(); ++i) {
            rec.readouts[i] -= bg[i];
        }
    }
    return out;
}

std::vector<double> savgol_smooth(const std::vector<double>& seq, int win, int rank) {
    const int n = static_cast<int>(seq.size());
    if (win < 1 || win % 2 == 0) {
        throw Error(Errc::bad_params, "window must be an odd positive integer, got " +
                                          std::to_string(win));
    }
    if (win > n) {
        throw Error(Errc::window_too_large, "window " + std::to_string(win) +
                                                " exceeds sequence length " + std::to_string(n));
    }
    if (rank < 0 || rank >= win) {
        throw Error(Errc::rank_too_high,
                    "polynomial order " + std::to_string(rank) + " must be < window " +
                        std::to_string(win));
    }

    const int half = win / 2;

    // Hat matrix H = A (A^T A)^-1 A^T for the Vandermonde A over centered
    // positions -half..half. Row p of H maps a window to the fitted value at
    // position p; row `half` smooths interior points, off-center rows handle
    // the boundaries.
    Eigen::MatrixXd vand(win, rank + 1);
    for (int r = 0; r < win; ++r) {
        const double x = static_cast<double>(r - half);
        double pw = 1.0;
        for (int c = 0; c <= rank; ++c) {
            vand(r, c) = pw;
            pw *= x;
        }
    }
    const Eigen::MatrixXd hat =
        vand * (vand.transpose() * vand).ldlt().solve(vand.transpose());

    const Eigen::Map<const Eigen::VectorXd> y(seq.data(), n);
    std::vector<double> out(seq.size());

    for (int i = 0; i < half && i < n; ++i) {
        out[i] = hat.row(i).dot(y.segment(0, win));
    }
    for (int i = half; i < n - half; ++i) {
        out[i] = hat.row(half).dot(y.segment(i - half, win));
    }
    for (int i = std::max(n - half, half); i < n; ++i) {
        out[i] = hat.row(i - (n - win)).dot(y.segment(n - win, win));
    }
    return out;
}

ScanRecord cut_xs(const ScanRecord& record, double x1, double x2) {
    if (!(x1 < x2)) throw Error(Errc::bad_params, "cut_xs requires x1 < x2");
    ScanRecord out;
    out.scan_index = record.scan_index;
    for (std::size_t i = 0; i < record.xs.size(); ++i) {
        if (record.xs[i] >= x1 && record.xs[i] <= x2) {
            out.xs.push_back(record.xs[i]);
            out.readouts.push_back(record.readouts[i]);
        }
    }
    if (out.xs.size() < 2) {
        throw Error(Errc::empty_slice, "cut [" + std::to_string(x1) + ", " + std::to_string(x2) +
                                           "] leaves " + std::to_string(out.xs.size()) +
                                           " samples");
    }
    return out;
}

ScanRecord sample(const ScanRecord& record, int rate) {
    if (rate < 1) throw Error(Errc::bad_params, "sample rate must be >= 1");
    ScanRecord out;
    out.scan_index = record.scan_index;
    for (std::size_t i = 0; i < record.xs.size(); i += static_cast<std::size_t>(rate)) {
        out.xs.push_back(record.xs[i]);
        out.readouts.push_back(record.readouts[i]);
    }
    return out;
}

Eigen::MatrixXd normalize_local(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double mn = m.col(c).minCoeff();
        const double mx = m.col(c).maxCoeff();
        if (mx == mn) {
            out.col(c).setZero();
        } else {
            out.col(c) = (m.col(c).array() - mn) / (mx - mn);
        }
    }
    return out;
}

Eigen::MatrixXd normalize_global(const Eigen::MatrixXd& m) {
    const double mn = m.minCoeff();
    const double mx = m.maxCoeff();
    if (mx == mn) return Eigen::MatrixXd::Zero(m.rows(), m.cols());
    return (m.array() - mn) / (mx - mn);
}

ReservoirMatrix assemble(const ScanSet& set, const ProcessParams& p) {
    validate_process_params(p);
    if (set.records.empty()) {
        throw Error(Errc::empty_directory, "scan set has no records");
    }

    const ScanSet* source = &set;
    ScanSet owned;
    if (p.remove_bg) {
        owned = remove_background(set);
        source = &owned;
    }

    const std::size_t raw_len = source->records.front().readouts.size();
    if (p.smooth && static_cast<std::size_t>(p.smooth_win) >= raw_len) {
        throw Error(Errc::window_too_large,
                    "smooth_win " + std::to_string(p.smooth_win) +
                        " must be less than the per-record sample count " +
                        std::to_string(raw_len));
    }

    std::vector<ScanRecord> staged;
    staged.reserve(source->records.size());
    for (const auto& rec : source->records) {
        ScanRecord work = rec;
        if (p.smooth) work.readouts = savgol_smooth(work.readouts, p.smooth_win, p.smooth_rank);
        if (p.cut_xs) work = prc::cut_xs(work, p.x1, p.x2);
        if (p.sample) work = prc::sample(work, p.sample_rate);
        staged.push_back(std::move(work));
    }

    const Eigen::Index n_rows = static_cast<Eigen::Index>(staged.size());
    const Eigen::Index n_cols = static_cast<Eigen::Index>(staged.front().readouts.size());
    Eigen::MatrixXd values(n_rows, n_cols);
    for (Eigen::Index r = 0; r < n_rows; ++r) {
        if (static_cast<Eigen::Index>(staged[r].readouts.size()) != n_cols) {
            throw Error(Errc::xs_mismatch, "scan " + std::to_string(staged[r].scan_index) +
                                               " has inconsistent length after preprocessing");
        }
        for (Eigen::Index c = 0; c < n_cols; ++c) {
            values(r, c) = staged[r].readouts[c];
        }
    }

    if (p.normalize_local) values = normalize_local(values);
    if (p.normalize_global) values = normalize_global(values);

    ReservoirMatrix out;
    out.applied = p;
    if (p.transpose) {
        out.values = values.transpose();
        out.row_labels.resize(out.values.rows());
        for (Eigen::Index r = 0; r < out.values.rows(); ++r) out.row_labels[r] = r;
        out.node_labels.reserve(staged.size());
        for (const auto& rec : staged) out.node_labels.push_back("s" + std::to_string(rec.scan_index));
    } else {
        out.values = std::move(values);
        out.row_labels.reserve(staged.size());
        for (const auto& rec : staged) out.row_labels.push_back(rec.scan_index);
        out.node_labels.reserve(n_cols);
        for (Eigen::Index c = 0; c < n_cols; ++c) out.node_labels.push_back("r" + std::to_string(c));
    }

    if (!out.values.allFinite()) {
        throw Error(Errc::non_finite_input, "reservoir matrix contains NaN or Inf");
    }
    return out;
}

}  // namespace prc
