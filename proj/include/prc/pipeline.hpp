#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prc/ingest.hpp"
#include "prc/metrics.hpp"
#include "prc/preprocess.hpp"
#include "prc/series.hpp"
#include "prc/training.hpp"

namespace prc {

/// File-parsing side of the pipeline constructor: which columns to read and
/// how, plus the optional background file name.
struct ParseParams {
    std::string xs_col;
    std::string readout_col;
    std::string delimiter = "\t";
    std::optional<std::string> bg_fname;
};

/// End-to-end orchestration: construction ingests and assembles eagerly, then
/// targets/inputs are attached, the readout is trained, and results/metrics
/// are read back. State machine: constructed -> target/input defined -> run.
class Pipeline {
public:
    Pipeline(const std::filesystem::path& dir, const std::string& prefix,
             const ParseParams& parse, const ProcessParams& process);

    /// Number of rows of the reservoir matrix.
    int get_df_length() const { return static_cast<int>(matrix_.rows()); }

    void define_target(SignalSeries target);
    void define_input(SignalSeries input);

    /// align tau -> chronological split -> fit -> predict -> errors.
    /// Re-running overwrites the previous results deterministically.
    void run(const RcParams& rc);

    const RcResults& get_rc_results() const;
    const TrainedReadout& get_readout() const;

    /// Mean per-channel nonlinearity of the reservoir for the defined input.
    double get_non_linearity() const;
    /// (total, per-lag) linear memory capacity for the defined input.
    std::pair<double, std::vector<double>> get_linear_memory_capacity(
        int kmax = 25, bool remove_auto_correlation = false) const;

    const ScanSet& scan_set() const { return scan_set_; }
    const ReservoirMatrix& matrix() const { return matrix_; }
    const std::optional<SignalSeries>& target() const { return target_; }
    const std::optional<SignalSeries>& input() const { return input_; }

private:
    const SignalSeries& require_input() const;

    ScanSet scan_set_;
    ReservoirMatrix matrix_;
    std::optional<SignalSeries> target_;
    std::optional<SignalSeries> input_;
    std::optional<RcResults> results_;
    std::optional<TrainedReadout> readout_;
};

}  // namespace prc
