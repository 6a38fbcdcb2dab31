#pragma once

#include <stdexcept>
#include <string>

namespace prc {

/// Failure modes named by the library's operation contracts.
enum class Errc {
    // ingest
    empty_directory,
    ambiguous_index,
    no_index,
    missing_column,
    malformed_row,
    non_monotonic_xs,
    xs_mismatch,
    // preprocess
    missing_background,
    window_too_large,
    rank_too_high,
    empty_slice,
    // targets
    bad_period_count,
    // training
    tau_too_large,
    non_finite_input,
    singular_system,
    non_binary_target,
    // metrics
    length_mismatch,
    too_few_rows,
    // pipeline state machine
    no_target,
    no_input,
    not_run,
    // simulators
    unstable_timestep,
    spectral_radius_failure,
    // parameter validation and I/O
    bad_params,
    io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// True for codes caused by bad parameters/configuration (CLI exit 1),
/// false for codes caused by the data on disk (CLI exit 2).
bool is_validation_error(Errc c);

}  // namespace prc
