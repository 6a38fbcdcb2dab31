#include "prc/errors.hpp"

namespace prc {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::empty_directory: return "EmptyDirectory";
        case Errc::ambiguous_index: return "AmbiguousIndex";
        case Errc::no_index: return "NoIndex";
        case Errc::missing_column: return "MissingColumn";
        case Errc::malformed_row: return "MalformedRow";
        case Errc::non_monotonic_xs: return "NonMonotonicXs";
        case Errc::xs_mismatch: return "XsMismatch";
        case Errc::missing_background: return "MissingBackground";
        case Errc::window_too_large: return "WindowTooLarge";
        case Errc::rank_too_high: return "RankTooHigh";
        case Errc::empty_slice: return "EmptySlice";
        case Errc::bad_period_count: return "BadPeriodCount";
        case Errc::tau_too_large: return "TauTooLarge";
        case Errc::non_finite_input: return "NonFiniteInput";
        case Errc::singular_system: return "SingularSystem";
        case Errc::non_binary_target: return "NonBinaryTarget";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::too_few_rows: return "TooFewRows";
        case Errc::no_target: return "NoTarget";
        case Errc::no_input: return "NoInput";
        case Errc::not_run: return "NotRun";
        case Errc::unstable_timestep: return "UnstableTimestep";
        case Errc::spectral_radius_failure: return "SpectralRadiusFailure";
        case Errc::bad_params: return "BadParams";
        case Errc::io_error: return "IoError";
    }
    return "UnknownError";
}

bool is_validation_error(Errc c) {
    switch (c) {
        case Errc::bad_params:
        case Errc::bad_period_count:
        case Errc::tau_too_large:
        case Errc::window_too_large:
        case Errc::rank_too_high:
        case Errc::non_binary_target:
        case Errc::length_mismatch:
        case Errc::too_few_rows:
        case Errc::no_target:
        case Errc::no_input:
        case Errc::not_run:
        case Errc::unstable_timestep:
            return true;
        default:
            return false;
    }
}

}  // namespace prc
